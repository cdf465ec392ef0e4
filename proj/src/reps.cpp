#include "cpq/reps.hpp"

#include <cmath>

namespace cpq {

namespace {

int gen_index(Gen g) { return static_cast<int>(g); }

CMat scalar_matrix(int dim, Scalar v) {
    CMat m = CMat::identity(dim);
    return m * v;
}

std::vector<double> clock_grades(int n, int sign) {
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j) g[j] = sign * 2.0 * j;
    return g;
}

}  // namespace

const char* gen_name(Gen g) {
    switch (g) {
        case Gen::E0: return "e0";
        case Gen::E1: return "e1";
        case Gen::F0: return "f0";
        case Gen::F1: return "f1";
        case Gen::T0: return "t0";
        case Gen::T0Inv: return "t0inv";
        case Gen::T1: return "t1";
        case Gen::T1Inv: return "t1inv";
        case Gen::Z0: return "z0";
        case Gen::Z1: return "z1";
    }
    return "?";
}

bool is_borel_gen(Gen g) { return g != Gen::F0 && g != Gen::F1; }

const CMat& Rep::act(Gen g) const {
    if (!defined_[gen_index(g)])
        throw Error(ErrorCode::InvalidArgument,
                    std::string("generator ") + gen_name(g) + " undefined on " + label);
    return images_[gen_index(g)];
}

bool Rep::has(Gen g) const { return defined_[gen_index(g)]; }

void Rep::set(Gen g, CMat m) {
    images_[gen_index(g)] = std::move(m);
    defined_[gen_index(g)] = true;
}

namespace {

CMat diag_reciprocal(const CMat& d) {
    CMat r(d.rows(), d.cols());
    for (int i = 0; i < d.rows(); ++i) r(i, i) = Scalar(1.0) / d(i, i);
    return r;
}

}  // namespace

Rep omega(const CurvePoint& r, const CurvePoint& s, const CouplingConstants& cc, Scalar c0,
          const WeylPair& wp) {
    const Scalar q = wp.root.q;
    const Scalar c0sq_expected = q * q * r.x * s.x / (r.y * s.y);
    if (std::abs(c0 * c0 - c0sq_expected) > 1e-9 * std::abs(c0sq_expected))
        throw Error(ErrorCode::InvalidArgument, "omega: c0^2 != q^2 x_r x_s / (y_r y_s)");

    const int n = wp.dim();
    const Scalar qdiff = q - Scalar(1.0) / q;
    const CMat z2 = wp.z_pow(2);
    const CMat zm2 = wp.z_pow(-2);
    const CMat id = CMat::identity(n);

    // X^{-1} (y_s/(x_r mu_r mu_s) Z^{-2} - 1) and (x_s mu_r mu_s / y_r Z^2 - 1) X
    const CMat neg_block = wp.Xinv * (zm2 * (s.y / (r.x * r.mu * s.mu)) - id);
    const CMat pos_block = (z2 * (s.x * r.mu * s.mu / r.y) - id) * wp.X;

    Rep rep;
    rep.dim = n;
    rep.kind = RepKind::Full;
    rep.root = wp.root;
    rep.label = "omega";
    rep.set(Gen::E0, neg_block * (cc.kappa0 * r.x / qdiff));
    rep.set(Gen::E1, pos_block * (cc.kappa1 * r.y / qdiff));
    rep.set(Gen::F0, pos_block * (c0 * r.y / (q * cc.kappa0 * r.x * s.x * qdiff)));
    rep.set(Gen::F1, neg_block * (c0 / (q * cc.kappa1 * s.x * qdiff)));
    const CMat t0 = zm2 * (c0 * r.y * s.y / (q * q * r.x * s.x * r.mu * s.mu));
    rep.set(Gen::T0, t0);
    rep.set(Gen::T0Inv, diag_reciprocal(t0));
    const CMat t1 = z2 * (c0 * r.mu * s.mu);
    rep.set(Gen::T1, t1);
    rep.set(Gen::T1Inv, diag_reciprocal(t1));
    rep.set(Gen::Z0, scalar_matrix(n, c0));
    rep.set(Gen::Z1, scalar_matrix(n, Scalar(1.0) / c0));

    rep.t1_log_scale = std::log(c0) + r.log_mu + s.log_mu;
    rep.t1_grades = clock_grades(n, +1);
    return rep;
}

Rep rho(const CurvePoint& r, const CouplingConstants& cc, const WeylPair& wp) {
    const Scalar q = wp.root.q;
    const int n = wp.dim();
    const Scalar qdiff = q - Scalar(1.0) / q;

    Rep rep;
    rep.dim = n;
    rep.kind = RepKind::Borel;
    rep.root = wp.root;
    rep.label = "rho";
    rep.set(Gen::E0, wp.Xinv * (-cc.kappa0 * r.x / qdiff));
    rep.set(Gen::E1, wp.X * (-cc.kappa1 * r.y / qdiff));
    const CMat t1 = wp.z_pow(2) * (q * r.mu);
    rep.set(Gen::T1, t1);
    rep.set(Gen::T1Inv, diag_reciprocal(t1));
    rep.set(Gen::T0, diag_reciprocal(t1));
    rep.set(Gen::T0Inv, t1);
    rep.set(Gen::Z0, CMat::identity(n));
    rep.set(Gen::Z1, CMat::identity(n));

    rep.t1_log_scale = wp.root.log_q() + r.log_mu;
    rep.t1_grades = clock_grades(n, +1);
    return rep;
}

Rep rhobar(const CurvePoint& r, const CouplingConstants& cc, const WeylPair& wp) {
    const Scalar q = wp.root.q;
    const int n = wp.dim();
    const Scalar qdiff = q - Scalar(1.0) / q;

    Rep rep;
    rep.dim = n;
    rep.kind = RepKind::Borel;
    rep.root = wp.root;
    rep.label = "rhobar";
    rep.set(Gen::E0, wp.Xinv * (cc.kappa0 * r.y / (r.mu * qdiff)));
    rep.set(Gen::E1, wp.X * (cc.kappa1 * r.x * r.mu / qdiff));
    const CMat t1 = wp.z_pow(2) * r.mu;
    rep.set(Gen::T1, t1);
    rep.set(Gen::T1Inv, diag_reciprocal(t1));
    rep.set(Gen::T0, diag_reciprocal(t1));
    rep.set(Gen::T0Inv, t1);
    rep.set(Gen::Z0, CMat::identity(n));
    rep.set(Gen::Z1, CMat::identity(n));

    rep.t1_log_scale = r.log_mu;
    rep.t1_grades = clock_grades(n, +1);
    return rep;
}

Rep phi(Scalar c, const WeylPair& wp) {
    if (std::abs(c) < 1e-300) throw Error(ErrorCode::InvalidArgument, "phi: c must be nonzero");
    const Scalar q = wp.root.q;
    const int n = wp.dim();

    Rep rep;
    rep.dim = n;
    rep.kind = RepKind::Borel;
    rep.root = wp.root;
    rep.label = "phi";
    rep.set(Gen::E0, CMat(n, n));
    rep.set(Gen::E1, CMat(n, n));
    const CMat t1 = wp.z_pow(2) * (q / c);
    rep.set(Gen::T1, t1);
    rep.set(Gen::T1Inv, diag_reciprocal(t1));
    rep.set(Gen::T0, diag_reciprocal(t1));
    rep.set(Gen::T0Inv, t1);
    rep.set(Gen::Z0, scalar_matrix(n, Scalar(1.0) / c));
    rep.set(Gen::Z1, scalar_matrix(n, c));

    rep.t1_log_scale = wp.root.log_q() - std::log(c);
    rep.t1_grades = clock_grades(n, +1);
    return rep;
}

Rep pi_rep(Scalar z, const RootOfUnity& root) {
    if (std::abs(z) < 1e-300) throw Error(ErrorCode::InvalidArgument, "pi: z must be nonzero");
    const Scalar q = root.q;

    Rep rep;
    rep.dim = 2;
    rep.kind = RepKind::Full;
    rep.root = root;
    rep.label = "pi";

    CMat e1(2, 2), f1(2, 2), e0(2, 2), f0(2, 2);
    e1(0, 1) = z;
    f1(1, 0) = Scalar(1.0) / z;
    e0(1, 0) = z;
    f0(0, 1) = Scalar(1.0) / z;
    rep.set(Gen::E1, e1);
    rep.set(Gen::F1, f1);
    rep.set(Gen::E0, e0);
    rep.set(Gen::F0, f0);
    rep.set(Gen::T1, CMat::diag({q, Scalar(1.0) / q}));
    rep.set(Gen::T1Inv, CMat::diag({Scalar(1.0) / q, q}));
    rep.set(Gen::T0, CMat::diag({Scalar(1.0) / q, q}));
    rep.set(Gen::T0Inv, CMat::diag({q, Scalar(1.0) / q}));
    rep.set(Gen::Z0, CMat::identity(2));
    rep.set(Gen::Z1, CMat::identity(2));

    rep.t1_log_scale = Scalar(0.0, 0.0);
    rep.t1_grades = {1.0, -1.0};
    return rep;
}

namespace {

struct GenPair {
    Gen t, tinv, z, e, f;
};

GenPair family_of(Gen g) {
    switch (g) {
        case Gen::E0:
        case Gen::F0:
        case Gen::T0:
        case Gen::T0Inv:
        case Gen::Z0:
            return {Gen::T0, Gen::T0Inv, Gen::Z0, Gen::E0, Gen::F0};
        default:
            return {Gen::T1, Gen::T1Inv, Gen::Z1, Gen::E1, Gen::F1};
    }
}

bool is_grouplike(Gen g) {
    return g == Gen::T0 || g == Gen::T0Inv || g == Gen::T1 || g == Gen::T1Inv || g == Gen::Z0 ||
           g == Gen::Z1;
}

bool is_e(Gen g) { return g == Gen::E0 || g == Gen::E1; }

}  // namespace

CMat coproduct_action(const std::vector<const Rep*>& reps, Gen g) {
    if (reps.empty()) throw Error(ErrorCode::InvalidArgument, "empty representation list");
    const size_t n = reps.size();
    if (is_grouplike(g)) {
        CMat out = reps[0]->act(g);
        for (size_t i = 1; i < n; ++i) out = kron(out, reps[i]->act(g));
        return out;
    }
    const GenPair fam = family_of(g);
    int total = 1;
    for (const Rep* r : reps) total *= r->dim;
    CMat out(total, total);
    for (size_t p = 0; p < n; ++p) {
        CMat term(1, 1);
        term(0, 0) = 1.0;
        for (size_t j = 0; j < n; ++j) {
            CMat leg;
            if (j < p)
                leg = is_e(g) ? reps[j]->act(fam.z) * reps[j]->act(fam.t)
                              : diag_reciprocal(reps[j]->act(fam.z));
            else if (j == p)
                leg = reps[j]->act(g);
            else
                leg = is_e(g) ? CMat::identity(reps[j]->dim) : reps[j]->act(fam.tinv);
            term = kron(term, leg);
        }
        out = out + term;
    }
    return out;
}

CMat coproduct(const Rep& a, const Rep& b, Gen g) { return coproduct_action({&a, &b}, g); }

CMat coproduct_op(const Rep& a, const Rep& b, Gen g) {
    if (is_grouplike(g)) return kron(a.act(g), b.act(g));
    const GenPair fam = family_of(g);
    if (is_e(g)) {
        // Delta^op(e) = id (x) e + e (x) z t
        return kron(CMat::identity(a.dim), b.act(g)) +
               kron(a.act(g), b.act(fam.z) * b.act(fam.t));
    }
    // Delta^op(f) = t^{-1} (x) f + f (x) z^{-1}
    return kron(a.act(fam.tinv), b.act(g)) +
           kron(a.act(g), diag_reciprocal(b.act(fam.z)));
}

double intertwiner_residual(const CMat& map, const std::vector<const Rep*>& src,
                            const std::vector<const Rep*>& dst, const std::vector<Gen>& gens) {
    const double scale = std::max(map.frobenius(), 1e-300);
    double worst = 0.0;
    for (Gen g : gens) {
        const CMat lhs = map * coproduct_action(src, g);
        const CMat rhs = coproduct_action(dst, g) * map;
        worst = std::max(worst, (lhs - rhs).frobenius() / scale);
    }
    return worst;
}

std::vector<Gen> gens_for(const Rep& a) {
    return a.kind == RepKind::Full ? all_gens() : borel_gens();
}

std::vector<Gen> borel_gens() { return {kBorelGens.begin(), kBorelGens.end()}; }

std::vector<Gen> all_gens() { return {kAllGens.begin(), kAllGens.end()}; }

}  // namespace cpq
