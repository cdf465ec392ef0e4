#include "cpq/transfer.hpp"

#include <cmath>

namespace cpq {

namespace {

constexpr long kBudget = 2'000'000;

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_budget(long dim) {
    if (dim > kBudget)
        throw Error(ErrorCode::Budget, "chain dimension " + std::to_string(dim) +
                                           " exceeds the configured budget");
}

// Residual of lhs = rhs, read as exactly satisfied when both sides vanish
// relative to the scale of the ingredients (untwisted traces can be
// identically zero on short chains).
double relation_residual(const CMat& lhs, const CMat& rhs, double input_scale) {
    const double denom = std::max(lhs.frobenius(), rhs.frobenius());
    if (denom <= 1e-12 * std::max(input_scale, 1.0)) return 0.0;
    return (lhs - rhs).frobenius() / denom;
}

}  // namespace

CMat twist_insertion(const Rep& rep, double alpha) {
    CMat t(rep.dim, rep.dim);
    const Scalar scale = std::exp(alpha * rep.t1_log_scale);
    for (int j = 0; j < rep.dim; ++j)
        t(j, j) = scale * rep.root.pow_real(alpha * rep.t1_grades[static_cast<size_t>(j)]);
    return t;
}

int sz_of_index(int index, int M) {
    int sz = 0;
    for (int i = 0; i < M; ++i) sz += ((index >> i) & 1) ? -1 : +1;
    return sz;
}

CMat sz_total(int M) {
    const int dim = 1 << M;
    CMat s(dim, dim);
    for (int u = 0; u < dim; ++u) s(u, u) = static_cast<double>(sz_of_index(u, M));
    return s;
}

CMat embed_site(const CMat& op, int dim_aux, int dim_site, int M, int site) {
    if (site < 1 || site > M) throw Error(ErrorCode::InvalidArgument, "site index out of range");
    const long hi_dim = ipow(dim_site, site - 1);
    const long lo_dim = ipow(dim_site, M - site);
    const long total = dim_aux * hi_dim * dim_site * lo_dim;
    check_budget(total);
    CMat out(static_cast<int>(total), static_cast<int>(total));
    for (int a = 0; a < dim_aux; ++a)
        for (int b = 0; b < dim_aux; ++b)
            for (int e = 0; e < dim_site; ++e)
                for (int d = 0; d < dim_site; ++d) {
                    const Scalar v = op(a * dim_site + e, b * dim_site + d);
                    if (v == Scalar(0.0)) continue;
                    for (long hi = 0; hi < hi_dim; ++hi)
                        for (long lo = 0; lo < lo_dim; ++lo) {
                            const long row = ((a * hi_dim + hi) * dim_site + e) * lo_dim + lo;
                            const long col = ((b * hi_dim + hi) * dim_site + d) * lo_dim + lo;
                            out(static_cast<int>(row), static_cast<int>(col)) = v;
                        }
                }
    return out;
}

CMat monodromy(const CMat& site_op, int dim_aux, int dim_site, int M) {
    check_budget(dim_aux * ipow(dim_site, M));
    CMat acc = embed_site(site_op, dim_aux, dim_site, M, M);
    for (int site = M - 1; site >= 1; --site)
        acc = acc * embed_site(site_op, dim_aux, dim_site, M, site);
    return acc;
}

CMat traced(const CMat& mono, const CMat& twist, int dim_aux, int dim_site, int M) {
    const long rest = ipow(dim_site, M);
    const CMat twisted = kron(twist, CMat::identity(static_cast<int>(rest))) * mono;
    return partial_trace_first(twisted, dim_aux, static_cast<int>(rest));
}

CMat t6v(Scalar zratio, int M, double alpha, const RootOfUnity& root) {
    const CMat site = swap_op(2, 2) * r6v(zratio, root);
    const Rep aux = pi_rep(Scalar(1.0, 0.0), root);
    return traced(monodromy(site, 2, 2, M), twist_insertion(aux, alpha), 2, 2, M);
}

CMat q_rho_op(const CurvePoint& r, Scalar w, int M, double alpha, const CouplingConstants& cc,
              const WeylPair& wp) {
    const CMat site = l_rho(r, w, cc, wp).mat;
    const CMat twist = twist_insertion(rho(r, cc, wp), alpha);
    return traced(monodromy(site, wp.dim(), 2, M), twist, wp.dim(), 2, M);
}

CMat q_rhobar_op(const CurvePoint& r, Scalar w, int M, double alpha, const CouplingConstants& cc,
                 const WeylPair& wp) {
    const CMat site = l_rhobar(r, w, cc, wp).mat;
    const CMat twist = twist_insertion(rhobar(r, cc, wp), alpha);
    return traced(monodromy(site, wp.dim(), 2, M), twist, wp.dim(), 2, M);
}

CMat t_omega_op(const CurvePoint& r, const CurvePoint& s, Scalar w, int M, double alpha, Scalar c0,
                const CouplingConstants& cc, const WeylPair& wp) {
    const CMat site = l_omega(r, s, w, cc, wp).mat;
    const CMat twist = twist_insertion(omega(r, s, cc, c0, wp), alpha);
    return traced(monodromy(site, wp.dim(), 2, M), twist, wp.dim(), 2, M);
}

CMat t_phi_trace(Scalar c, double alpha, int M, const WeylPair& wp) {
    const CMat site = l_phi(wp).mat;
    const CMat twist = twist_insertion(phi(c, wp), alpha);
    return traced(monodromy(site, wp.dim(), 2, M), twist, wp.dim(), 2, M);
}

namespace {

Scalar t_phi_entry(Scalar c, double alpha, int M, int sz, const RootOfUnity& root) {
    const int n = root.order;
    const Scalar pref = std::exp(alpha * (root.log_q() - std::log(c)));
    const Scalar den = Scalar(1.0) - root.pow_real(2.0 * alpha - sz);
    Scalar sum;
    if (std::abs(den) < 1e-12) {
        // geometric ratio = 1 (possible only when 2 alpha is an integer)
        sum = Scalar(static_cast<double>(n));
    } else {
        sum = (Scalar(1.0) - root.pow_real(2.0 * alpha * n)) / den;
    }
    return root.pow_real(-(sz + M) / 2.0) * pref * sum;
}

}  // namespace

CMat t_phi_closed(Scalar c, double alpha, int M, const WeylPair& wp) {
    const int dim = 1 << M;
    CMat t(dim, dim);
    for (int u = 0; u < dim; ++u)
        t(u, u) = t_phi_entry(c, alpha, M, sz_of_index(u, M), wp.root);
    return t;
}

CMat t_phi_closed_inverse(Scalar c, double alpha, int M, const WeylPair& wp) {
    const int dim = 1 << M;
    CMat t(dim, dim);
    for (int u = 0; u < dim; ++u)
        t(u, u) = Scalar(1.0) / t_phi_entry(c, alpha, M, sz_of_index(u, M), wp.root);
    return t;
}

CMat q_std(Scalar z, Scalar mu, int M, const WeylPair& wp) {
    const CMat site = l_std(z, mu, wp).mat;
    return traced(monodromy(site, wp.dim(), 2, M), CMat::identity(wp.dim()), wp.dim(), 2, M);
}

CMat q_bar_std(Scalar z, Scalar mu, int M, const WeylPair& wp) {
    const CMat site = l_bar_std(z, mu, wp).mat;
    return traced(monodromy(site, wp.dim(), 2, M), CMat::identity(wp.dim()), wp.dim(), 2, M);
}

CMat tau2_transfer(const CurvePoint& s, const CurvePoint& sp, Scalar z, int M, double alpha,
                   const CouplingConstants& cc, const WeylPair& wp) {
    const CMat site = l_bold(s, sp, z, cc, wp).vw();
    const Rep aux = pi_rep(z, wp.root);
    return traced(monodromy(site, 2, wp.dim(), M), twist_insertion(aux, alpha), 2, wp.dim(), M);
}

CMat q_tau2(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
            int M, double alpha, Scalar c0_rrp, const CouplingConstants& cc, const WeylPair& wp) {
    const int n = wp.dim();
    const CMat site = swap_op(n, n) * b_check(rp, s, sp, wp);
    const CMat twist = twist_insertion(omega(r, rp, cc, c0_rrp, wp), alpha);
    return traced(monodromy(site, n, n, M), twist, n, n, M);
}

CpRoutes cp_transfer(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                     const CurvePoint& sp, int M, double alpha, Scalar c0_rrp,
                     const CouplingConstants& cc, const WeylPair& wp) {
    const int n = wp.dim();
    const CMat twist = twist_insertion(omega(r, rp, cc, c0_rrp, wp), alpha);

    const CMat r_site = swap_op(n, n) * r_check(r, rp, s, sp, wp);
    const CMat a_site = swap_op(n, n) * a_check(r, s, sp, wp);
    const CMat b_site = swap_op(n, n) * b_check(rp, s, sp, wp);

    CpRoutes out;
    out.via_r = traced(monodromy(r_site, n, n, M), twist, n, n, M);
    const CMat composite =
        monodromy(a_site, n, n, M) * cyclic_shift(n, M + 1) * monodromy(b_site, n, n, M);
    out.via_ab = traced(composite, twist, n, n, M);
    return out;
}

TqReport tq_relation_check(const CurvePoint& r, const CurvePoint& s, Scalar zs, Scalar w, int M,
                           double alpha, Scalar c0, const CouplingConstants& cc,
                           const WeylPair& wp) {
    const CurvePoint sq = shift(s, +1);
    const CurvePoint sqi = shift(s, -1);
    const RootOfUnity& root = wp.root;
    const Scalar zr = zs / w;
    const R6V rc = r6v_coeffs(zr, root);
    const Scalar c1 = rc.b / root.q;
    const Scalar c2 = root.q * rc.a;
    const Scalar c1m = std::pow(c1, Scalar(M));
    const Scalar c2m = std::pow(c2, Scalar(M));

    const CMat t = t6v(zr, M, alpha, root);

    TqReport rep;
    {
        const CMat q0 = q_rho_op(s, w, M, alpha, cc, wp);
        const CMat qp = q_rho_op(sq, w, M, alpha, cc, wp);
        const CMat qm = q_rho_op(sqi, w, M, alpha, cc, wp);
        const double scale = q0.frobenius() * t.frobenius() +
                             std::abs(c1m) * qp.frobenius() + std::abs(c2m) * qm.frobenius();
        rep.tqv_rho = relation_residual(q0 * t, qp * c1m + qm * c2m, scale);
    }
    {
        const CMat q0 = q_rhobar_op(s, w, M, alpha, cc, wp);
        const CMat qp = q_rhobar_op(sq, w, M, alpha, cc, wp);
        const CMat qm = q_rhobar_op(sqi, w, M, alpha, cc, wp);
        const double scale = q0.frobenius() * t.frobenius() +
                             std::abs(c1m) * qp.frobenius() + std::abs(c2m) * qm.frobenius();
        rep.tqv_rhobar = relation_residual(q0 * t, qp * c1m + qm * c2m, scale);
    }
    {
        const CMat q0 = t_omega_op(r, s, w, M, alpha, c0, cc, wp);
        const CMat qp = t_omega_op(r, sq, w, M, alpha, c0, cc, wp);
        const CMat qm = t_omega_op(r, sqi, w, M, alpha, c0, cc, wp);
        const double scale = q0.frobenius() * t.frobenius() +
                             std::abs(c1m) * qp.frobenius() + std::abs(c2m) * qm.frobenius();
        rep.t_omega_q = relation_residual(q0 * t, qp * c1m + qm * c2m, scale);
    }
    {
        // Standard polynomial TQ relation: untwisted traces, shifts (qz, q mu).
        const Scalar q = root.q;
        const Scalar z = zr;
        const Scalar mu = s.mu;
        const CMat t0 = t6v(z, M, 0.0, root);
        const R6V k = r6v_coeffs(z, root);
        const Scalar b_coef = std::pow(k.b / q, Scalar(M));
        const Scalar a_coef = std::pow(q * k.a, Scalar(M));
        {
            const CMat q0 = q_std(z, mu, M, wp);
            const CMat qp = q_std(q * z, q * mu, M, wp);
            const CMat qm = q_std(z / q, mu / q, M, wp);
            const double scale = q0.frobenius() * t0.frobenius() +
                                 std::abs(b_coef) * qp.frobenius() +
                                 std::abs(a_coef) * qm.frobenius();
            rep.tq_standard = relation_residual(q0 * t0, qp * b_coef + qm * a_coef, scale);
        }
        {
            const CMat q0 = q_bar_std(z, mu, M, wp);
            const CMat qp = q_bar_std(q * z, q * mu, M, wp);
            const CMat qm = q_bar_std(z / q, mu / q, M, wp);
            const double scale = q0.frobenius() * t0.frobenius() +
                                 std::abs(b_coef) * qp.frobenius() +
                                 std::abs(a_coef) * qm.frobenius();
            rep.tq_standard_bar = relation_residual(q0 * t0, qp * b_coef + qm * a_coef, scale);
        }
    }
    return rep;
}

double t_fact_residual(const CurvePoint& r, const CurvePoint& s, Scalar w, int M, double alpha,
                       Scalar c0, const CouplingConstants& cc, const WeylPair& wp) {
    const CMat lhs = t_omega_op(r, s, w, M, alpha, c0, cc, wp);
    const CMat rhs = q_rho_op(r, w, M, alpha, cc, wp) * q_rhobar_op(s, w, M, alpha, cc, wp) *
                     t_phi_closed_inverse(c0, alpha, M, wp);
    return rel_residual(lhs, rhs);
}

double t_fact_product_residual(const CurvePoint& r, const CurvePoint& s, Scalar w, int M,
                               double alpha, Scalar c0, const CouplingConstants& cc,
                               const WeylPair& wp) {
    const CMat tom = t_omega_op(r, s, w, M, alpha, c0, cc, wp);
    const CMat tphi = t_phi_closed(c0, alpha, M, wp);
    const CMat qr = q_rho_op(r, w, M, alpha, cc, wp);
    const CMat qb = q_rhobar_op(s, w, M, alpha, cc, wp);
    const double scale = tom.frobenius() * tphi.frobenius() + qr.frobenius() * qb.frobenius();
    return relation_residual(tom * tphi, qr * qb, scale);
}

double tqw_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                    const CurvePoint& sp, int M, double alpha, Scalar c0_rrp,
                    const CouplingConstants& cc, const WeylPair& wp) {
    const Scalar zrp = z_point(rp, cc, +1);
    const CMat tau2 = tau2_transfer(s, sp, zrp, M, alpha, cc, wp);
    const CMat q0 = q_tau2(r, rp, s, sp, M, alpha, c0_rrp, cc, wp);
    const CMat qp = q_tau2(r, shift(rp, +1), s, sp, M, alpha, c0_rrp, cc, wp);
    const CMat qm = q_tau2(r, shift(rp, -1), s, sp, M, alpha, c0_rrp, cc, wp);
    const Scalar e1m = std::pow(fusion_e1(rp, s, sp, cc), Scalar(M));
    const Scalar e2m = std::pow(fusion_e2(rp, s, sp, cc), Scalar(M));
    const double scale = q0.frobenius() * tau2.frobenius() + std::abs(e1m) * qp.frobenius() +
                         std::abs(e2m) * qm.frobenius();
    return relation_residual(q0 * tau2, qp * e1m + qm * e2m, scale);
}

double cp_two_route_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                             const CurvePoint& sp, int M, double alpha, Scalar c0_rrp,
                             const CouplingConstants& cc, const WeylPair& wp) {
    const CpRoutes routes = cp_transfer(r, rp, s, sp, M, alpha, c0_rrp, cc, wp);
    return rel_residual(routes.via_r, routes.via_ab);
}

double cp_tau2_commutator(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                          const CurvePoint& sp, Scalar z, int M, double alpha, Scalar c0_rrp,
                          const CouplingConstants& cc, const WeylPair& wp) {
    const CMat cp = cp_transfer(r, rp, s, sp, M, alpha, c0_rrp, cc, wp).via_r;
    const CMat tau2 = tau2_transfer(s, sp, z, M, alpha, cc, wp);
    const double scale = std::max(cp.frobenius() * tau2.frobenius(), 1e-300);
    return commutator_norm(cp, tau2) / scale;
}

double q_simp_residual(const CurvePoint& s, Scalar zs, Scalar w, int M,
                       const CouplingConstants& cc, const WeylPair& wp, bool bar) {
    const int dim = 1 << M;
    const Scalar d = bar ? zs / (cc.kappa0 * s.y) : zs / (cc.kappa0 * s.x);
    CMat conj(dim, dim), conj_inv(dim, dim);
    for (int u = 0; u < dim; ++u) {
        const Scalar p = std::pow(d, Scalar(sz_of_index(u, M) / 2.0));
        conj(u, u) = p;
        conj_inv(u, u) = Scalar(1.0) / p;
    }
    const CMat q_gauge = bar ? q_bar_std(zs / w, s.mu, M, wp) : q_std(zs / w, s.mu, M, wp);
    const CMat q_aux = bar ? q_rhobar_op(s, w, M, 0.0, cc, wp) : q_rho_op(s, w, M, 0.0, cc, wp);
    const CMat rhs = conj * q_aux * conj_inv * std::pow(w, Scalar(-M));
    const double scale = q_gauge.frobenius() + rhs.frobenius() +
                         std::abs(std::pow(w, Scalar(-M))) * q_aux.frobenius();
    const double denom = std::max(q_gauge.frobenius(), rhs.frobenius());
    if (denom <= 1e-12 * std::max(scale, 1.0)) return 0.0;
    return (q_gauge - rhs).frobenius() / denom;
}

double charge_violation_v(const CMat& op, int M, int N) {
    const double scale = std::max(op.frobenius(), 1e-300);
    double worst = 0.0;
    for (int u = 0; u < op.rows(); ++u)
        for (int v = 0; v < op.cols(); ++v) {
            const int diff = (sz_of_index(u, M) - sz_of_index(v, M)) / 2;
            if (((diff % N) + N) % N != 0) worst = std::max(worst, std::abs(op(u, v)) / scale);
        }
    return worst;
}

double charge_violation_w(const CMat& op, int M, int N) {
    const double scale = std::max(op.frobenius(), 1e-300);
    auto charge = [&](int index) {
        int c = 0;
        for (int i = 0; i < M; ++i) {
            c += index % N;
            index /= N;
        }
        return c % N;
    };
    double worst = 0.0;
    for (int u = 0; u < op.rows(); ++u)
        for (int v = 0; v < op.cols(); ++v)
            if ((charge(u) - charge(v)) % N != 0)
                worst = std::max(worst, std::abs(op(u, v)) / scale);
    return worst;
}

double poly_fit_residual(const std::vector<Scalar>& zs, const std::vector<CMat>& qs, int deg) {
    const int nodes = deg + 1;
    if (static_cast<int>(zs.size()) <= nodes)
        throw Error(ErrorCode::InvalidArgument, "poly_fit_residual needs extra sample points");
    const int dim = qs[0].rows();
    CMat vand(nodes, nodes);
    CMat rhs(nodes, dim * dim);
    for (int k = 0; k < nodes; ++k) {
        Scalar p{1.0, 0.0};
        for (int d = 0; d < nodes; ++d) {
            vand(k, d) = p;
            p *= zs[static_cast<size_t>(k)];
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) rhs(k, i * dim + j) = qs[static_cast<size_t>(k)](i, j);
    }
    const CMat coef = solve(vand, rhs);
    double worst = 0.0;
    for (size_t k = static_cast<size_t>(nodes); k < zs.size(); ++k) {
        CMat pred(dim, dim);
        Scalar p{1.0, 0.0};
        for (int d = 0; d < nodes; ++d) {
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) pred(i, j) += coef(d, i * dim + j) * p;
            p *= zs[k];
        }
        worst = std::max(worst, rel_residual(pred, qs[k]));
    }
    return worst;
}

}  // namespace cpq
