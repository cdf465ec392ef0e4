#include "cpq/checks.hpp"

#include <cmath>

namespace cpq {

namespace {

double rel2(const CMat& lhs, const CMat& rhs) { return rel_residual(lhs, rhs); }

}  // namespace

double ll_t_residual(const CurvePoint& r, const CurvePoint& s, Scalar z,
                     const CouplingConstants& cc, const WeylPair& wp) {
    const CMat t = t_map(r, s, wp);
    const CMat lhs = kron(CMat::identity(2), t) * l_omega(r, s, z, cc, wp).check();
    const CMat rhs = l_omega(s, r, z, cc, wp).check() * kron(t, CMat::identity(2));
    return rel2(lhs, rhs);
}

double ll_s_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                     const CurvePoint& sp, Scalar z, const CouplingConstants& cc,
                     const WeylPair& wp) {
    const int n = wp.dim();
    const CMat smat = s_map(rp, s, wp);
    const CMat lhs = kron(CMat::identity(2), smat) *
                     ll_pair(l_omega(r, rp, z, cc, wp).check(), l_omega(s, sp, z, cc, wp).check(), n);
    const CMat rhs = ll_pair(l_omega(r, s, z, cc, wp).check(), l_omega(rp, sp, z, cc, wp).check(), n) *
                     kron(smat, CMat::identity(2));
    return rel2(lhs, rhs);
}

double ll_r_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                     const CurvePoint& sp, Scalar z, const CouplingConstants& cc,
                     const WeylPair& wp) {
    const int n = wp.dim();
    const CMat rmat = r_check(r, rp, s, sp, wp);
    const CMat lhs = kron(CMat::identity(2), rmat) *
                     ll_pair(l_omega(r, rp, z, cc, wp).check(), l_omega(s, sp, z, cc, wp).check(), n);
    const CMat rhs = ll_pair(l_omega(s, sp, z, cc, wp).check(), l_omega(r, rp, z, cc, wp).check(), n) *
                     kron(rmat, CMat::identity(2));
    return rel2(lhs, rhs);
}

double rll_residual(RllKind kind, const CurvePoint& r, const CurvePoint& s, Scalar z, Scalar w,
                    const CouplingConstants& cc, const WeylPair& wp) {
    const int n = wp.dim();
    const CMat id2 = CMat::identity(2);
    const CMat idn = CMat::identity(n);
    auto make = [&](Scalar arg) {
        switch (kind) {
            case RllKind::Rho: return l_rho(r, arg, cc, wp);
            case RllKind::RhoBar: return l_rhobar(r, arg, cc, wp);
            case RllKind::Omega: return l_omega(r, s, arg, cc, wp);
        }
        throw Error(ErrorCode::Internal, "unknown RLL kind");
    };
    const CMat rz = r6v(z / w, wp.root);
    const CMat lhs = kron(rz, idn) * kron(id2, make(w).check()) * kron(make(z).check(), id2);
    const CMat rhs = kron(id2, make(z).check()) * kron(make(w).check(), id2) * kron(idn, rz);
    return rel2(lhs, rhs);
}

double l_factorization_residual(const CurvePoint& r, const CurvePoint& s, Scalar z,
                                const CouplingConstants& cc, const WeylPair& wp) {
    const int n = wp.dim();
    const CMat omat = poly_matrix(o_poly(wp), chi(wp));
    const CMat lhs = kron(CMat::identity(2), omat) *
                     ll_pair(l_omega(r, s, z, cc, wp).check(), l_phi(wp).check(), n);
    const CMat rhs = ll_pair(l_rho(r, z, cc, wp).check(), l_rhobar(s, z, cc, wp).check(), n) *
                     kron(omat, CMat::identity(2));
    return rel2(lhs, rhs);
}

double abc_residual(const Mat2& a, const Mat2& b, const Mat2& c, const WeylPair& wp) {
    const int n = wp.dim();
    const CMat omat = poly_matrix(o_poly(wp), chi(wp));
    const Mat2 id = mat2_identity();
    const CMat lhs = kron(CMat::identity(2), omat) *
                     ll_pair(bracket(a, b, wp).check(), bracket(id, c, wp).check(), n);
    const CMat rhs = ll_pair(bracket(a, id, wp).check(), bracket(b, c, wp).check(), n) *
                     kron(omat, CMat::identity(2));
    return rel2(lhs, rhs);
}

double LFusionReport::worst() const {
    return std::max(std::max(inject_rho, project_rho), std::max(inject_rhobar, project_rhobar));
}

namespace {

struct FusionPieces {
    CMat inject_lhs, inject_rhs, project_lhs, project_rhs;
};

FusionPieces fusion_pair(const CMat& l_s, const CMat& l_sq, const CMat& l_sqi, const CMat& iota,
                         const CMat& tau, Scalar c1, Scalar c2, Scalar zs_over_w,
                         const WeylPair& wp) {
    const int n = wp.dim();
    const CMat id2 = CMat::identity(2);
    const CMat idn = CMat::identity(n);
    const CMat rz = r6v(zs_over_w, wp.root);
    FusionPieces p;
    p.inject_lhs = kron(l_s, id2) * kron(idn, rz) * kron(iota, id2);
    p.inject_rhs = kron(id2, iota) * l_sq * c1;
    p.project_lhs = kron(id2, tau) * kron(l_s, id2) * kron(idn, rz);
    p.project_rhs = l_sqi * kron(tau, id2) * c2;
    return p;
}

}  // namespace

LFusionReport l_fusion_residuals(const CurvePoint& s, Scalar zs, Scalar w,
                                 const CouplingConstants& cc, const WeylPair& wp) {
    const CurvePoint sq = shift(s, +1);
    const CurvePoint sqi = shift(s, -1);
    const SesMaps ses = ses_maps(s, cc, zs, wp);
    const R6V k = r6v_coeffs(zs / w, wp.root);
    const Scalar c1 = k.b / wp.root.q;
    const Scalar c2 = wp.root.q * k.a;

    LFusionReport rep;
    {
        const FusionPieces p =
            fusion_pair(l_rho(s, w, cc, wp).check(), l_rho(sq, w, cc, wp).check(),
                        l_rho(sqi, w, cc, wp).check(), ses.iota, ses.tau, c1, c2, zs / w, wp);
        rep.inject_rho = rel2(p.inject_lhs, p.inject_rhs);
        rep.project_rho = rel2(p.project_lhs, p.project_rhs);
    }
    {
        const FusionPieces p = fusion_pair(l_rhobar(s, w, cc, wp).check(),
                                           l_rhobar(sq, w, cc, wp).check(),
                                           l_rhobar(sqi, w, cc, wp).check(), ses.iota_bar,
                                           ses.tau_bar, c1, c2, zs / w, wp);
        rep.inject_rhobar = rel2(p.inject_lhs, p.inject_rhs);
        rep.project_rhobar = rel2(p.project_lhs, p.project_rhs);
    }
    return rep;
}

OmegaFusionReport omega_fusion_residuals(const CurvePoint& r, const CurvePoint& s, Scalar zs,
                                         Scalar w, const CouplingConstants& cc,
                                         const WeylPair& wp) {
    const CurvePoint sq = shift(s, +1);
    const CurvePoint sqi = shift(s, -1);
    const SesMaps ses = ses_maps(s, cc, zs, wp);
    const R6V k = r6v_coeffs(zs / w, wp.root);
    const Scalar c1 = k.b / wp.root.q;
    const Scalar c2 = wp.root.q * k.a;
    const FusionPieces p =
        fusion_pair(l_omega(r, s, w, cc, wp).check(), l_omega(r, sq, w, cc, wp).check(),
                    l_omega(r, sqi, w, cc, wp).check(), ses.i_cap, ses.t_cap, c1, c2, zs / w, wp);
    OmegaFusionReport rep;
    rep.inject = rel2(p.inject_lhs, p.inject_rhs);
    rep.project = rel2(p.project_lhs, p.project_rhs);
    return rep;
}

VFusionReport v_fusion_residuals(const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
                                 const CouplingConstants& cc, const WeylPair& wp) {
    const int n = wp.dim();
    const CMat idn = CMat::identity(n);
    const CMat id2 = CMat::identity(2);
    const Scalar zrp = z_point(rp, cc, +1);
    const SesMaps ses = ses_maps(rp, cc, zrp, wp);
    const CMat bold = l_bold(s, sp, zrp, cc, wp).check();
    const CMat b0 = b_check(rp, s, sp, wp);
    const Scalar e1 = fusion_e1(rp, s, sp, cc);
    const Scalar e2 = fusion_e2(rp, s, sp, cc);

    VFusionReport rep;
    {
        const CMat lhs = kron(b0, id2) * kron(idn, bold) * kron(ses.i_cap, idn);
        const CMat rhs = kron(idn, ses.i_cap) * b_check(shift(rp, +1), s, sp, wp) * e1;
        rep.inject = rel2(lhs, rhs);
    }
    {
        const CMat lhs = kron(idn, ses.t_cap) * kron(b0, id2) * kron(idn, bold);
        const CMat rhs = b_check(shift(rp, -1), s, sp, wp) * kron(ses.t_cap, idn) * e2;
        rep.project = rel2(lhs, rhs);
    }
    return rep;
}

double lbold_normalization_residual(const CurvePoint& s, const CurvePoint& sp, Scalar z,
                                    const CouplingConstants& cc, const WeylPair& wp) {
    const BoldL bold = l_bold(s, sp, z, cc, wp);
    const LOp l = l_omega(s, sp, z, cc, wp);
    const Scalar q = wp.root.q;
    const Scalar zs2 = cc.kappa0 * cc.kappa1 * s.x * s.y;
    const Scalar zsp2 = cc.kappa0 * cc.kappa1 * sp.x * sp.y;
    const Scalar scale = q * q * (z * z - zs2) * (z * z - zsp2) * s.mu * sp.mu;
    const CMat want = CMat::identity(2 * wp.dim()) * scale;
    return std::max(rel2(bold.k * l.mat, want), rel2(l.mat * bold.k, want));
}

double lbold_hom_residual(const CurvePoint& s, const CurvePoint& sp, Scalar z, Scalar c0,
                          const CouplingConstants& cc, const WeylPair& wp) {
    const Rep om = omega(s, sp, cc, c0, wp);
    const Rep pz = pi_rep(z, wp.root);
    const CMat bold = l_bold(s, sp, z, cc, wp).check();
    const double scale = std::max(bold.frobenius(), 1e-300);
    double worst = 0.0;
    for (Gen g : all_gens()) {
        const CMat src = coproduct_action({&pz, &om}, g);
        const CMat dst = coproduct_action({&om, &pz}, g);
        worst = std::max(worst, (bold * src - dst * bold).frobenius() / scale);
    }
    return worst;
}

double lhom_residual(const LOp& l, const Rep& aux, Scalar z, const std::vector<Gen>& gens) {
    const Rep pz = pi_rep(z, aux.root);
    return intertwiner_residual(l.check(), {&aux, &pz}, {&pz, &aux}, gens);
}

double r6v_hom_residual(Scalar z, Scalar w, const RootOfUnity& root) {
    const Rep pz = pi_rep(z, root);
    const Rep pw = pi_rep(w, root);
    return intertwiner_residual(r6v(z / w, root), {&pz, &pw}, {&pw, &pz}, all_gens());
}

namespace {

double mat2_rel(const Mat2& a, const Mat2& b) {
    double diff = 0.0, scale = 1e-300;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            diff += std::norm(a[i][j] - b[i][j]);
            scale += std::norm(a[i][j]) + std::norm(b[i][j]);
        }
    return std::sqrt(diff / scale);
}

}  // namespace

double gauge_u_residual(const CurvePoint& s, Scalar zs, Scalar w, const CouplingConstants& cc) {
    const Mat2 al = gauge_aleph(s, cc, zs);
    Mat2 rhs = mul2(mul2(al, u_std(zs / w, s.mu)), inv2(al));
    for (auto& row : rhs)
        for (auto& v : row) v *= w;
    return mat2_rel(u_mat(s, w, cc), rhs);
}

double gauge_v_residual(const CurvePoint& s, Scalar zs, Scalar w, const CouplingConstants& cc) {
    const Mat2 be = gauge_beth(s, cc, zs);
    Mat2 rhs = mul2(mul2(be, v_std(zs / w, s.mu, s.root)), inv2(be));
    for (auto& row : rhs)
        for (auto& v : row) v *= w;
    return mat2_rel(v_mat(s, w, cc), rhs);
}

double best_intertwiner_gap(const std::vector<const Rep*>& src, const std::vector<const Rep*>& dst,
                            const std::vector<Gen>& gens) {
    int dsrc = 1, ddst = 1;
    for (const Rep* r : src) dsrc *= r->dim;
    for (const Rep* r : dst) ddst *= r->dim;
    const int unknowns = dsrc * ddst;
    CMat stack(static_cast<int>(gens.size()) * unknowns, unknowns);
    int row0 = 0;
    for (Gen g : gens) {
        const CMat a = coproduct_action(src, g);  // K a - b K = 0
        const CMat b = coproduct_action(dst, g);
        for (int i = 0; i < ddst; ++i)
            for (int j = 0; j < dsrc; ++j) {
                const int row = row0 + i * dsrc + j;
                for (int k = 0; k < dsrc; ++k) stack(row, i * dsrc + k) += a(k, j);
                for (int k = 0; k < ddst; ++k) stack(row, k * dsrc + j) -= b(i, k);
            }
        row0 += unknowns;
    }
    const std::vector<double> sv = singular_values(stack);
    if (sv.empty() || sv[0] <= 0.0) return 0.0;
    return sv.back() / sv[0];
}

}  // namespace cpq
