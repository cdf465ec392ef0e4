#pragma once

#include "cpq/lops.hpp"
#include "cpq/transfer.hpp"

namespace cpq {

// Residuals of the two-row L-operator relations. All are relative to the
// combined scale of both sides.

// (id (x) T_rs) L_omega_rs(z) = L_omega_sr(z) (T_rs (x) id)
double ll_t_residual(const CurvePoint& r, const CurvePoint& s, Scalar z,
                     const CouplingConstants& cc, const WeylPair& wp);

// (id (x) S_r's) [L_rr' L_ss'] = [L_rs L_r's'] (S_r's (x) id)
double ll_s_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                     const CurvePoint& sp, Scalar z, const CouplingConstants& cc,
                     const WeylPair& wp);

// (id (x) R) [L_rr' L_ss'] = [L_ss' L_rr'] (R (x) id)
double ll_r_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                     const CurvePoint& sp, Scalar z, const CouplingConstants& cc,
                     const WeylPair& wp);

// R(z/w)-exchange of two L-operators sharing the auxiliary space.
enum class RllKind { Rho, RhoBar, Omega };
double rll_residual(RllKind kind, const CurvePoint& r, const CurvePoint& s, Scalar z, Scalar w,
                    const CouplingConstants& cc, const WeylPair& wp);

// (id (x) O(chi)) [L_omega L_phi] = [L_rho L_rhobar] (O(chi) (x) id)
double l_factorization_residual(const CurvePoint& r, const CurvePoint& s, Scalar z,
                                const CouplingConstants& cc, const WeylPair& wp);

// O(chi) {A,B} (x) {id,C} = {A,id} (x) {B,C} O(chi) for arbitrary A, B, C.
double abc_residual(const Mat2& a, const Mat2& b, const Mat2& c, const WeylPair& wp);

// The four bootstrap relations with C1 = b(z_s/w)/q, C2 = q a(z_s/w).
struct LFusionReport {
    double inject_rho = 0.0;
    double project_rho = 0.0;
    double inject_rhobar = 0.0;
    double project_rhobar = 0.0;

    double worst() const;
};
LFusionReport l_fusion_residuals(const CurvePoint& s, Scalar zs, Scalar w,
                                 const CouplingConstants& cc, const WeylPair& wp);

// Same bootstrap pattern on the cyclic auxiliary line: inject/project with
// I_s, T_s and L_omega.
struct OmegaFusionReport {
    double inject = 0.0;
    double project = 0.0;
};
OmegaFusionReport omega_fusion_residuals(const CurvePoint& r, const CurvePoint& s, Scalar zs,
                                         Scalar w, const CouplingConstants& cc,
                                         const WeylPair& wp);

struct VFusionReport {
    double inject = 0.0;
    double project = 0.0;
};
VFusionReport v_fusion_residuals(const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
                                 const CouplingConstants& cc, const WeylPair& wp);

// bold-L * L = q^2 (z^2-z_s^2)(z^2-z_s'^2) mu_s mu_s' id, both orders.
double lbold_normalization_residual(const CurvePoint& s, const CurvePoint& sp, Scalar z,
                                    const CouplingConstants& cc, const WeylPair& wp);

// bold-L intertwines pi_z (x) Omega -> Omega (x) pi_z on all generators.
double lbold_hom_residual(const CurvePoint& s, const CurvePoint& sp, Scalar z, Scalar c0,
                          const CouplingConstants& cc, const WeylPair& wp);

// Generic L-operator homomorphism residual against its auxiliary rep.
double lhom_residual(const LOp& l, const Rep& aux, Scalar z, const std::vector<Gen>& gens);

// R(z/w) intertwines pi_z (x) pi_w -> pi_w (x) pi_z.
double r6v_hom_residual(Scalar z, Scalar w, const RootOfUnity& root);

// U_s(w) = w aleph U(z_s/w, mu_s) aleph^{-1} and the V/beth version.
double gauge_u_residual(const CurvePoint& s, Scalar zs, Scalar w, const CouplingConstants& cc);
double gauge_v_residual(const CurvePoint& s, Scalar zs, Scalar w, const CouplingConstants& cc);

// Smallest singular value of the best candidate intertwiner between two
// representations (0 when an exact intertwiner exists); used for the
// negative statements ("not a restriction", "not a full intertwiner").
double best_intertwiner_gap(const std::vector<const Rep*>& src, const std::vector<const Rep*>& dst,
                            const std::vector<Gen>& gens);

}  // namespace cpq
