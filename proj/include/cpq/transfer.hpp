#pragma once

#include "cpq/lops.hpp"

namespace cpq {

// rep(t1^alpha) = exp(alpha * t1_log_scale) * diag(q^(alpha * grade_j)).
// alpha = 1 reproduces rep(t1); alpha = 0 the identity (untwisted traces).
CMat twist_insertion(const Rep& rep, double alpha);

// Total spin S_z = sum_i sigma_z^i on V^{(x)M} (diagonal).
CMat sz_total(int M);
int sz_of_index(int index, int M);  // eigenvalue at a product-basis index

// Embeds an operator on aux (x) site into aux (x) site^{(x)M} acting on
// tensor slot `site` (1-based; slot 1 is the rightmost factor applied first).
CMat embed_site(const CMat& op, int dim_aux, int dim_site, int M, int site);

// op^{0M} ... op^{02} op^{01} on aux (x) site^{(x)M}.
CMat monodromy(const CMat& site_op, int dim_aux, int dim_site, int M);

// Tr_aux((twist (x) id) * mono).
CMat traced(const CMat& mono, const CMat& twist, int dim_aux, int dim_site, int M);

// Twisted 6-vertex transfer matrix on V^{(x)M}; z enters as the ratio
// argument of the R-matrix.
CMat t6v(Scalar zratio, int M, double alpha, const RootOfUnity& root);

// Q- and T-operators on V^{(x)M} with auxiliary space W.
CMat q_rho_op(const CurvePoint& r, Scalar w, int M, double alpha, const CouplingConstants& cc,
              const WeylPair& wp);
CMat q_rhobar_op(const CurvePoint& r, Scalar w, int M, double alpha, const CouplingConstants& cc,
                 const WeylPair& wp);
CMat t_omega_op(const CurvePoint& r, const CurvePoint& s, Scalar w, int M, double alpha, Scalar c0,
                const CouplingConstants& cc, const WeylPair& wp);

// T_phi both ways; the closed form is diagonal with entries
// q^{-(sz+M)/2} (q/c)^alpha (1-q^{2 alpha N}) / (1-q^{2 alpha - sz}).
CMat t_phi_trace(Scalar c, double alpha, int M, const WeylPair& wp);
CMat t_phi_closed(Scalar c, double alpha, int M, const WeylPair& wp);
CMat t_phi_closed_inverse(Scalar c, double alpha, int M, const WeylPair& wp);

// Gauge-fixed polynomial Q-operators (untwisted traces).
CMat q_std(Scalar z, Scalar mu, int M, const WeylPair& wp);
CMat q_bar_std(Scalar z, Scalar mu, int M, const WeylPair& wp);

// tau_2 transfer matrix on W^{(x)M} (auxiliary V).
CMat tau2_transfer(const CurvePoint& s, const CurvePoint& sp, Scalar z, int M, double alpha,
                   const CouplingConstants& cc, const WeylPair& wp);

// Q-operator on W^{(x)M} built on the auxiliary cyclic representation.
CMat q_tau2(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
            int M, double alpha, Scalar c0_rrp, const CouplingConstants& cc, const WeylPair& wp);

// Chiral Potts transfer matrix computed both from the R-product definition
// and from the factorized A P B form.
struct CpRoutes {
    CMat via_r;
    CMat via_ab;
};
CpRoutes cp_transfer(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                     const CurvePoint& sp, int M, double alpha, Scalar c0_rrp,
                     const CouplingConstants& cc, const WeylPair& wp);

// The four TQ identities at one parameter draw.
struct TqReport {
    double tqv_rho = 0.0;       // Q_rho(w) T(z_s/w) = C1^M Q_rho_sq + C2^M Q_rho_sq^-1
    double tqv_rhobar = 0.0;
    double t_omega_q = 0.0;     // same relation for T_Omega
    double tq_standard = 0.0;   // polynomial Q, untwisted, shifts (qz, q mu)
    double tq_standard_bar = 0.0;
};
TqReport tq_relation_check(const CurvePoint& r, const CurvePoint& s, Scalar zs, Scalar w, int M,
                           double alpha, Scalar c0, const CouplingConstants& cc,
                           const WeylPair& wp);

// T_Omega(w) = Q_rho(w) Q_rhobar(w) T_phi^{-1}   (with c = c0 throughout).
double t_fact_residual(const CurvePoint& r, const CurvePoint& s, Scalar w, int M, double alpha,
                       Scalar c0, const CouplingConstants& cc, const WeylPair& wp);

// Product form T_Omega(w) T_phi = Q_rho(w) Q_rhobar(w); well-defined at any
// alpha including 0.
double t_fact_product_residual(const CurvePoint& r, const CurvePoint& s, Scalar w, int M,
                               double alpha, Scalar c0, const CouplingConstants& cc,
                               const WeylPair& wp);

// Q T(z_{r'}) = E1^M Q(r'q) + E2^M Q(r'q^{-1}) on the cyclic chain.
double tqw_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                    const CurvePoint& sp, int M, double alpha, Scalar c0_rrp,
                    const CouplingConstants& cc, const WeylPair& wp);

double cp_two_route_residual(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                             const CurvePoint& sp, int M, double alpha, Scalar c0_rrp,
                             const CouplingConstants& cc, const WeylPair& wp);

// Relative commutator of the chiral Potts transfer matrix with the tau_2
// transfer matrix at matched parameters (reported, not asserted).
double cp_tau2_commutator(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s,
                          const CurvePoint& sp, Scalar z, int M, double alpha, Scalar c0_rrp,
                          const CouplingConstants& cc, const WeylPair& wp);

// Q(z_s/w, mu_s) = w^{-M} D^{Sz/2} Q_rho^{untwisted}(w) D^{-Sz/2} with
// D = z_s/(kappa0 x_s); bar variant with D = z_s/(kappa0 y_s).
double q_simp_residual(const CurvePoint& s, Scalar zs, Scalar w, int M,
                       const CouplingConstants& cc, const WeylPair& wp, bool bar);

// Largest matrix element (relative) violating charge conservation mod N:
// on V-chains sectors are spin differences, on W-chains clock-charge sums.
double charge_violation_v(const CMat& op, int M, int N);
double charge_violation_w(const CMat& op, int M, int N);

// Degree-<=deg polynomial fit over the given samples; returns the worst
// relative prediction error at the extra samples (entrywise, matrix-valued).
double poly_fit_residual(const std::vector<Scalar>& zs, const std::vector<CMat>& qs, int deg);

}  // namespace cpq
