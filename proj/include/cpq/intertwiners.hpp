#pragma once

#include "cpq/reps.hpp"
#include "cpq/weights.hpp"

namespace cpq {

enum class PolyKind { Chi, Zsquared };

// Polynomial operator sum_n coeffs[n] G^n in a cyclic generator G (either
// chi = X^{-1} (x) X or Z^2), both of which have all N-th roots of unity in
// their spectrum.
struct PolyOp {
    PolyKind kind = PolyKind::Chi;
    std::vector<Scalar> coeffs;

    int size() const { return static_cast<int>(coeffs.size()); }

    // Scalar value sum_n coeffs[n] u^n.
    Scalar eval(Scalar u) const;
};

// Matrix of the polynomial: sum_n coeffs[n] * scale^n * G^n (scale lets the
// same coefficients evaluate O(q^k chi) style arguments).
CMat poly_matrix(const PolyOp& p, const CMat& generator, Scalar scale = Scalar(1.0, 0.0));

// Coefficients a_n = q^{-n^2}; satisfies O(q chi) = chi O(q^{-1} chi).
PolyOp o_poly(const WeylPair& wp);

// Coefficients p_n = q^{-n(n-1)}; satisfies P(Z) = Z^2 P(q^{-1} Z).
PolyOp p_poly(const WeylPair& wp);

// Reciprocal polynomial on the root-of-unity grid: b_n = (1/N) sum_l
// q^{-ln} / p(q^l). Throws Singular when |p(q^l)| < 1e-10 for some l.
PolyOp poly_inverse(const PolyOp& p, const RootOfUnity& root);
inline PolyOp o_inverse(const PolyOp& o, const RootOfUnity& root) { return poly_inverse(o, root); }

// T_rs = sum_n wbar(n) Z^{2n}  (N x N, diagonal in the clock basis).
CMat t_map(const WeightTable& wbar, const WeylPair& wp);

// S_rs = sum_n what(n) chi^n   (N^2 x N^2).
CMat s_map(const WeightTable& what, const WeylPair& wp);

CMat t_map(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp);
CMat s_map(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp);

// R(rr';ss') = S_{rs'} (T_{rs} (x) T_{r's'}) S_{r's}.
CMat r_check(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
             const WeylPair& wp);

// B_{r';ss'} = (id (x) T_{r's'}) S_{r's}   and   A_{rr';s} = S_{rs} (T_{rr'} (x) id).
CMat b_check(const CurvePoint& r_prime, const CurvePoint& s, const CurvePoint& s_prime,
             const WeylPair& wp);
CMat a_check(const CurvePoint& r, const CurvePoint& r_prime, const CurvePoint& s,
             const WeylPair& wp);

// Alternative intertwiners between Borel representations:
//   frak_t = O(chi) (T_rs (x) id) O^{-1}(chi)     rho_r (x) rhobar_s -> rho_s (x) rhobar_r
//   cal_s  = (P(Z)^{-1} (x) id) S_rs (P(Z) (x) id) rhobar_r (x) rho_s -> rhobar_s (x) rho_r
CMat frak_t(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp);
CMat cal_s(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp);

// The injection/surjection pairs of the three short exact sequences.
// iota-type maps are (2N) x N (W (x) V with V the inner index), tau-type
// are N x (2N).
struct SesMaps {
    CMat iota, tau;          // rho_{sq} -> rho_s (x) pi_{z_s} -> rho_{sq^{-1}}
    CMat iota_bar, tau_bar;  // rhobar version
    CMat i_cap, t_cap;       // Omega_{r,sq} -> Omega_{r,s} (x) pi_{z_s} -> Omega_{r,sq^{-1}}
};

SesMaps ses_maps(const CurvePoint& s, const CouplingConstants& cc, Scalar zs, const WeylPair& wp);

// Block helpers shared with the L-operator layer: a W->W(x)V map from the
// pair (top, bottom) of W-operators, and the transposed W(x)V->W version.
CMat block_col(const CMat& top, const CMat& bottom);
CMat block_row(const CMat& left, const CMat& right);

}  // namespace cpq
