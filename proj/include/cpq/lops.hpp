#pragma once

#include "cpq/intertwiners.hpp"

#include <array>

namespace cpq {

// 2x2 matrix of scalars; the V-space shell of every L-operator.
using Mat2 = std::array<std::array<Scalar, 2>, 2>;

Mat2 mat2(Scalar a00, Scalar a01, Scalar a10, Scalar a11);
Mat2 mat2_identity();
Scalar det2(const Mat2& m);
Mat2 mul2(const Mat2& a, const Mat2& b);
Mat2 inv2(const Mat2& m);

// An L-operator on W (x) V (V the inner tensor slot).  mat is the End(W(x)V)
// form used for transfer matrices; check() = swap * mat is the
// W(x)V -> V(x)W form used when stating intertwining relations.
struct LOp {
    CMat mat;
    int wdim = 0;

    CMat check() const { return swap_op(wdim, 2) * mat; }
};

// {A,B} = diag(X^{-1},1) A diag(Z^{-1},Z) B diag(X,1) with A, B scalar 2x2.
LOp bracket(const Mat2& a, const Mat2& b, const WeylPair& wp);

// U_r(z) = [[z, k0 x mu],[k1 y, z mu]],  V_r(z) = [[-q z, k0 y],[q k1 x mu, -z mu]].
Mat2 u_mat(const CurvePoint& r, Scalar z, const CouplingConstants& cc);
Mat2 v_mat(const CurvePoint& r, Scalar z, const CouplingConstants& cc);

LOp l_omega(const CurvePoint& r, const CurvePoint& s, Scalar z, const CouplingConstants& cc,
            const WeylPair& wp);
LOp l_phi(const WeylPair& wp);
LOp l_rho(const CurvePoint& r, Scalar z, const CouplingConstants& cc, const WeylPair& wp);
LOp l_rhobar(const CurvePoint& r, Scalar z, const CouplingConstants& cc, const WeylPair& wp);

// 6-vertex R-matrix entries (1 - q^2 z^2, q(1 - z^2), z(1 - q^2)).
struct R6V {
    Scalar z, a, b, c;
};
R6V r6v_coeffs(Scalar z, const RootOfUnity& root);

// The check-form 4x4 matrix [[a,0,0,0],[0,c,b,0],[0,b,c,0],[0,0,0,a]].
CMat r6v(Scalar z, const RootOfUnity& root);

// Two-sided scaled inverse of l_omega: blocks per the closed form, with
// bold.check() * l_omega.check() = q^2 (z^2-z_s^2)(z^2-z_s'^2) mu_s mu_s' id.
// Stored in the same W(x)V layout as LOp; vw() gives the End(V(x)W) form
// used as the tau_2 transfer-matrix building block.
struct BoldL {
    CMat k;  // End(W (x) V) layout
    int wdim = 0;

    // V (x) W -> W (x) V (the natural source/target reading)
    CMat check() const { return k * swap_op(2, wdim); }
    // End(V (x) W)
    CMat vw() const { return swap_op(wdim, 2) * k * swap_op(2, wdim); }
};

BoldL l_bold(const CurvePoint& s, const CurvePoint& sp, Scalar z, const CouplingConstants& cc,
             const WeylPair& wp);

// Gauge transformation data: U_s(w) = w aleph U(z_s/w, mu_s) aleph^{-1} and
// V_s(w) = w beth V(z_s/w, mu_s) beth^{-1}; the diagonal entries are tied to
// the chosen branch of z_s so the identities hold for either sign.
Mat2 gauge_aleph(const CurvePoint& s, const CouplingConstants& cc, Scalar zs);
Mat2 gauge_beth(const CurvePoint& s, const CouplingConstants& cc, Scalar zs);

// U(z,mu) = [[1,z],[z,1]] diag(1,mu);  V(z,mu) = diag(1,mu) [[-q,z],[q z,-1]].
Mat2 u_std(Scalar z, Scalar mu);
Mat2 v_std(Scalar z, Scalar mu, const RootOfUnity& root);

LOp l_std(Scalar z, Scalar mu, const WeylPair& wp);
LOp l_bar_std(Scalar z, Scalar mu, const WeylPair& wp);

// ---- composition helpers for stating the two-row relations ----

// (L1 (x)shared-V L2): W1 (x) W2 (x) V -> V (x) W1 (x) W2 built from the
// check forms of two L-operators sharing one V line.
CMat ll_pair(const CMat& l1_check, const CMat& l2_check, int wdim);

// Coefficients of the composite-operator fusion relations (and of the TQ
// relation on cyclic chains).
Scalar fusion_e1(const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
                 const CouplingConstants& cc);
Scalar fusion_e2(const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
                 const CouplingConstants& cc);

}  // namespace cpq
