#pragma once

#include "cpq/tensor.hpp"

namespace cpq {

// Primitive N-th root of unity q = exp(2*pi*i*m/N), N odd and >= 3,
// gcd(m, N) = 1.
struct RootOfUnity {
    int order = 0;     // N
    int exponent = 0;  // m
    Scalar q;

    // q^k for integer k (exact wrap-around).
    Scalar pow_int(long k) const;

    // q^x for real x, read as exp(2*pi*i*m*x/N). All fractional powers of q
    // in the library go through this single function so that products of
    // powers compose additively in the exponent; that is what makes the
    // twisted-trace identities exact rather than branch-dependent.
    Scalar pow_real(double x) const;

    // log q on the same branch as pow_real, i.e. i*2*pi*m/N.
    Scalar log_q() const;
};

RootOfUnity make_root(int order, int exponent);

// Shift/clock pair on W = C^N: X e_j = e_{j+1 mod N}, Z e_j = q^j e_j,
// so Z X = q X Z and X^N = Z^N = 1.
struct WeylPair {
    RootOfUnity root;
    CMat X;
    CMat Z;
    CMat Xinv;
    CMat Zinv;

    int dim() const { return root.order; }
    // Z^k for integer k (diagonal, exact).
    CMat z_pow(long k) const;
    CMat x_pow(long k) const;
};

WeylPair make_weyl(const RootOfUnity& root);

// chi = X^{-1} (x) X on W (x) W; satisfies chi^N = 1 and [chi, Z (x) Z] = 0.
CMat chi(const WeylPair& wp);

// Entrywise principal-branch fractional power of a diagonal matrix.
CMat diag_frac_power(const CMat& d, double alpha);

// The twist grade matrix diag_j(q^{g*alpha*j}) for g = +-2: the fractional
// power of Z^{+-2} taken on the clock grading (exponent g*j literal in
// j = 0..N-1) rather than entrywise-principal. Used by every twisted trace.
CMat clock_frac_power(const WeylPair& wp, int grade, double alpha);

}  // namespace cpq
