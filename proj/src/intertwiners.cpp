#include "cpq/intertwiners.hpp"

#include <cmath>

namespace cpq {

Scalar PolyOp::eval(Scalar u) const {
    Scalar acc{0.0, 0.0};
    Scalar p{1.0, 0.0};
    for (const Scalar& c : coeffs) {
        acc += c * p;
        p *= u;
    }
    return acc;
}

CMat poly_matrix(const PolyOp& p, const CMat& generator, Scalar scale) {
    CMat acc = CMat::identity(generator.rows()) * p.coeffs[0];
    CMat gp = CMat::identity(generator.rows());
    for (int n = 1; n < p.size(); ++n) {
        gp = gp * generator;
        acc = acc + gp * (p.coeffs[static_cast<size_t>(n)] * std::pow(scale, Scalar(n)));
    }
    return acc;
}

PolyOp o_poly(const WeylPair& wp) {
    const int n = wp.root.order;
    PolyOp p;
    p.kind = PolyKind::Chi;
    p.coeffs.resize(static_cast<size_t>(n));
    for (long j = 0; j < n; ++j) p.coeffs[static_cast<size_t>(j)] = wp.root.pow_int(-j * j);
    return p;
}

PolyOp p_poly(const WeylPair& wp) {
    const int n = wp.root.order;
    PolyOp p;
    p.kind = PolyKind::Zsquared;
    p.coeffs.resize(static_cast<size_t>(n));
    for (long j = 0; j < n; ++j) p.coeffs[static_cast<size_t>(j)] = wp.root.pow_int(-j * (j - 1));
    return p;
}

PolyOp poly_inverse(const PolyOp& p, const RootOfUnity& root) {
    const int n = p.size();
    std::vector<Scalar> lambda(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        lambda[static_cast<size_t>(l)] = p.eval(root.pow_int(l));
        if (std::abs(lambda[static_cast<size_t>(l)]) < 1e-10)
            throw Error(ErrorCode::Singular, "polynomial operator has a vanishing eigenvalue",
                        std::abs(lambda[static_cast<size_t>(l)]));
    }
    PolyOp inv;
    inv.kind = p.kind;
    inv.coeffs.assign(static_cast<size_t>(n), Scalar(0.0));
    for (long k = 0; k < n; ++k) {
        Scalar acc{0.0, 0.0};
        for (long l = 0; l < n; ++l) acc += root.pow_int(-l * k) / lambda[static_cast<size_t>(l)];
        inv.coeffs[static_cast<size_t>(k)] = acc / static_cast<double>(n);
    }
    return inv;
}

CMat t_map(const WeightTable& wbar, const WeylPair& wp) {
    const int n = wp.dim();
    CMat t(n, n);
    // sum_m wbar(m) Z^{2m} is diagonal with entries sum_m wbar(m) q^{2mj}.
    for (int j = 0; j < n; ++j) {
        Scalar acc{0.0, 0.0};
        for (int m = 0; m < n; ++m) acc += wbar[m] * wp.root.pow_int(2L * m * j);
        t(j, j) = acc;
    }
    return t;
}

CMat s_map(const WeightTable& what, const WeylPair& wp) {
    const CMat x = chi(wp);
    PolyOp p;
    p.kind = PolyKind::Chi;
    p.coeffs = what.values;
    return poly_matrix(p, x);
}

CMat t_map(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp) {
    return t_map(w_bar(r, s), wp);
}

CMat s_map(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp) {
    return s_map(w_hat(r, s), wp);
}

CMat r_check(const CurvePoint& r, const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
             const WeylPair& wp) {
    const CMat middle = kron(t_map(r, s, wp), t_map(rp, sp, wp));
    return s_map(r, sp, wp) * middle * s_map(rp, s, wp);
}

CMat b_check(const CurvePoint& r_prime, const CurvePoint& s, const CurvePoint& s_prime,
             const WeylPair& wp) {
    const int n = wp.dim();
    return kron(CMat::identity(n), t_map(r_prime, s_prime, wp)) * s_map(r_prime, s, wp);
}

CMat a_check(const CurvePoint& r, const CurvePoint& r_prime, const CurvePoint& s,
             const WeylPair& wp) {
    const int n = wp.dim();
    return s_map(r, s, wp) * kron(t_map(r, r_prime, wp), CMat::identity(n));
}

CMat frak_t(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp) {
    const CMat x = chi(wp);
    const PolyOp o = o_poly(wp);
    const CMat omat = poly_matrix(o, x);
    const CMat oinv = poly_matrix(poly_inverse(o, wp.root), x);
    const int n = wp.dim();
    return omat * kron(t_map(r, s, wp), CMat::identity(n)) * oinv;
}

CMat cal_s(const CurvePoint& r, const CurvePoint& s, const WeylPair& wp) {
    const PolyOp p = p_poly(wp);
    const CMat z2 = wp.z_pow(2);
    const CMat pmat = poly_matrix(p, z2);
    const CMat pinv = poly_matrix(poly_inverse(p, wp.root), z2);
    const int n = wp.dim();
    return kron(pinv, CMat::identity(n)) * s_map(r, s, wp) * kron(pmat, CMat::identity(n));
}

CMat block_col(const CMat& top, const CMat& bottom) {
    CMat e0(2, 1), e1(2, 1);
    e0(0, 0) = 1.0;
    e1(1, 0) = 1.0;
    return kron(top, e0) + kron(bottom, e1);
}

CMat block_row(const CMat& left, const CMat& right) {
    CMat e0(1, 2), e1(1, 2);
    e0(0, 0) = 1.0;
    e1(0, 1) = 1.0;
    return kron(left, e0) + kron(right, e1);
}

SesMaps ses_maps(const CurvePoint& s, const CouplingConstants& cc, Scalar zs, const WeylPair& wp) {
    const SesConstants k = ses_constants(s, cc, zs);
    const Scalar q = wp.root.q;
    const int n = wp.dim();
    const CMat id = CMat::identity(n);
    const CMat xzm1 = wp.X * wp.z_pow(-1);
    const CMat xzm2 = wp.X * wp.z_pow(-2);

    SesMaps m;
    m.iota = block_col(wp.Z * k.c, xzm1);
    m.tau = block_row(xzm1 * (-q / k.c), wp.Z);
    m.iota_bar = block_col(id * k.cbar, xzm2);
    m.tau_bar = block_row(xzm2 * (Scalar(-1.0) / k.cbar), id);
    m.i_cap = block_col(id * k.d, wp.X);
    m.t_cap = block_row(-wp.X, id * k.d);
    return m;
}

}  // namespace cpq
