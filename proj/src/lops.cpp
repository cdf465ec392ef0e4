#include "cpq/lops.hpp"

namespace cpq {

Mat2 mat2(Scalar a00, Scalar a01, Scalar a10, Scalar a11) {
    return {{{a00, a01}, {a10, a11}}};
}

Mat2 mat2_identity() { return mat2(1.0, 0.0, 0.0, 1.0); }

Scalar det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2 mul2(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

Mat2 inv2(const Mat2& m) {
    const Scalar d = det2(m);
    if (std::abs(d) < 1e-300) throw Error(ErrorCode::Singular, "singular 2x2 matrix");
    return mat2(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d);
}

namespace {

using Block2 = std::array<std::array<CMat, 2>, 2>;

Block2 promote(const Mat2& a, int n) {
    Block2 b;
    const CMat id = CMat::identity(n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b[i][j] = id * a[i][j];
    return b;
}

Block2 block_diag(CMat top, CMat bottom) {
    Block2 b;
    const int n = top.rows();
    b[0][0] = std::move(top);
    b[0][1] = CMat(n, n);
    b[1][0] = CMat(n, n);
    b[1][1] = std::move(bottom);
    return b;
}

Block2 block_mul(const Block2& a, const Block2& b) {
    Block2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

// Assemble a V-block matrix into the W (x) V (V inner) layout.
CMat assemble(const Block2& b) {
    const int n = b[0][0].rows();
    CMat out(2 * n, 2 * n);
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) out(i * 2 + a, j * 2 + c) = b[a][c](i, j);
    return out;
}

}  // namespace

LOp bracket(const Mat2& a, const Mat2& b, const WeylPair& wp) {
    const int n = wp.dim();
    const Block2 left = block_diag(wp.Xinv, CMat::identity(n));
    const Block2 mid = block_diag(wp.Zinv, wp.Z);
    const Block2 right = block_diag(wp.X, CMat::identity(n));
    const Block2 prod =
        block_mul(block_mul(block_mul(block_mul(left, promote(a, n)), mid), promote(b, n)), right);
    LOp l;
    l.wdim = n;
    l.mat = assemble(prod);
    return l;
}

Mat2 u_mat(const CurvePoint& r, Scalar z, const CouplingConstants& cc) {
    return mat2(z, cc.kappa0 * r.x * r.mu, cc.kappa1 * r.y, z * r.mu);
}

Mat2 v_mat(const CurvePoint& r, Scalar z, const CouplingConstants& cc) {
    const Scalar q = r.root.q;
    return mat2(-q * z, cc.kappa0 * r.y, q * cc.kappa1 * r.x * r.mu, -z * r.mu);
}

LOp l_omega(const CurvePoint& r, const CurvePoint& s, Scalar z, const CouplingConstants& cc,
            const WeylPair& wp) {
    return bracket(u_mat(r, z, cc), v_mat(s, z, cc), wp);
}

LOp l_phi(const WeylPair& wp) { return bracket(mat2_identity(), mat2_identity(), wp); }

LOp l_rho(const CurvePoint& r, Scalar z, const CouplingConstants& cc, const WeylPair& wp) {
    return bracket(u_mat(r, z, cc), mat2_identity(), wp);
}

LOp l_rhobar(const CurvePoint& r, Scalar z, const CouplingConstants& cc, const WeylPair& wp) {
    return bracket(v_mat(r, z, cc), mat2_identity(), wp);
}

R6V r6v_coeffs(Scalar z, const RootOfUnity& root) {
    const Scalar q = root.q;
    R6V r;
    r.z = z;
    r.a = Scalar(1.0) - q * q * z * z;
    r.b = q * (Scalar(1.0) - z * z);
    r.c = z * (Scalar(1.0) - q * q);
    return r;
}

CMat r6v(Scalar z, const RootOfUnity& root) {
    const R6V k = r6v_coeffs(z, root);
    CMat m(4, 4);
    m(0, 0) = k.a;
    m(1, 1) = k.c;
    m(1, 2) = k.b;
    m(2, 1) = k.b;
    m(2, 2) = k.c;
    m(3, 3) = k.a;
    return m;
}

BoldL l_bold(const CurvePoint& s, const CurvePoint& sp, Scalar z, const CouplingConstants& cc,
             const WeylPair& wp) {
    const Scalar q = wp.root.q;
    const int n = wp.dim();
    const CMat zp = wp.Z;
    const CMat zm = wp.Zinv;
    const Scalar mm = s.mu * sp.mu;
    const Scalar k0 = cc.kappa0;
    const Scalar k1 = cc.kappa1;

    const CMat m00 = zm * (k0 * k1 * s.y * sp.y) - zp * (q * q * z * z * mm);
    const CMat m01 = (zm * (-sp.y) + zp * (s.x * mm)) * (q * z * k0);
    const CMat m10 = (zm * s.y - zp * (q * q * sp.x * mm)) * (q * z * k1);
    const CMat m11 = (zm * (-z * z) + zp * (s.x * sp.x * k0 * k1 * mm)) * (q * q);

    Block2 blocks;
    blocks[0][0] = m00;
    blocks[0][1] = wp.Xinv * m01;
    blocks[1][0] = wp.X * m10;
    blocks[1][1] = m11;

    BoldL b;
    b.wdim = n;
    b.k = assemble(blocks);
    return b;
}

Mat2 gauge_aleph(const CurvePoint& s, const CouplingConstants& cc, Scalar zs) {
    return mat2(1.0, 0.0, 0.0, zs / (cc.kappa0 * s.x));
}

Mat2 gauge_beth(const CurvePoint& s, const CouplingConstants& cc, Scalar zs) {
    return mat2(1.0, 0.0, 0.0, zs / (cc.kappa0 * s.y));
}

Mat2 u_std(Scalar z, Scalar mu) { return mat2(1.0, z * mu, z, mu); }

Mat2 v_std(Scalar z, Scalar mu, const RootOfUnity& root) {
    const Scalar q = root.q;
    return mat2(-q, z, q * z * mu, -mu);
}

LOp l_std(Scalar z, Scalar mu, const WeylPair& wp) {
    return bracket(u_std(z, mu), mat2_identity(), wp);
}

LOp l_bar_std(Scalar z, Scalar mu, const WeylPair& wp) {
    return bracket(v_std(z, mu, wp.root), mat2_identity(), wp);
}

CMat ll_pair(const CMat& l1_check, const CMat& l2_check, int wdim) {
    const CMat id = CMat::identity(wdim);
    return kron(l1_check, id) * kron(id, l2_check);
}

Scalar fusion_e1(const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
                 const CouplingConstants& cc) {
    const Scalar q2 = rp.root.q * rp.root.q;
    const Scalar zrp2 = cc.kappa0 * cc.kappa1 * rp.x * rp.y;
    const Scalar zs2 = cc.kappa0 * cc.kappa1 * s.x * s.y;
    return s.mu * (q2 * zrp2 - zs2) * (q2 * rp.x * rp.mu * sp.mu - sp.y) /
           (s.mu * s.x - rp.mu * rp.x * q2);
}

Scalar fusion_e2(const CurvePoint& rp, const CurvePoint& s, const CurvePoint& sp,
                 const CouplingConstants& cc) {
    const Scalar q2 = rp.root.q * rp.root.q;
    const Scalar zrp2 = cc.kappa0 * cc.kappa1 * rp.x * rp.y;
    const Scalar zsp2 = cc.kappa0 * cc.kappa1 * sp.x * sp.y;
    return sp.mu * q2 * (zrp2 - zsp2) * (rp.x * rp.mu - s.x * s.mu) /
           (sp.y - rp.x * rp.mu * sp.mu);
}

}  // namespace cpq
