#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpq/checks.hpp"

using namespace cpq;

namespace {

struct Fixture {
    RootOfUnity root;
    WeylPair wp;
    CouplingConstants cc;
    Modulus mod;
    CurvePoint r, rp, s, sp;
    Rng rng;

    explicit Fixture(int n = 3, std::uint64_t seed = 51) : root(make_root(n, 1)), wp(make_weyl(root)), rng(seed) {
        cc.kappa0 = rng.ring(0.5, 1.5);
        cc.kappa1 = rng.ring(0.5, 1.5);
        mod = random_modulus(rng);
        for (;;) {
            r = random_point(rng, mod, root);
            rp = random_point(rng, mod, root);
            s = random_point(rng, mod, root);
            sp = random_point(rng, mod, root);
            try {
                for (const CurvePoint* a : {&r, &rp, &s, &sp})
                    for (const CurvePoint* b : {&r, &rp, &s, &sp})
                        if (a != b) {
                            (void)w_hat(*a, *b);
                            (void)w_bar(*a, *b);
                        }
                break;
            } catch (const Error&) {
                continue;
            }
        }
    }

    Mat2 random2() {
        return mat2(rng.ring(0.5, 1.5), rng.ring(0.5, 1.5), rng.ring(0.5, 1.5),
                    rng.ring(0.5, 1.5));
    }
};

// Direct 5-factor product oracle for the bracket, built from full matrices.
CMat bracket_oracle(const Mat2& a, const Mat2& b, const WeylPair& wp) {
    const int n = wp.dim();
    auto vblock = [&](const CMat& top, const CMat& bottom) {
        CMat e00(2, 2), e11(2, 2);
        e00(0, 0) = 1.0;
        e11(1, 1) = 1.0;
        return kron(top, e00) + kron(bottom, e11);
    };
    auto scalars = [&](const Mat2& m) {
        CMat v(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v(i, j) = m[i][j];
        return kron(CMat::identity(n), v);
    };
    const CMat idn = CMat::identity(n);
    return vblock(wp.Xinv, idn) * scalars(a) * vblock(wp.Zinv, wp.Z) * scalars(b) *
           vblock(wp.X, idn);
}

}  // namespace

TEST_CASE("bracket matches the direct product oracle and is bilinear") {
    Fixture f;
    const Mat2 a = f.random2();
    const Mat2 b = f.random2();
    CHECK(rel_residual(bracket(a, b, f.wp).mat, bracket_oracle(a, b, f.wp)) < 1e-14);

    Mat2 a2 = a;
    for (auto& row : a2)
        for (auto& v : row) v *= Scalar(2.5, -0.5);
    CHECK(rel_residual(bracket(a2, b, f.wp).mat, bracket(a, b, f.wp).mat * Scalar(2.5, -0.5)) <
          1e-14);
}

TEST_CASE("the phi L-operator is diagonal") {
    Fixture f;
    const LOp lphi = l_phi(f.wp);
    CHECK(rel_residual(lphi.mat, bracket(mat2_identity(), mat2_identity(), f.wp).mat) < 1e-15);
    // equals diag(q^-1 Z^-1, Z) in the V-block decomposition
    const int n = f.wp.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(std::abs(lphi.mat(i * 2, j * 2) -
                           f.wp.Zinv(i, j) * (Scalar(1.0) / f.root.q)) < 1e-15);
            CHECK(std::abs(lphi.mat(i * 2 + 1, j * 2 + 1) - f.wp.Z(i, j)) < 1e-15);
            CHECK(std::abs(lphi.mat(i * 2, j * 2 + 1)) == doctest::Approx(0.0));
        }
}

TEST_CASE("U and V matrices") {
    Fixture f;
    const Scalar z = f.rng.ring(0.5, 1.5);
    const Mat2 u = u_mat(f.r, z, f.cc);
    const Mat2 v = v_mat(f.r, z, f.cc);
    const Scalar zr2 = f.cc.kappa0 * f.cc.kappa1 * f.r.x * f.r.y;
    CHECK(std::abs(det2(u) - f.r.mu * (z * z - zr2)) < 1e-13);
    CHECK(std::abs(det2(v) - f.root.q * f.r.mu * (z * z - zr2)) < 1e-13);
    CHECK(std::abs(u[0][0] - z) < 1e-15);
    CHECK(std::abs(u[0][1] - f.cc.kappa0 * f.r.x * f.r.mu) < 1e-15);
    CHECK(std::abs(v[1][0] - f.root.q * f.cc.kappa1 * f.r.x * f.r.mu) < 1e-15);
    const Mat2 u0 = u_mat(f.r, Scalar(0.0), f.cc);
    CHECK(std::abs(u0[0][0]) == doctest::Approx(0.0));
    CHECK(std::abs(u0[1][1]) == doctest::Approx(0.0));
}

TEST_CASE("L-operators are homomorphisms for their auxiliary representations") {
    Fixture f;
    const Scalar z = f.rng.ring(0.6, 1.5);
    const Rep rh = rho(f.r, f.cc, f.wp);
    const Rep rb = rhobar(f.r, f.cc, f.wp);
    const Scalar c0 = c0_constant(f.r, f.s, +1);
    const Rep om = omega(f.r, f.s, f.cc, c0, f.wp);
    const Rep ph = phi(c0, f.wp);

    CHECK(lhom_residual(l_rho(f.r, z, f.cc, f.wp), rh, z, borel_gens()) < 1e-9);
    CHECK(lhom_residual(l_rhobar(f.r, z, f.cc, f.wp), rb, z, borel_gens()) < 1e-9);
    CHECK(lhom_residual(l_phi(f.wp), ph, z, borel_gens()) < 1e-9);
    CHECK(lhom_residual(l_omega(f.r, f.s, z, f.cc, f.wp), om, z, all_gens()) < 1e-9);
}

TEST_CASE("6-vertex R-matrix") {
    Fixture f;
    const R6V k1 = r6v_coeffs(Scalar(1.0), f.root);
    CHECK(std::abs(k1.b) == doctest::Approx(0.0));
    CHECK(std::abs(k1.a - (Scalar(1.0) - f.root.q * f.root.q)) < 1e-15);
    CHECK(std::abs(k1.c - k1.a) < 1e-15);
    const R6V kq = r6v_coeffs(Scalar(1.0) / f.root.q, f.root);
    CHECK(std::abs(kq.a) < 1e-15);  // a(q^-1) = 1 - q^2 q^-2 = 0

    const Scalar z = f.rng.ring(0.6, 1.5);
    const Scalar w = f.rng.ring(0.6, 1.5);
    CHECK(r6v_hom_residual(z, w, f.root) < 1e-10);
}

TEST_CASE("exchange relations between L-operators") {
    Fixture f;
    const Scalar z = f.rng.ring(0.6, 1.5);
    const Scalar w = f.rng.ring(0.6, 1.5);
    CHECK(ll_t_residual(f.r, f.s, z, f.cc, f.wp) < 1e-9);
    CHECK(ll_s_residual(f.r, f.rp, f.s, f.sp, z, f.cc, f.wp) < 1e-9);
    CHECK(ll_r_residual(f.r, f.rp, f.s, f.sp, z, f.cc, f.wp) < 1e-9);
    CHECK(rll_residual(RllKind::Rho, f.r, f.s, z, w, f.cc, f.wp) < 1e-9);
    CHECK(rll_residual(RllKind::RhoBar, f.r, f.s, z, w, f.cc, f.wp) < 1e-9);
    CHECK(rll_residual(RllKind::Omega, f.r, f.s, z, w, f.cc, f.wp) < 1e-9);
}

TEST_CASE("factorization of L-operators, including the general three-matrix form") {
    Fixture f;
    const Scalar z = f.rng.ring(0.6, 1.5);
    CHECK(l_factorization_residual(f.r, f.s, z, f.cc, f.wp) < 1e-9);
    for (int i = 0; i < 3; ++i)
        CHECK(abc_residual(f.random2(), f.random2(), f.random2(), f.wp) < 1e-9);
}

TEST_CASE("bootstrap fusion relations for both branches of z_s") {
    Fixture f;
    for (int sign : {+1, -1}) {
        const Scalar zs = z_point(f.s, f.cc, sign);
        Scalar w = f.rng.ring(0.6, 1.5);
        for (int i = 0; i < 50; ++i) {
            const R6V k = r6v_coeffs(zs / w, f.root);
            if (std::abs(k.a) > 1e-4 && std::abs(k.b) > 1e-4) break;
            w = f.rng.ring(0.6, 1.5);
        }
        const LFusionReport rep = l_fusion_residuals(f.s, zs, w, f.cc, f.wp);
        CHECK(rep.worst() < 1e-9);
        const OmegaFusionReport orep = omega_fusion_residuals(f.r, f.s, zs, w, f.cc, f.wp);
        CHECK(orep.inject < 1e-9);
        CHECK(orep.project < 1e-9);
        CHECK(gauge_u_residual(f.s, zs, w, f.cc) < 1e-10);
        CHECK(gauge_v_residual(f.s, zs, w, f.cc) < 1e-10);
    }
}

TEST_CASE("composite-operator fusion with the printed coefficients") {
    Fixture f;
    const VFusionReport rep = v_fusion_residuals(f.rp, f.s, f.sp, f.cc, f.wp);
    CHECK(rep.inject < 1e-9);
    CHECK(rep.project < 1e-9);
}

TEST_CASE("scaled inverse L-operator") {
    Fixture f;
    const Scalar z = f.rng.ring(0.6, 1.5);
    CHECK(lbold_normalization_residual(f.s, f.sp, z, f.cc, f.wp) < 1e-9);
    CHECK(lbold_hom_residual(f.s, f.sp, z, c0_constant(f.s, f.sp, +1), f.cc, f.wp) < 1e-9);
}

TEST_CASE("gauge-fixed L-operators") {
    Fixture f;
    const Scalar z = f.rng.ring(0.6, 1.5);
    const Scalar mu = f.rng.ring(0.6, 1.5);
    CHECK(std::abs(det2(u_std(z, mu)) - mu * (Scalar(1.0) - z * z)) < 1e-14);
    // z = 0 kills the off-diagonal entries of U(z, mu)
    const LOp l0 = l_std(Scalar(0.0), mu, f.wp);
    const int n = f.wp.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(std::abs(l0.mat(i * 2, j * 2 + 1)) == doctest::Approx(0.0));
            CHECK(std::abs(l0.mat(i * 2 + 1, j * 2)) == doctest::Approx(0.0));
        }
}

TEST_CASE("fusion relations hold at N = 5") {
    Fixture f(5, 77);
    const Scalar zs = z_point(f.s, f.cc, +1);
    const Scalar w = f.rng.ring(0.7, 1.3);
    CHECK(l_fusion_residuals(f.s, zs, w, f.cc, f.wp).worst() < 1e-9);
    const VFusionReport rep = v_fusion_residuals(f.rp, f.s, f.sp, f.cc, f.wp);
    CHECK(rep.inject < 1e-9);
    CHECK(rep.project < 1e-9);
}
