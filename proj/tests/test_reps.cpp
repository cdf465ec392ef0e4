#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpq/reps.hpp"
#include "cpq/transfer.hpp"

using namespace cpq;

namespace {

struct Fixture {
    RootOfUnity root = make_root(3, 1);
    WeylPair wp = make_weyl(root);
    CouplingConstants cc;
    Modulus mod;
    CurvePoint r, s;
    Scalar c0;

    Fixture() {
        Rng rng(21);
        cc.kappa0 = rng.ring(0.5, 1.5);
        cc.kappa1 = rng.ring(0.5, 1.5);
        mod = random_modulus(rng);
        r = random_point(rng, mod, root);
        s = random_point(rng, mod, root);
        c0 = c0_constant(r, s, +1);
    }
};

}  // namespace

TEST_CASE("omega matches the defining formulas entrywise") {
    Fixture f;
    const Rep om = omega(f.r, f.s, f.cc, f.c0, f.wp);
    const Scalar q = f.root.q;
    const Scalar qdiff = q - Scalar(1.0) / q;

    // e0 = k0 x_r/(q - q^-1) X^-1 (y_s/(x_r mu_r mu_s) Z^-2 - 1), looped by hand
    const CMat e0 = om.act(Gen::E0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Scalar want{0.0, 0.0};
            // X^-1 has support at (j-1 mod 3, j); diagonal factor evaluated at column j
            if (((j - 1) % 3 + 3) % 3 == i) {
                const Scalar diag =
                    f.s.y / (f.r.x * f.r.mu * f.s.mu) * f.root.pow_int(-2 * j) - Scalar(1.0);
                want = f.cc.kappa0 * f.r.x / qdiff * diag;
            }
            CHECK(std::abs(e0(i, j) - want) < 1e-13);
        }

    CHECK(rel_residual(om.act(Gen::T0) * om.act(Gen::T1), CMat::identity(3)) < 1e-14);
    CHECK(rel_residual(om.act(Gen::Z0) * om.act(Gen::Z1), CMat::identity(3)) < 1e-14);
    CHECK_THROWS_AS(omega(f.r, f.s, f.cc, f.c0 * Scalar(1.1), f.wp), Error);
}

TEST_CASE("borel representation formulas") {
    Fixture f;
    const Rep rh = rho(f.r, f.cc, f.wp);
    const Rep rb = rhobar(f.r, f.cc, f.wp);
    const Scalar q = f.root.q;
    const Scalar qdiff = q - Scalar(1.0) / q;

    CHECK(rel_residual(rh.act(Gen::T0) * rh.act(Gen::T1), CMat::identity(3)) < 1e-14);
    CHECK(rel_residual(rb.act(Gen::E1), f.wp.X * (f.cc.kappa1 * f.r.x * f.r.mu / qdiff)) < 1e-14);
    CHECK(rel_residual(rh.act(Gen::E0), f.wp.Xinv * (-f.cc.kappa0 * f.r.x / qdiff)) < 1e-14);
    CHECK_THROWS_AS(rh.act(Gen::F0), Error);
    CHECK_THROWS_AS(rb.act(Gen::F1), Error);
}

TEST_CASE("phi is a sum of one-dimensional representations") {
    Fixture f;
    const Rep ph = phi(f.c0, f.wp);
    CHECK(ph.act(Gen::E0).frobenius() == doctest::Approx(0.0));
    CHECK(ph.act(Gen::E1).frobenius() == doctest::Approx(0.0));
    CHECK(rel_residual(ph.act(Gen::T0) * ph.act(Gen::T1), CMat::identity(3)) < 1e-14);
    for (Gen g : borel_gens())
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(std::abs(ph.act(g)(i, j)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(phi(Scalar(0.0), f.wp), Error);
}

TEST_CASE("two-dimensional evaluation representation") {
    const RootOfUnity root = make_root(5, 1);
    const Scalar z{0.7, 0.4};
    const Rep pz = pi_rep(z, root);
    CHECK(std::abs(pz.act(Gen::E1)(0, 1) - z) < 1e-15);
    CHECK(std::abs(pz.act(Gen::E1)(1, 0)) == doctest::Approx(0.0));
    CHECK(std::abs(pz.act(Gen::T1)(0, 0) - root.q) < 1e-15);
    CHECK(std::abs(pz.act(Gen::T1)(1, 1) - Scalar(1.0) / root.q) < 1e-15);

    const CMat comm = pz.act(Gen::E1) * pz.act(Gen::F1) - pz.act(Gen::F1) * pz.act(Gen::E1);
    const Scalar qdiff = root.q - Scalar(1.0) / root.q;
    const CMat want = (pz.act(Gen::T1) - pz.act(Gen::T1Inv)) * (Scalar(1.0) / qdiff);
    CHECK(rel_residual(comm, want) < 1e-14);
    CHECK(std::abs(want(0, 0) - Scalar(1.0)) < 1e-14);
    CHECK_THROWS_AS(pi_rep(Scalar(0.0), root), Error);
}

TEST_CASE("coproduct structure") {
    Fixture f;
    const Rep rh = rho(f.r, f.cc, f.wp);
    const Rep rb = rhobar(f.s, f.cc, f.wp);
    const Rep ph = phi(f.c0, f.wp);

    CHECK(rel_residual(coproduct(rh, rb, Gen::T1), kron(rh.act(Gen::T1), rb.act(Gen::T1))) <
          1e-14);
    // second term vanishes against phi
    CHECK(rel_residual(coproduct(rh, ph, Gen::E0),
                       kron(rh.act(Gen::E0), CMat::identity(3))) < 1e-14);
    // invertibility of the coproduct t-images
    CHECK(rel_residual(coproduct(rh, rb, Gen::T1) * coproduct(rh, rb, Gen::T1Inv),
                       CMat::identity(9)) < 1e-13);
}

TEST_CASE("coassociativity in a triple of evaluation representations") {
    const RootOfUnity root = make_root(3, 1);
    const Rep a = pi_rep(Scalar{0.9, 0.1}, root);
    const Rep b = pi_rep(Scalar{1.2, -0.3}, root);
    const Rep c = pi_rep(Scalar{0.5, 0.6}, root);
    const CMat i2 = CMat::identity(2);

    for (Gen g : {Gen::E1, Gen::E0, Gen::F1, Gen::F0}) {
        const CMat triple = coproduct_action({&a, &b, &c}, g);
        // (Delta x id) Delta and (id x Delta) Delta built from binary pieces
        CMat left(8, 8), right(8, 8);
        if (g == Gen::E1 || g == Gen::E0) {
            const Gen t = (g == Gen::E1) ? Gen::T1 : Gen::T0;
            left = kron(coproduct(a, b, g), i2) +
                   kron(coproduct(a, b, t), c.act(g));  // z = 1 in pi
            right = kron(a.act(g), kron(i2, i2)) + kron(a.act(t), coproduct(b, c, g));
        } else {
            const Gen ti = (g == Gen::F1) ? Gen::T1Inv : Gen::T0Inv;
            left = kron(coproduct(a, b, g), c.act(ti)) + kron(kron(i2, i2), c.act(g));
            right = kron(a.act(g), coproduct(b, c, ti)) + kron(i2, coproduct(b, c, g));
        }
        CHECK(rel_residual(triple, left) < 1e-13);
        CHECK(rel_residual(triple, right) < 1e-13);
    }
}

TEST_CASE("opposite coproduct is the swap conjugate") {
    Fixture f;
    const Rep rh = rho(f.r, f.cc, f.wp);
    const Rep pz = pi_rep(Scalar{0.8, 0.2}, f.root);
    const CMat p = swap_op(2, 3);
    for (Gen g : {Gen::E0, Gen::E1, Gen::T1, Gen::Z0}) {
        const CMat lhs = coproduct_op(rh, pz, g);
        const CMat rhs = p * coproduct(pz, rh, g) * swap_op(3, 2);
        CHECK(rel_residual(lhs, rhs) < 1e-13);
    }
    CHECK(rel_residual(coproduct_op(rh, pz, Gen::T1), coproduct(rh, pz, Gen::T1)) < 1e-14);
}

TEST_CASE("intertwiner residual of the identity map vanishes") {
    Fixture f;
    const Rep rh = rho(f.r, f.cc, f.wp);
    CHECK(intertwiner_residual(CMat::identity(3), {&rh}, {&rh}, borel_gens()) < 1e-15);
}

TEST_CASE("twist insertion reproduces t1 at alpha = 1") {
    Fixture f;
    for (const Rep& rep : {omega(f.r, f.s, f.cc, f.c0, f.wp), rho(f.r, f.cc, f.wp),
                           rhobar(f.s, f.cc, f.wp), phi(f.c0, f.wp), pi_rep(Scalar{0.6, 0.3}, f.root)}) {
        CHECK(rel_residual(twist_insertion(rep, 1.0), rep.act(Gen::T1)) < 1e-13);
        CHECK(rel_residual(twist_insertion(rep, 0.0), CMat::identity(rep.dim)) < 1e-15);
    }
}
