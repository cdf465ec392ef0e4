#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpq/curve.hpp"

using namespace cpq;

TEST_CASE("lifted points satisfy both curve equations") {
    const RootOfUnity root = make_root(3, 1);
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Modulus mod = random_modulus(rng);
        const CurvePoint p = random_point(rng, mod, root);
        const CurveResiduals res = validate(p);
        CHECK(res.xy < 1e-12);
        CHECK(res.mu < 1e-12);
    }
}

TEST_CASE("perturbing mu breaks validation") {
    const RootOfUnity root = make_root(5, 1);
    Rng rng(12);
    const Modulus mod = random_modulus(rng);
    CurvePoint p = random_point(rng, mod, root);
    p.mu *= 1.01;
    CHECK(validate(p).mu > 1e-3);
}

TEST_CASE("symmetric point satisfies the first equation") {
    // x = y solves x^N + y^N = k (1 + x^N y^N) when k = 2 x^N / (1 + x^2N)
    const int n = 3;
    const Scalar x{0.8, 0.3};
    Scalar xn{1.0, 0.0};
    for (int i = 0; i < n; ++i) xn *= x;
    const Scalar k = 2.0 * xn / (Scalar(1.0) + xn * xn);
    CHECK(std::abs(xn + xn - k * (Scalar(1.0) + xn * xn)) < 1e-14);
}

TEST_CASE("branch selection") {
    const RootOfUnity root = make_root(5, 1);
    Rng rng(13);
    const Modulus mod = random_modulus(rng);
    const Scalar x = rng.ring(0.5, 2.0);

    const CurvePoint a = lift_x(mod, root, x, 1, 2);
    const CurvePoint b = lift_x(mod, root, x, 1 + 5, 2);
    CHECK(std::abs(a.y - b.y) < 1e-14);
    CHECK(std::abs(a.mu - b.mu) < 1e-14);

    std::vector<Scalar> mus;
    for (int br = 0; br < 5; ++br) {
        const CurvePoint p = lift_x(mod, root, x, 0, br);
        CHECK(validate(p).ok(1e-10));
        for (const Scalar& m : mus) CHECK(std::abs(m - p.mu) > 1e-8);
        mus.push_back(p.mu);
    }
}

TEST_CASE("q-shift automorphism") {
    const RootOfUnity root = make_root(3, 1);
    Rng rng(14);
    const Modulus mod = random_modulus(rng);
    const CurvePoint p = random_point(rng, mod, root);

    const CurvePoint up = shift(p, +1);
    CHECK(validate(up).ok(1e-12));
    const CurvePoint back = shift(up, -1);
    CHECK(std::abs(back.x - p.x) < 1e-14);
    CHECK(std::abs(back.mu - p.mu) < 1e-14);

    CurvePoint cycled = p;
    for (int i = 0; i < 3; ++i) cycled = shift(cycled, +1);
    CHECK(std::abs(cycled.x - p.x) < 1e-13);
    CHECK(std::abs(cycled.y - p.y) < 1e-13);
    CHECK(std::abs(cycled.mu - p.mu) < 1e-13);

    // the carried log of mu stays consistent with mu itself
    CHECK(std::abs(std::exp(up.log_mu) - up.mu) < 1e-13);
    CHECK_THROWS_AS(shift(p, 2), Error);
}

TEST_CASE("derived constants") {
    const RootOfUnity root = make_root(3, 1);
    Rng rng(15);
    const Modulus mod = random_modulus(rng);
    const CurvePoint r = random_point(rng, mod, root);
    const CurvePoint s = random_point(rng, mod, root);
    const CouplingConstants cc{rng.ring(0.5, 1.5), rng.ring(0.5, 1.5)};

    for (int sign : {+1, -1}) {
        const Scalar c0 = c0_constant(r, s, sign);
        CHECK(std::abs(c0 * c0 - root.q * root.q * r.x * s.x / (r.y * s.y)) < 1e-13);
        const Scalar zs = z_point(s, cc, sign);
        CHECK(std::abs(zs * zs - cc.kappa0 * cc.kappa1 * s.x * s.y) < 1e-13);
    }
    CHECK(std::abs(c0_constant(r, s, +1) + c0_constant(r, s, -1)) < 1e-14);

    const Scalar zs = z_point(s, cc, +1);
    const SesConstants k = ses_constants(s, cc, zs);
    CHECK(std::abs(k.cbar / k.d - root.q * root.q) < 1e-13);
    CHECK(std::abs(k.c + cc.kappa0 * s.x * s.mu * root.q * root.q / zs) < 1e-13);

    // direct substitution: kappa = 1, x = y = z = 1 gives c = -mu q^2
    SesConstants plain = ses_constants(
        CurvePoint{Scalar(1.0), Scalar(1.0), s.mu, std::log(s.mu), mod, root},
        CouplingConstants{}, Scalar(1.0));
    CHECK(std::abs(plain.c + s.mu * root.q * root.q) < 1e-14);
}

TEST_CASE("lift rejects degenerate input") {
    const RootOfUnity root = make_root(3, 1);
    const Modulus mod = make_modulus(Scalar{0.5, 0.1});
    // choose x with x^N = k so that y would vanish
    const Scalar x = std::pow(mod.k, Scalar(1.0 / 3.0));
    CHECK_THROWS_AS(lift_x(mod, root, x, 0, 0), Error);
}
