#include "cpq/curve.hpp"

#include <cmath>
#include <numbers>

namespace cpq {

namespace {

Scalar pow_n(Scalar v, int n) {
    Scalar r{1.0, 0.0};
    for (int i = 0; i < n; ++i) r *= v;
    return r;
}

double rel_err(Scalar lhs, Scalar rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

}  // namespace

Modulus make_modulus(Scalar k) {
    if (std::abs(k) < 1e-12) throw Error(ErrorCode::InvalidArgument, "modulus k must be nonzero");
    const Scalar k2 = k * k;
    if (std::abs(k2 - Scalar(1.0)) < 1e-12)
        throw Error(ErrorCode::Degenerate, "modulus with k^2 = 1 is degenerate");
    Modulus m;
    m.k = k;
    m.kprime = std::sqrt(Scalar(1.0) - k2);
    return m;
}

CurveResiduals validate(const CurvePoint& p) {
    const int n = p.root.order;
    const Scalar xn = pow_n(p.x, n);
    const Scalar yn = pow_n(p.y, n);
    const Scalar mun = pow_n(p.mu, n);
    const Scalar k = p.modulus.k;
    const Scalar kp = p.modulus.kprime;
    CurveResiduals res;
    res.xy = rel_err(xn + yn, k * (Scalar(1.0) + xn * yn));
    const double mu1 = rel_err(mun * (Scalar(1.0) - k * xn), kp);
    const double mu2 = rel_err(mun * kp, Scalar(1.0) - k * yn);
    res.mu = std::max(mu1, mu2);
    return res;
}

CurvePoint lift_x(const Modulus& mod, const RootOfUnity& root, Scalar x, int branch_y,
                  int branch_mu) {
    const int n = root.order;
    const Scalar xn = pow_n(x, n);
    const Scalar den = Scalar(1.0) - mod.k * xn;
    if (std::abs(den) < 1e-9)
        throw Error(ErrorCode::Degenerate, "lift_x: 1 - k x^N vanishes");
    const Scalar ynum = mod.k - xn;
    if (std::abs(ynum) < 1e-12)
        throw Error(ErrorCode::Degenerate, "lift_x: k - x^N vanishes (y would be zero)");
    const double inv_n = 1.0 / n;
    const Scalar yn = ynum / den;
    const Scalar mun = mod.kprime / den;
    CurvePoint p;
    p.x = x;
    p.y = std::pow(yn, Scalar(inv_n)) * root.pow_int(branch_y);
    p.mu = std::pow(mun, Scalar(inv_n)) * root.pow_int(branch_mu);
    p.log_mu = std::log(p.mu);
    p.modulus = mod;
    p.root = root;
    return p;
}

CurvePoint shift(const CurvePoint& p, int sign) {
    if (sign != 1 && sign != -1)
        throw Error(ErrorCode::InvalidArgument, "shift sign must be +-1");
    const Scalar q = p.root.pow_int(sign);
    CurvePoint r = p;
    r.x = p.x * q;
    r.y = p.y * q;
    r.mu = p.mu * q;
    r.log_mu = p.log_mu + static_cast<double>(sign) * p.root.log_q();
    return r;
}

Scalar c0_constant(const CurvePoint& r, const CurvePoint& s, int sign) {
    const Scalar q = r.root.q;
    const Scalar sq = q * q * r.x * s.x / (r.y * s.y);
    const Scalar root = std::sqrt(sq);
    return sign >= 0 ? root : -root;
}

Scalar z_point(const CurvePoint& s, const CouplingConstants& cc, int sign) {
    const Scalar sq = cc.kappa0 * cc.kappa1 * s.x * s.y;
    const Scalar root = std::sqrt(sq);
    return sign >= 0 ? root : -root;
}

SesConstants ses_constants(const CurvePoint& s, const CouplingConstants& cc, Scalar zs) {
    if (std::abs(zs) < 1e-300)
        throw Error(ErrorCode::InvalidArgument, "ses_constants: z_s must be nonzero");
    const Scalar q = s.root.q;
    SesConstants out;
    out.c = -cc.kappa0 * s.x * s.mu * q * q / zs;
    out.cbar = cc.kappa0 * s.y * q / zs;
    out.d = cc.kappa0 * s.y / (zs * q);
    return out;
}

std::uint64_t Rng::next_u64() {
    // splitmix64; deterministic across platforms.
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

Scalar Rng::ring(double rmin, double rmax) {
    const double r = uniform(rmin, rmax);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, phi);
}

Modulus random_modulus(Rng& rng) { return make_modulus(rng.ring(0.2, 0.8)); }

CurvePoint random_point(Rng& rng, const Modulus& mod, const RootOfUnity& root) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        const Scalar x = rng.ring(0.5, 2.0);
        try {
            CurvePoint p = lift_x(mod, root, x, rng.uniform_int(root.order),
                                  rng.uniform_int(root.order));
            if (validate(p).ok(1e-9)) return p;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error(ErrorCode::Degenerate, "random_point: no valid draw after 100 attempts");
}

}  // namespace cpq
