#include "cpq/weyl.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace cpq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Scalar RootOfUnity::pow_int(long k) const {
    long r = k % order;
    if (r < 0) r += order;
    return std::polar(1.0, kTwoPi * exponent * static_cast<double>(r) / order);
}

Scalar RootOfUnity::pow_real(double x) const {
    return std::polar(1.0, kTwoPi * exponent * x / order);
}

Scalar RootOfUnity::log_q() const { return Scalar(0.0, kTwoPi * exponent / order); }

RootOfUnity make_root(int order, int exponent) {
    if (order < 3) throw Error(ErrorCode::InvalidArgument, "root order must be >= 3");
    if (order % 2 == 0) throw Error(ErrorCode::InvalidArgument, "root order must be odd");
    const int m = ((exponent % order) + order) % order;
    if (std::gcd(m, order) != 1)
        throw Error(ErrorCode::InvalidArgument, "root exponent must be coprime to the order");
    RootOfUnity r;
    r.order = order;
    r.exponent = m;
    r.q = r.pow_int(1);
    return r;
}

CMat WeylPair::z_pow(long k) const {
    const int n = root.order;
    CMat m(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = root.pow_int(k * j);
    return m;
}

CMat WeylPair::x_pow(long k) const {
    const int n = root.order;
    long r = k % n;
    if (r < 0) r += n;
    CMat m(n, n);
    for (int j = 0; j < n; ++j) m(static_cast<int>((j + r) % n), j) = 1.0;
    return m;
}

WeylPair make_weyl(const RootOfUnity& root) {
    WeylPair wp;
    wp.root = root;
    wp.X = wp.x_pow(1);
    wp.Z = wp.z_pow(1);
    wp.Xinv = wp.x_pow(-1);
    wp.Zinv = wp.z_pow(-1);
    return wp;
}

CMat chi(const WeylPair& wp) { return kron(wp.Xinv, wp.X); }

CMat diag_frac_power(const CMat& d, double alpha) {
    if (!d.square()) throw Error(ErrorCode::Dimension, "diag_frac_power needs a square matrix");
    const int n = d.rows();
    CMat r(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && std::abs(d(i, j)) > 0.0)
                throw Error(ErrorCode::InvalidArgument, "diag_frac_power: matrix not diagonal");
        }
        const Scalar v = d(i, i);
        if (v == Scalar(0.0))
            throw Error(ErrorCode::Degenerate, "diag_frac_power: zero diagonal entry");
        r(i, i) = std::pow(v, Scalar(alpha));
    }
    return r;
}

CMat clock_frac_power(const WeylPair& wp, int grade, double alpha) {
    const int n = wp.root.order;
    CMat r(n, n);
    for (int j = 0; j < n; ++j) r(j, j) = wp.root.pow_real(grade * alpha * j);
    return r;
}

}  // namespace cpq
