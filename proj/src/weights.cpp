#include "cpq/weights.hpp"

#include <cmath>
#include <limits>

namespace cpq {

namespace {

constexpr double kDenominatorFloor = 1e-6;

struct Ratio {
    Scalar num, den;
};

Ratio hat_ratio(const CurvePoint& r, const CurvePoint& s, int n) {
    const Scalar q2n = r.root.pow_int(2L * n);
    const Scalar q2nm1 = r.root.pow_int(2L * (n - 1));
    return {s.mu * r.y - r.mu * s.y * q2nm1, s.mu * s.x - r.mu * r.x * q2n};
}

Ratio bar_ratio(const CurvePoint& r, const CurvePoint& s, int n) {
    const Scalar q2 = r.root.pow_int(2);
    const Scalar q2n = r.root.pow_int(2L * n);
    return {r.mu * s.mu * (r.x * q2 - s.x * q2n), s.y - r.y * q2n};
}

Ratio w_ratio(const CurvePoint& r, const CurvePoint& s, int n) {
    const Scalar q2n = r.root.pow_int(2L * n);
    return {r.mu * (s.y - r.x * q2n), s.mu * (r.y - s.x * q2n)};
}

Ratio check_ratio(const CurvePoint& r, const CurvePoint& s, int n) {
    const Scalar q2n = r.root.pow_int(2L * n);
    const Scalar mm = r.mu * s.mu;
    return {s.y - r.x * q2n * mm, r.y - s.x * q2n * mm};
}

Ratio ratio_of(WeightFamily f, const CurvePoint& r, const CurvePoint& s, int n) {
    switch (f) {
        case WeightFamily::WHat: return hat_ratio(r, s, n);
        case WeightFamily::WBar: return bar_ratio(r, s, n);
        case WeightFamily::W: return w_ratio(r, s, n);
        case WeightFamily::WCheck: return check_ratio(r, s, n);
    }
    throw Error(ErrorCode::Internal, "unknown weight family");
}

WeightTable build_by_recursion(WeightFamily f, const CurvePoint& r, const CurvePoint& s) {
    const int n = r.root.order;
    WeightTable t;
    t.family = f;
    t.values.assign(static_cast<size_t>(n), Scalar(0.0));
    t.values[0] = 1.0;
    Scalar cycle{1.0, 0.0};
    for (int i = 1; i <= n; ++i) {
        const Ratio ratio = ratio_of(f, r, s, i);
        if (std::abs(ratio.den) < kDenominatorFloor) {
            // Only the wrap step feeds nothing but the closure diagnostic;
            // a degenerate denominator there (coincident points) leaves the
            // table itself well-defined.
            if (i < n)
                throw Error(ErrorCode::Degenerate,
                            std::string(weight_family_name(f)) +
                                " recursion denominator ~0 at n=" + std::to_string(i));
            t.closure = std::numeric_limits<double>::infinity();
            return t;
        }
        const Scalar q = ratio.num / ratio.den;
        cycle *= q;
        if (i < n) t.values[static_cast<size_t>(i)] = t.values[static_cast<size_t>(i - 1)] * q;
    }
    t.closure = std::abs(cycle - Scalar(1.0));
    return t;
}

}  // namespace

const char* weight_family_name(WeightFamily f) {
    switch (f) {
        case WeightFamily::WHat: return "w_hat";
        case WeightFamily::WBar: return "w_bar";
        case WeightFamily::W: return "w";
        case WeightFamily::WCheck: return "w_check";
    }
    return "?";
}

WeightTable w_hat(const CurvePoint& r, const CurvePoint& s) {
    return build_by_recursion(WeightFamily::WHat, r, s);
}

WeightTable w_bar(const CurvePoint& r, const CurvePoint& s) {
    WeightTable t = build_by_recursion(WeightFamily::WBar, r, s);
    Scalar sum{0.0, 0.0};
    for (const Scalar& v : t.values) sum += v;
    if (std::abs(sum) < 1e-9)
        throw Error(ErrorCode::Degenerate, "w_bar: vanishing sum, table cannot be normalized");
    for (Scalar& v : t.values) v /= sum;
    return t;
}

WeightTable fourier(const WeightTable& t, int sign, const RootOfUnity& root) {
    const int n = t.size();
    WeightTable out;
    out.closure = t.closure;
    out.family = (t.family == WeightFamily::WHat && sign < 0) ? WeightFamily::W
                 : (t.family == WeightFamily::WBar && sign > 0)
                     ? WeightFamily::WCheck
                     : t.family;
    out.values.assign(static_cast<size_t>(n), Scalar(0.0));
    for (int k = 0; k < n; ++k) {
        Scalar acc{0.0, 0.0};
        for (int m = 0; m < n; ++m) acc += t[m] * root.pow_int(2L * sign * m * k);
        out.values[static_cast<size_t>(k)] = acc;
    }
    return out;
}

Scalar weight_ratio(WeightFamily f, const CurvePoint& r, const CurvePoint& s, int n) {
    const Ratio ratio = ratio_of(f, r, s, n);
    if (std::abs(ratio.den) < kDenominatorFloor)
        throw Error(ErrorCode::Degenerate, "weight ratio denominator ~0");
    return ratio.num / ratio.den;
}

}  // namespace cpq
