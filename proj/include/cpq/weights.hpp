#pragma once

#include "cpq/curve.hpp"

#include <vector>

namespace cpq {

enum class WeightFamily { WHat, WBar, W, WCheck };

const char* weight_family_name(WeightFamily f);

// One of the four weight families attached to a pair of curve points.
// closure is the around-the-cycle product of the defining ratio minus 1;
// it must vanish for the table to be well-defined modulo N.
struct WeightTable {
    WeightFamily family = WeightFamily::WHat;
    std::vector<Scalar> values;
    double closure = 0.0;

    int size() const { return static_cast<int>(values.size()); }
    const Scalar& operator[](int n) const { return values[static_cast<size_t>(n)]; }
};

// Recursion tables, normalized so that what(0) = 1 and sum_m wbar(m) = 1
// (the latter makes the Fourier partner wcheck satisfy wcheck(0) = 1).
WeightTable w_hat(const CurvePoint& r, const CurvePoint& s);
WeightTable w_bar(const CurvePoint& r, const CurvePoint& s);

// Discrete Fourier transforms: sign=-1 sends WHat -> W via q^{-2mn},
// sign=+1 sends WBar -> WCheck via q^{+2mn}.
WeightTable fourier(const WeightTable& t, int sign, const RootOfUnity& root);

// Defining ratio of a family at step n (1 <= n <= N); used by the ratio
// certification checks.
Scalar weight_ratio(WeightFamily f, const CurvePoint& r, const CurvePoint& s, int n);

}  // namespace cpq
