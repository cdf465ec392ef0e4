#pragma once

#include "cpq/weyl.hpp"

#include <cstdint>

namespace cpq {

struct Modulus {
    Scalar k;
    Scalar kprime;  // k^2 + kprime^2 = 1
};

Modulus make_modulus(Scalar k);

struct CouplingConstants {
    Scalar kappa0{1.0, 0.0};
    Scalar kappa1{1.0, 0.0};
};

// A point (x, y, mu) on the curve x^N + y^N = k (1 + x^N y^N),
// mu^N = kprime / (1 - k x^N) = (1 - k y^N) / kprime.
//
// log_mu tracks a branch of log(mu) additively across q-shifts so that
// fractional twist powers mu^alpha stay coherent along a shifted family
// s, sq, sq^{-1} (exp(log_mu) == mu always holds).
struct CurvePoint {
    Scalar x;
    Scalar y;
    Scalar mu;
    Scalar log_mu;
    Modulus modulus;
    RootOfUnity root;
};

struct CurveResiduals {
    double xy = 0.0;  // relative residual of x^N + y^N = k(1 + x^N y^N)
    double mu = 0.0;  // relative residual of mu^N = kprime/(1 - k x^N)
    bool ok(double tol = 1e-10) const { return xy <= tol && mu <= tol; }
};

CurveResiduals validate(const CurvePoint& p);

// Solves for (y, mu) given x, with branch_y / branch_mu selecting among the
// N-th roots (multiplication by q^branch).
CurvePoint lift_x(const Modulus& mod, const RootOfUnity& root, Scalar x, int branch_y = 0,
                  int branch_mu = 0);

// s -> s q^{+-1}: all three coordinates multiplied by q^{+-1}.
CurvePoint shift(const CurvePoint& p, int sign);

// c0 with c0^2 = q^2 x_r x_s / (y_r y_s); sign=+1 selects the principal
// square root, sign=-1 its negative.
Scalar c0_constant(const CurvePoint& r, const CurvePoint& s, int sign = +1);

// z_s with z_s^2 = kappa0 kappa1 x_s y_s.
Scalar z_point(const CurvePoint& s, const CouplingConstants& cc, int sign = +1);

struct SesConstants {
    Scalar c;     // -kappa0 x mu q^2 / z
    Scalar cbar;  //  kappa0 y q / z
    Scalar d;     //  kappa0 y / (z q)
};

SesConstants ses_constants(const CurvePoint& s, const CouplingConstants& cc, Scalar zs);

// Deterministic sampling used by the harness: k drawn with |k| in [0.2, 0.8],
// x on the annulus 0.5 <= |x| <= 2.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64();
    double uniform();                     // [0, 1)
    double uniform(double lo, double hi); // [lo, hi)
    int uniform_int(int n);               // {0, ..., n-1}
    Scalar ring(double rmin, double rmax);

  private:
    std::uint64_t state_;
};

Modulus random_modulus(Rng& rng);
CurvePoint random_point(Rng& rng, const Modulus& mod, const RootOfUnity& root);

}  // namespace cpq
