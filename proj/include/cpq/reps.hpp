#pragma once

#include "cpq/curve.hpp"
#include "cpq/weyl.hpp"

#include <array>
#include <string>
#include <vector>

namespace cpq {

enum class Gen { E0, E1, F0, F1, T0, T0Inv, T1, T1Inv, Z0, Z1 };

constexpr std::array<Gen, 10> kAllGens = {Gen::E0, Gen::E1, Gen::F0,    Gen::F1,    Gen::T0,
                                          Gen::T0Inv, Gen::T1, Gen::T1Inv, Gen::Z0, Gen::Z1};
constexpr std::array<Gen, 8> kBorelGens = {Gen::E0, Gen::E1, Gen::T0, Gen::T0Inv,
                                           Gen::T1, Gen::T1Inv, Gen::Z0, Gen::Z1};

const char* gen_name(Gen g);
bool is_borel_gen(Gen g);

enum class RepKind { Full, Borel };

// A finite-dimensional representation: total map from generator symbols to
// matrices, plus the data needed to build fractional twist insertions
// t1^alpha = exp(alpha * t1_log_scale) * diag(q^(alpha * t1_grades[j])).
// The log/grade form keeps powers coherent along shifted families of points,
// which the twisted-trace identities rely on.
struct Rep {
    int dim = 0;
    RepKind kind = RepKind::Borel;
    RootOfUnity root;
    std::string label;

    Scalar t1_log_scale{0.0, 0.0};
    std::vector<double> t1_grades;

    const CMat& act(Gen g) const;
    bool has(Gen g) const;

    void set(Gen g, CMat m);

  private:
    std::array<CMat, 10> images_;
    std::array<bool, 10> defined_{};
};

// Cyclic representation depending on two curve points; c0^2 must equal
// q^2 x_r x_s / (y_r y_s).
Rep omega(const CurvePoint& r, const CurvePoint& s, const CouplingConstants& cc, Scalar c0,
          const WeylPair& wp);

// Borel-subalgebra cyclic representations attached to a single point.
Rep rho(const CurvePoint& r, const CouplingConstants& cc, const WeylPair& wp);
Rep rhobar(const CurvePoint& r, const CouplingConstants& cc, const WeylPair& wp);

// Direct sum of N one-dimensional Borel representations (e0 = e1 = 0).
Rep phi(Scalar c, const WeylPair& wp);

// Standard two-dimensional evaluation representation.
Rep pi_rep(Scalar z, const RootOfUnity& root);

// (a (x) b) applied to Delta(g) resp. the opposite coproduct.
CMat coproduct(const Rep& a, const Rep& b, Gen g);
CMat coproduct_op(const Rep& a, const Rep& b, Gen g);

// Iterated coproduct action on an ordered list of representations.
CMat coproduct_action(const std::vector<const Rep*>& reps, Gen g);

// max over gens of ||map * src(Delta g) - dst(Delta g) * map||_F / ||map||_F.
double intertwiner_residual(const CMat& map, const std::vector<const Rep*>& src,
                            const std::vector<const Rep*>& dst, const std::vector<Gen>& gens);

std::vector<Gen> gens_for(const Rep& a);
std::vector<Gen> borel_gens();
std::vector<Gen> all_gens();

}  // namespace cpq
