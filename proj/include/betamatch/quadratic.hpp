#pragma once

#include <span>
#include <vector>

#include "betamatch/dynamics.hpp"

namespace betamatch {

enum class QuadSign { plus_d, minus_d };

struct QuadraticCase {
  QuadSign sign;
  long k = 0, d = 0;
  FieldElement gamma;          // beta-(k-1) for +d; (k+1)-beta for -d
  FieldElement circle_length;  // k-beta for +d; 1-gamma = beta-k for -d
};

/// Extracts (sign, k, d) from a quadratic minpoly x^2 - kx +- d and rejects
/// non-Pisot combinations. Throws NotPisotQuadratic.
QuadraticCase quadratic_case(const NumberField& f);

struct Plateau {
  FieldElement lo, hi;  // half-open [lo, hi)
  FieldElement value;
};

/// A circle map with plateaus: T_alpha off the plateaus, constant on them.
/// kind selects which of the case maps this is.
struct PlateauMap {
  enum class Kind { plus_d_g, minus_d_f1, minus_d_f2, minus_d_composition };
  Kind kind;
  QuadraticCase qc;
  FieldElement alpha;
  FieldElement domain_lo, domain_hi;
  std::vector<Plateau> plateaus;  // sorted by lo, clipped to the domain
  int slope_power = 1;            // slope is beta^slope_power off plateaus
};

/// The plateau circle map: g_alpha = min(T_alpha, k-beta) for +d; the
/// composition f2 . f1 for -d. Throws WrongRegime for -d when
/// alpha < k+1-beta (matching is immediate there).
PlateauMap plateau_map(const NumberField& f, const QuadraticCase& qc,
                       const FieldElement& alpha);

/// The -d factor maps, exposed separately.
PlateauMap plateau_map_f1(const NumberField& f, const QuadraticCase& qc,
                          const FieldElement& alpha);
PlateauMap plateau_map_f2(const NumberField& f, const QuadraticCase& qc,
                          const FieldElement& alpha);

/// Half-open plateau membership, side-resolved at exact endpoints.
bool in_plateau(const PlateauMap& pm, const OneSidedPoint& x);

/// g(x): the plateau value on plateaus, T_alpha(x) (resp. the composition)
/// off them.
OneSidedPoint plateau_eval(const NumberField& f, const PlateauMap& pm,
                           const OneSidedPoint& x);

struct EscapeOutcome {
  bool hit = false;
  int index = 0;  // first n with g^n(x) in a plateau, or the bound
};

EscapeOutcome escape_depth(const NumberField& f, const PlateauMap& pm,
                           OneSidedPoint x, int bound);

/// An arc [lo, lo+len) on the circle of circumference m(S); may wrap.
struct CircleArc {
  FieldElement lo, len;
};

/// The +d cylinder set C_{e_0...e_{n-1}}: at most n half-open arcs of
/// combined length beta^-n m(S) on which g^n is affine onto the circle.
/// Letters range over {0..d-1}; throws EmptyCylinder on an unrealizable word
/// (defensive; each level maps onto the full circle).
std::vector<CircleArc> cylinder_components(const NumberField& f,
                                           const QuadraticCase& qc,
                                           const FieldElement& alpha,
                                           std::span<const int> word);

}  // namespace betamatch
