#pragma once

#include <array>
#include <optional>
#include <vector>

#include "betamatch/dynamics.hpp"

namespace betamatch {

/// k when minpoly is x^k - x^{k-1} - ... - x - 1, else nullopt.
std::optional<int> multinacci_order(const NumberField& f);

/// Closed-form multinacci predictions: matching after k steps on [0, 1/beta^k)
/// (strict), plus the tribonacci four-step window [1/beta, 1/beta^2+2/beta^3]
/// with both endpoints included.
/// Throws NotMultinacci.
std::optional<int> predict_matching(const NumberField& f, const FieldElement& alpha);

/// |D| = sum e_i / beta^i with e in {0,1}^k; sign from the signed difference.
/// sign == 0 with all-zero bits encodes the matched state D = 0.
struct DifferenceCode {
  std::vector<int> bits;
  int sign = 0;
  FieldElement value;  // the signed difference as given
};

/// Decodes a difference value into its {0,1}-code; throws NotACode when the
/// value lies outside the code set.
DifferenceCode code_of_difference(const NumberField& f, const FieldElement& d);

/// Tribonacci fiber state: a signed 3-bit code, or the absorbing Matched state.
struct FiberState {
  bool matched = false;
  int sign = +1;
  std::array<int, 3> bits{0, 0, 0};

  static FiberState Matched() { return {true, 0, {0, 0, 0}}; }
  static FiberState make(int sign, std::array<int, 3> bits) {
    return {false, sign, bits};
  }
  bool operator==(const FiberState&) const = default;
};

/// One step of the tribonacci fiber map with an unsigned branch offset in
/// {0,1,2}. Transitions into +-100 are reported as Matched.
/// Throws UndefinedTransition when the offset is not allowed from the state.
FiberState fiber_step(const FiberState& state, int offset);

struct JAlphaComponent {
  FieldElement lo, hi;  // half-open [lo, hi)
  FiberState fiber;
};

/// The matching-in-two-steps regions of the tribonacci skew product, for
/// alpha < 1 - 1/beta. Throws RegimeNotImplemented otherwise and
/// NotMultinacci when the field is not tribonacci.
std::vector<JAlphaComponent> j_alpha_regions(const NumberField& f,
                                             const FieldElement& alpha);

}  // namespace betamatch
