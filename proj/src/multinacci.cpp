#include "betamatch/multinacci.hpp"

#include <algorithm>

namespace betamatch {

std::optional<int> multinacci_order(const NumberField& f) {
  const auto& mp = f.minpoly();
  int k = f.degree();
  if (k < 2) return std::nullopt;
  for (int i = 0; i < k; ++i)
    if (mp[i] != -1) return std::nullopt;
  return k;
}

std::optional<int> predict_matching(const NumberField& f, const FieldElement& alpha) {
  auto ord = multinacci_order(f);
  if (!ord) throw Error("NotMultinacci", "slope is not a multinacci number");
  int k = *ord;
  if (alpha.sign() < 0 || compare(alpha, f.one()) > 0)
    throw Error("AlphaOutOfRange", "alpha must lie in [0,1]");
  FieldElement inv_bk = f.beta_power(k).inverse();
  if (compare(alpha, inv_bk) < 0) return k;
  if (k == 3) {
    FieldElement inv_b = f.beta().inverse();
    FieldElement right = inv_b * inv_b + inv_b * inv_b * inv_b * Rat(2);
    if (compare(alpha, inv_b) >= 0 && compare(alpha, right) <= 0) return 4;
  }
  return std::nullopt;
}

DifferenceCode code_of_difference(const NumberField& f, const FieldElement& d) {
  auto ord = multinacci_order(f);
  if (!ord) throw Error("NotMultinacci", "slope is not a multinacci number");
  int k = *ord;
  if (d.is_zero()) return DifferenceCode{std::vector<int>(k, 0), 0, d};
  int sign = d.sign();
  FieldElement mag = sign < 0 ? -d : d;
  FieldElement inv_b = f.beta().inverse();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    FieldElement v = f.zero();
    FieldElement w = inv_b;
    std::vector<int> bits(k);
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        bits[i] = 1;
        v = v + w;
      }
      w = w * inv_b;
    }
    if (v == mag) return DifferenceCode{std::move(bits), sign, d};
  }
  throw Error("NotACode", "difference value lies outside the code set");
}

namespace {

struct Row {
  std::array<int, 3> state;
  int offset;
  std::array<int, 3> target;
  bool flip;     // target carries the opposite sign
  bool matched;  // target is the 100 gateway
};

// The tribonacci fiber transition table. Offsets are unsigned |b - a|.
constexpr Row kFiberTable[] = {
    {{0, 0, 1}, 0, {0, 1, 0}, false, false},
    {{0, 0, 1}, 1, {1, 0, 1}, true, false},
    {{0, 1, 0}, 0, {1, 0, 0}, false, true},
    {{0, 1, 0}, 1, {0, 1, 1}, true, false},
    {{0, 1, 1}, 0, {1, 1, 0}, false, false},
    {{0, 1, 1}, 1, {0, 0, 1}, true, false},
    {{1, 0, 1}, 1, {0, 1, 0}, false, false},
    {{1, 0, 1}, 2, {1, 0, 1}, true, false},
    {{1, 1, 0}, 1, {1, 0, 0}, false, true},
    {{1, 1, 0}, 2, {0, 1, 1}, true, false},
};

}  // namespace

FiberState fiber_step(const FiberState& state, int offset) {
  if (state.matched)
    throw Error("UndefinedTransition", "the matched state has no transitions");
  for (const Row& row : kFiberTable) {
    if (row.state == state.bits && row.offset == offset) {
      if (row.matched) return FiberState::Matched();
      return FiberState::make(row.flip ? -state.sign : state.sign, row.target);
    }
  }
  throw Error("UndefinedTransition", "offset not allowed from this fiber state");
}

std::vector<JAlphaComponent> j_alpha_regions(const NumberField& f,
                                             const FieldElement& alpha) {
  auto ord = multinacci_order(f);
  if (!ord || *ord != 3)
    throw Error("NotMultinacci", "the skew-product regions are tribonacci-specific");
  FieldElement inv_b = f.beta().inverse();
  FieldElement regime = f.one() - inv_b;
  if (compare(alpha, regime) >= 0)
    throw Error("RegimeNotImplemented",
                "regions are implemented for alpha < 1 - 1/beta only");
  FieldElement ib2 = inv_b * inv_b;
  FieldElement one_m = (f.one() - alpha) * inv_b;   // (1-alpha)/beta
  FieldElement two_m = (f.from_int(2) - alpha) * inv_b;  // (2-alpha)/beta

  std::vector<JAlphaComponent> out;
  auto add = [&](FieldElement lo, FieldElement hi, int sign, std::array<int, 3> bits) {
    out.push_back({std::move(lo), std::move(hi), FiberState::make(sign, bits)});
  };
  add(one_m + ib2, two_m, -1, {0, 1, 0});
  add(ib2, one_m, -1, {0, 1, 0});
  add(f.zero(), one_m - ib2, +1, {0, 1, 0});
  add(one_m, two_m - ib2, +1, {0, 1, 0});
  add(inv_b + ib2, two_m, -1, {1, 1, 0});
  add(f.zero(), one_m - ib2, +1, {1, 1, 0});
  return out;
}

}  // namespace betamatch
