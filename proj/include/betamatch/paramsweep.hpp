#pragma once

#include <vector>

#include "betamatch/dynamics.hpp"
#include "betamatch/numberfield.hpp"

namespace betamatch {

/// A critical orbit as an affine function of alpha: value(alpha) = c*alpha + r.
/// Both orbits of one piece share the same c = (beta^n - 1)/(beta - 1).
struct AffineOrbit {
  FieldElement c, r;
  Side side;
};

/// A half-open parameter interval [lo, hi) on which both orbit digit
/// histories are constant. The digit data describes every alpha in the open
/// interior and, for the plus orbit, the left endpoint as well; at a left
/// endpoint produced by an exact minus-orbit boundary hit the piece carries
/// the right-limit germ.
struct AlphaPiece {
  FieldElement lo, hi;
  bool lo_closed = true, hi_closed = false;
  int n = 0;
  AffineOrbit plus, minus;
  std::vector<long> digits_plus, digits_minus;
};

struct MatchingInterval {
  FieldElement lo, hi;
  bool lo_closed = true, hi_closed = false;
  int index = 0;          // matching index m
  FieldElement size;      // hi - lo, exact
  std::vector<long> digits_plus, digits_minus;  // the m-1 digits before matching
};

struct SweepResult {
  NumberField field;
  int depth = 0;
  FieldElement region_lo, region_hi;
  std::vector<MatchingInterval> matched;  // sorted by lo, pairwise disjoint
  std::vector<AlphaPiece> unresolved;     // pieces alive at `depth`, sorted by lo
};

inline constexpr int kDefaultDepthCap = 20;
inline constexpr size_t kPieceGuard = 4'000'000;

/// Exact enumeration of matching intervals over [0,1) by breadth-first
/// subdivision. Deterministic for any `jobs`; throws DepthTooLarge above
/// `depth_cap` and ResourceGuard if the live piece count explodes.
SweepResult sweep(const NumberField& f, int depth, int jobs = 1,
                  int depth_cap = kDefaultDepthCap);

/// Sweep over a sub-region [lo, hi) of [0, 1).
SweepResult sweep_region(const NumberField& f, FieldElement lo, FieldElement hi,
                         int depth, int jobs = 1, int depth_cap = kDefaultDepthCap);

/// Continues a sweep on the unresolved pieces only.
SweepResult refine(const SweepResult& result, int extra_depth, int jobs = 1,
                   int depth_cap = kDefaultDepthCap);

/// (beta^n - 1)/(beta - 1), exactly.
FieldElement alpha_coefficient(const NumberField& f, int n);

/// All interior parameters where either orbit's affine value crosses a branch
/// boundary (equivalently, where a branch count changes), sorted increasing.
std::vector<FieldElement> piece_breakpoints(const NumberField& f,
                                            const AlphaPiece& piece);

}  // namespace betamatch
