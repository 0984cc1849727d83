#pragma once

#include <optional>
#include <span>
#include <vector>

#include "betamatch/numberfield.hpp"

namespace betamatch {

enum class Side { plus, minus };

inline const char* side_name(Side s) { return s == Side::plus ? "plus" : "minus"; }

/// A circle point in [0,1] with a side tag resolving digit choice at exact
/// branch boundaries. Value 1 is kept for left limits: (0, minus) normalizes
/// to (1, minus) and (1, plus) to (0, plus).
struct OneSidedPoint {
  FieldElement value;
  Side side;
};

OneSidedPoint make_point(FieldElement value, Side side);

struct BranchData {
  long k;                               // largest k with (k - alpha)/beta < 1
  std::vector<FieldElement> boundaries; // (i - alpha)/beta, i = 1..k
};

/// Throws AlphaOutOfRange unless 0 <= alpha <= 1.
BranchData branch_data(const NumberField& f, const FieldElement& alpha);

struct StepResult {
  OneSidedPoint point;
  long digit;
};

/// One application of x -> beta x + alpha (mod 1), side-resolved at exact
/// branch boundaries.
StepResult step(const NumberField& f, const FieldElement& alpha,
                const OneSidedPoint& p);

struct OrbitRecord {
  std::vector<OneSidedPoint> points;  // points[0] is the start
  std::vector<long> digits;           // digits[i] taken moving to points[i+1]
  FieldElement alpha;
};

/// Orbits of 0+ and 0- (the latter starting at (1, minus)) for n steps.
std::pair<OrbitRecord, OrbitRecord> critical_orbits(const NumberField& f,
                                                    const FieldElement& alpha,
                                                    int steps);

/// Closed-form orbit value rebuilt from recorded digits:
/// (beta^{n-1}+...+1) alpha + start*beta^n - sum digits[i] beta^{n-1-i}.
FieldElement closed_form_value(const NumberField& f, const FieldElement& alpha,
                               int start, std::span<const long> digits, int n);

struct MatchingOutcome {
  std::optional<int> matched_at;            // least m >= 1 with circle equality
  int bound;                                // N
  std::vector<FieldElement> difference_trace;  // D_n = T^n(0-) - T^n(0+), n = 0..
};

/// Runs both the circle-equality criterion and the "beta * D_n is an integer"
/// criterion and checks they agree.
MatchingOutcome matching_index(const NumberField& f, const FieldElement& alpha,
                               int bound);

struct OrbitCycle {
  int preperiod = 0;
  int period = 0;
};

struct MarkovOutcome {
  std::optional<std::pair<OrbitCycle, OrbitCycle>> cycles;  // (plus, minus)
  int bound;
  // cycle point sets, filled when detected
  std::vector<OneSidedPoint> plus_cycle, minus_cycle;
};

/// Detects exact eventual periodicity of both critical orbits within `bound`.
MarkovOutcome markov_test(const NumberField& f, const FieldElement& alpha,
                          int bound);

struct StepFunction {
  std::vector<FieldElement> breakpoints;  // strictly increasing, interior to (0,1)
  std::vector<FieldElement> values;       // one per cell, breakpoints.size()+1
  bool nonnegative = true;                // false flags NonPositiveDensity
  FieldElement raw_integral;              // integral before normalization
};

enum class DensityIndexing { from_zero, from_one };

/// Truncated invariant density: the signed step function
/// sum_{T^n(0-) < x} beta^-n - sum_{T^n(0+) < x} beta^-n, normalized to
/// integral 1, with zero-jump breakpoints merged away.
StepFunction density(const NumberField& f, const FieldElement& alpha,
                     int truncation,
                     DensityIndexing indexing = DensityIndexing::from_zero);

/// Deduplicated |D_n| values over the given alphas (circle-normalized:
/// a difference of 1 counts as 0), sorted increasing.
std::vector<FieldElement> difference_set(const NumberField& f,
                                         std::span<const FieldElement> alphas,
                                         int depth);

/// Circle equality of two points (values mod 1; side ignored).
bool circle_equal(const OneSidedPoint& a, const OneSidedPoint& b);

}  // namespace betamatch
