#pragma once

#include <optional>
#include <span>
#include <vector>

#include "betamatch/paramsweep.hpp"

namespace betamatch {

struct SizeHistogram {
  struct ExactBin {
    FieldElement size;
    long count;
  };
  std::vector<ExactBin> exact;   // grouped by exact size, sorted decreasing
  std::vector<long> log_counts;  // a_n = #{J : base^-(n+1) <= |J| < base^-n}
  FieldElement base;
  long total = 0;
};

/// Throws EmptySweep when the sweep found no matching interval.
SizeHistogram size_histogram(const SweepResult& result, const FieldElement& base);
/// Default base b = beta.
SizeHistogram size_histogram(const SweepResult& result);

struct DimensionEstimate {
  double value = 0;               // least-squares slope of log_b a_n against n
  double base = 0;                // numeric value of the binning base
  int fit_lo = 0, fit_hi = 0;
  std::vector<std::pair<int, double>> per_n;  // (n, (1/n) log_b a_n)
  double residual = 0;            // rms of the fit residuals
  double per_n_spread = 0;        // max-min of per-n values over the fit range
  double cover_estimate = 0;      // log_b(#unresolved)/depth
};

/// Fit range endpoints are inclusive; pass nullopt to use the default
/// [2, depth-2] completeness horizon. Throws InsufficientData with fewer
/// than 3 nonempty bins in range.
DimensionEstimate box_dimension_estimate(const SweepResult& result,
                                         const FieldElement& base,
                                         std::optional<int> fit_lo = {},
                                         std::optional<int> fit_hi = {});

enum class ReferenceKind { totient, a038199 };

/// The 13 A038199 terms embedded as reference data.
std::span<const long> a038199_prefix();
long totient(long n);

struct ReferenceReport {
  std::vector<long> observed, reference;
  int match_length = 0;                 // common prefix length
  std::optional<int> first_mismatch;    // index, or nullopt if full prefix agrees
};

ReferenceReport reference_compare(std::span<const long> counts, ReferenceKind kind);
ReferenceReport reference_compare(std::span<const long> counts,
                                  std::span<const long> reference);

/// log d / log beta for quadratic Pisot x^2 - kx +- d; 12-digit decimal value.
/// Throws NotQuadraticPisot.
double quadratic_dimension_formula(const NumberField& f);

}  // namespace betamatch
