#include "betamatch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace betamatch {

namespace {

// bin index: least m with base^m * size >= 1, minus one
long log_bin(const FieldElement& size, const FieldElement& base,
             const NumberField& f) {
  FieldElement cur = size;
  long m = 0;
  while (compare(cur, f.one()) < 0) {
    cur = cur * base;
    ++m;
    if (m > 100000) throw Error("Internal", "log binning ran away");
  }
  return m - 1;
}

}  // namespace

SizeHistogram size_histogram(const SweepResult& result, const FieldElement& base) {
  if (result.matched.empty())
    throw Error("EmptySweep", "no matching intervals to bin");
  if (compare(base, result.field.one()) <= 0)
    throw Error("BadBase", "histogram base must exceed 1");
  SizeHistogram out;
  out.base = base;
  out.total = static_cast<long>(result.matched.size());

  // exact grouping
  std::vector<SizeHistogram::ExactBin> bins;
  for (const auto& m : result.matched) {
    bool found = false;
    for (auto& b : bins) {
      if (b.size == m.size) {
        ++b.count;
        found = true;
        break;
      }
    }
    if (!found) bins.push_back({m.size, 1});
  }
  std::sort(bins.begin(), bins.end(),
            [](const auto& a, const auto& b) { return compare(a.size, b.size) > 0; });
  out.exact = std::move(bins);

  // log bins
  for (const auto& m : result.matched) {
    long n = log_bin(m.size, base, result.field);
    if (n < 0) n = 0;  // sizes in (1/b, 1) land in bin 0
    if (out.log_counts.size() <= static_cast<size_t>(n))
      out.log_counts.resize(n + 1, 0);
    ++out.log_counts[n];
  }
  return out;
}

SizeHistogram size_histogram(const SweepResult& result) {
  return size_histogram(result, result.field.beta());
}

DimensionEstimate box_dimension_estimate(const SweepResult& result,
                                         const FieldElement& base,
                                         std::optional<int> fit_lo,
                                         std::optional<int> fit_hi) {
  SizeHistogram hist = size_histogram(result, base);
  int lo = fit_lo.value_or(2);
  int hi = fit_hi.value_or(result.depth - 2);
  auto [blo, bhi] = base.enclosure(Rat(1, 1) / (Rat(1) << 80));
  double b = mpq_get_d(blo.get_mpq_t());
  double logb = std::log(b);

  DimensionEstimate est;
  est.base = b;
  est.fit_lo = lo;
  est.fit_hi = hi;

  std::vector<std::pair<int, double>> pts;  // (n, log_b a_n)
  for (int n = lo; n <= hi && n < static_cast<int>(hist.log_counts.size()); ++n) {
    long a = hist.log_counts[n];
    if (a <= 0) continue;
    pts.emplace_back(n, std::log(static_cast<double>(a)) / logb);
  }
  if (pts.size() < 3)
    throw Error("InsufficientData", "fewer than 3 nonempty bins in the fit range");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [n, y] : pts) {
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
  }
  double len = static_cast<double>(pts.size());
  double slope = (len * sxy - sx * sy) / (len * sxx - sx * sx);
  double intercept = (sy - slope * sx) / len;
  est.value = slope;
  double ss = 0;
  double mn = 1e300, mx = -1e300;
  for (auto& [n, y] : pts) {
    double r = y - (slope * n + intercept);
    ss += r * r;
    double pn = y / n;
    est.per_n.emplace_back(n, pn);
    mn = std::min(mn, pn);
    mx = std::max(mx, pn);
  }
  est.residual = std::sqrt(ss / len);
  est.per_n_spread = mx - mn;
  if (!result.unresolved.empty())
    est.cover_estimate =
        std::log(static_cast<double>(result.unresolved.size())) / logb / result.depth;
  return est;
}

std::span<const long> a038199_prefix() {
  static const long kA038199[] = {1,   2,   6,    12,   30,   54,  126,
                                  240, 504, 990,  2046, 4020, 8190};
  return kA038199;
}

long totient(long n) {
  long r = 0;
  for (long k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++r;
  return r;
}

ReferenceReport reference_compare(std::span<const long> counts,
                                  std::span<const long> reference) {
  ReferenceReport rep;
  rep.observed.assign(counts.begin(), counts.end());
  rep.reference.assign(reference.begin(), reference.end());
  size_t upto = std::min(counts.size(), reference.size());
  size_t i = 0;
  while (i < upto && counts[i] == reference[i]) ++i;
  rep.match_length = static_cast<int>(i);
  if (i < upto) rep.first_mismatch = static_cast<int>(i);
  return rep;
}

ReferenceReport reference_compare(std::span<const long> counts, ReferenceKind kind) {
  if (kind == ReferenceKind::a038199)
    return reference_compare(counts, a038199_prefix());
  std::vector<long> tot;
  for (long n = 1; n <= static_cast<long>(counts.size()); ++n)
    tot.push_back(totient(n));
  return reference_compare(counts, tot);
}

double quadratic_dimension_formula(const NumberField& f) {
  if (f.degree() != 2)
    throw Error("NotQuadraticPisot", "field is not quadratic");
  // x^2 - kx +- d
  long k = -f.minpoly()[1].get_si();
  long d0 = f.minpoly()[0].get_si();
  long d = std::labs(d0);
  bool pisot = d0 > 0 ? (k > d + 1) : (k > d - 1);
  if (k < 1 || d < 1 || !pisot)
    throw Error("NotQuadraticPisot", "slope is not a quadratic Pisot of form x^2-kx+-d");
  auto [blo, bhi] = f.enclosure_within(Rat(1) / (Rat(1) << 120));
  double beta = mpq_get_d(blo.get_mpq_t());
  return std::log(static_cast<double>(d)) / std::log(beta);
}

}  // namespace betamatch
