#include "betamatch/dynamics.hpp"

#include <algorithm>
#include <functional>

namespace betamatch {

OneSidedPoint make_point(FieldElement value, Side side) {
  if (value.is_zero() && side == Side::minus)
    return {value.field().one(), Side::minus};
  if (side == Side::plus && value == value.field().one())
    return {value.field().zero(), Side::plus};
  return {std::move(value), side};
}

BranchData branch_data(const NumberField& f, const FieldElement& alpha) {
  if (alpha.sign() < 0 || (alpha - Rat(1)).sign() > 0)
    throw Error("AlphaOutOfRange", "alpha must lie in [0,1]");
  FieldElement s = f.beta() + alpha;
  long k = s.is_integer() ? s.as_rational().get_num().get_si() - 1 : s.floor_long();
  BranchData out;
  out.k = k;
  FieldElement inv_beta = f.beta().inverse();
  for (long i = 1; i <= k; ++i)
    out.boundaries.push_back((alpha * Rat(-1) + Rat(i)) * inv_beta);
  return out;
}

StepResult step(const NumberField& f, const FieldElement& alpha,
                const OneSidedPoint& p) {
  FieldElement y = f.beta() * p.value + alpha;
  if (y.is_integer()) {
    long j = y.as_rational().get_num().get_si();
    if (p.side == Side::plus)
      return {OneSidedPoint{f.zero(), Side::plus}, j};
    return {OneSidedPoint{f.one(), Side::minus}, j - 1};
  }
  long digit = y.floor_long();
  return {make_point(y - Rat(digit), p.side), digit};
}

std::pair<OrbitRecord, OrbitRecord> critical_orbits(const NumberField& f,
                                                    const FieldElement& alpha,
                                                    int steps) {
  OrbitRecord plus{{OneSidedPoint{f.zero(), Side::plus}}, {}, alpha};
  OrbitRecord minus{{OneSidedPoint{f.one(), Side::minus}}, {}, alpha};
  for (int i = 0; i < steps; ++i) {
    auto sp = step(f, alpha, plus.points.back());
    plus.points.push_back(sp.point);
    plus.digits.push_back(sp.digit);
    auto sm = step(f, alpha, minus.points.back());
    minus.points.push_back(sm.point);
    minus.digits.push_back(sm.digit);
  }
  return {std::move(plus), std::move(minus)};
}

FieldElement closed_form_value(const NumberField& f, const FieldElement& alpha,
                               int start, std::span<const long> digits, int n) {
  FieldElement beta = f.beta();
  // geometric coefficient beta^{n-1} + ... + 1
  FieldElement coeff = f.zero();
  for (int i = 0; i < n; ++i) coeff = coeff * beta + Rat(1);
  FieldElement v = coeff * alpha + f.beta_power(n) * Rat(start);
  FieldElement acc = f.zero();
  for (int i = 0; i < n; ++i) acc = acc * beta + Rat(digits[i]);
  return v - acc;
}

bool circle_equal(const OneSidedPoint& a, const OneSidedPoint& b) {
  if (a.value == b.value) return true;
  FieldElement d = a.value - b.value;
  return d == a.value.field().one() || d == -a.value.field().one();
}

MatchingOutcome matching_index(const NumberField& f, const FieldElement& alpha,
                               int bound) {
  if (bound < 1) throw Error("BadBound", "bound must be >= 1");
  if (alpha.sign() < 0 || (alpha - Rat(1)).sign() > 0)
    throw Error("AlphaOutOfRange", "alpha must lie in [0,1]");
  MatchingOutcome out;
  out.bound = bound;
  OneSidedPoint pp{f.zero(), Side::plus};
  OneSidedPoint pm{f.one(), Side::minus};
  FieldElement beta = f.beta();
  std::optional<int> by_gateway;  // n+1 where beta*D_n first integral
  for (int n = 0; n <= bound; ++n) {
    FieldElement D = pm.value - pp.value;
    out.difference_trace.push_back(D);
    if (n >= 1 && circle_equal(pm, pp)) {
      if (!by_gateway || *by_gateway != n)
        throw Error("Internal", "matching criteria disagree");
      out.matched_at = n;
      return out;
    }
    if (!by_gateway && (beta * D).is_integer()) by_gateway = n + 1;
    if (!by_gateway && n >= 1) {
      // seam rule: an orbit value exactly on 0~1 has both branch images;
      // matching holds when the alternative representative is a gateway
      bool plus_on_seam = pp.value.is_zero();
      bool minus_on_seam = pm.value == f.one();
      if (plus_on_seam != minus_on_seam) {
        FieldElement alt = D - Rat(1);
        if (!alt.is_zero() && (beta * alt).is_integer()) {
          if (n + 1 <= bound) {
            out.matched_at = n + 1;
            return out;
          }
        }
      }
    }
    if (n == bound) break;
    pp = step(f, alpha, pp).point;
    pm = step(f, alpha, pm).point;
  }
  if (by_gateway && *by_gateway <= bound)
    throw Error("Internal", "matching criteria disagree");
  return out;
}

MarkovOutcome markov_test(const NumberField& f, const FieldElement& alpha,
                          int bound) {
  if (bound < 1) throw Error("BadBound", "bound must be >= 1");
  auto detect = [&](OneSidedPoint start) -> std::pair<std::optional<OrbitCycle>,
                                                      std::vector<OneSidedPoint>> {
    std::vector<OneSidedPoint> seen{start};
    OneSidedPoint p = start;
    for (int n = 1; n <= bound; ++n) {
      p = step(f, alpha, p).point;
      for (size_t i = 0; i < seen.size(); ++i) {
        if (seen[i].side == p.side && seen[i].value == p.value) {
          OrbitCycle c{static_cast<int>(i), static_cast<int>(n - i)};
          std::vector<OneSidedPoint> cyc(seen.begin() + i, seen.end());
          return {c, cyc};
        }
      }
      seen.push_back(p);
    }
    return {std::nullopt, {}};
  };
  auto [cp, cyc_p] = detect(OneSidedPoint{f.zero(), Side::plus});
  auto [cm, cyc_m] = detect(OneSidedPoint{f.one(), Side::minus});
  MarkovOutcome out;
  out.bound = bound;
  if (cp && cm) {
    out.cycles = std::make_pair(*cp, *cm);
    out.plus_cycle = std::move(cyc_p);
    out.minus_cycle = std::move(cyc_m);
  }
  return out;
}

StepFunction density(const NumberField& f, const FieldElement& alpha,
                     int truncation, DensityIndexing indexing) {
  if (truncation < 1) throw Error("BadBound", "truncation must be >= 1");
  auto [plus, minus] = critical_orbits(f, alpha, truncation);
  int n0 = indexing == DensityIndexing::from_zero ? 0 : 1;

  // weighted points: (value, +-beta^-n)
  FieldElement inv_beta = f.beta().inverse();
  std::vector<std::pair<FieldElement, FieldElement>> terms;
  FieldElement w = f.one();
  for (int i = 0; i < n0; ++i) w = w * inv_beta;
  for (int n = n0; n <= truncation; ++n) {
    terms.emplace_back(minus.points[n].value, w);
    terms.emplace_back(plus.points[n].value, -w);
    w = w * inv_beta;
  }

  // breakpoints: orbit values interior to (0,1)
  std::vector<FieldElement> bps;
  for (auto& [v, weight] : terms)
    if (!v.is_zero() && v != f.one()) bps.push_back(v);
  std::sort(bps.begin(), bps.end(),
            [](const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; });
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  // cell values: on (b_i, b_{i+1}), h = sum of weights of points <= b_i
  std::vector<FieldElement> cells;
  std::vector<FieldElement> edges;
  edges.push_back(f.zero());
  for (auto& b : bps) edges.push_back(b);
  edges.push_back(f.one());
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    FieldElement v = f.zero();
    for (auto& [pt, weight] : terms)
      if (compare(pt, edges[i]) <= 0) v = v + weight;
    cells.push_back(v);
  }

  // integral and normalization
  FieldElement integral = f.zero();
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    integral = integral + cells[i] * (edges[i + 1] - edges[i]);
  StepFunction out;
  out.raw_integral = integral;
  if (integral.is_zero())
    throw Error("DegenerateDensity", "truncated density integrates to zero");
  for (auto& c : cells) c = c / integral;

  // merge cells with equal values (cancelled tails leave zero jumps)
  out.values.push_back(cells[0]);
  for (size_t i = 1; i < cells.size(); ++i) {
    if (cells[i] == out.values.back()) continue;
    out.breakpoints.push_back(bps[i - 1]);
    out.values.push_back(cells[i]);
  }
  for (auto& v : out.values)
    if (v.sign() < 0) out.nonnegative = false;
  return out;
}

std::vector<FieldElement> difference_set(const NumberField& f,
                                         std::span<const FieldElement> alphas,
                                         int depth) {
  std::vector<FieldElement> seen;
  auto insert = [&](FieldElement v) {
    for (auto& s : seen)
      if (s == v) return;
    seen.push_back(std::move(v));
  };
  for (const auto& alpha : alphas) {
    OneSidedPoint pp{f.zero(), Side::plus};
    OneSidedPoint pm{f.one(), Side::minus};
    for (int n = 0; n <= depth; ++n) {
      FieldElement D = (pm.value - pp.value).abs();
      if (D == f.one()) D = f.zero();  // circle representative
      insert(std::move(D));
      if (n == depth) break;
      pp = step(f, alpha, pp).point;
      pm = step(f, alpha, pm).point;
    }
  }
  std::sort(seen.begin(), seen.end(),
            [](const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; });
  return seen;
}

}  // namespace betamatch
