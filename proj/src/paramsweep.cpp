#include "betamatch/paramsweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace betamatch {

namespace {

struct YLine {
  FieldElement c, r;  // y(alpha) = c*alpha + r, strictly increasing (c >= 1)
};

// Integer crossings of y strictly inside (lo, hi), appended as alpha values.
void crossings(const NumberField& f, const YLine& y, const FieldElement& lo,
               const FieldElement& hi, std::vector<FieldElement>& out) {
  FieldElement ylo = y.c * lo + y.r;
  FieldElement yhi = y.c * hi + y.r;
  long j = ylo.is_integer() ? ylo.as_rational().get_num().get_si() + 1
                            : ylo.floor_long() + 1;
  for (;; ++j) {
    if ((yhi - Rat(j)).sign() <= 0) break;
    out.push_back((y.r * Rat(-1) + Rat(j)) / y.c);
  }
}

long digit_at(const YLine& y, const FieldElement& alpha) {
  FieldElement v = y.c * alpha + y.r;
  if (v.is_integer()) return v.as_rational().get_num().get_si();
  return v.floor_long();
}

struct StepOutput {
  std::vector<AlphaPiece> children;
  std::vector<MatchingInterval> matched;
};

// Match test and, if alive, one subdivision-and-advance step.
StepOutput process_piece(const NumberField& f, const AlphaPiece& P,
                         bool advance) {
  StepOutput out;
  FieldElement beta = f.beta();
  FieldElement D = P.minus.r - P.plus.r;
  if ((beta * D).is_integer()) {
    MatchingInterval m;
    m.lo = P.lo;
    m.hi = P.hi;
    m.lo_closed = P.lo_closed;
    m.hi_closed = P.hi_closed;
    m.index = P.n + 1;
    m.size = P.hi - P.lo;
    m.digits_plus = P.digits_plus;
    m.digits_minus = P.digits_minus;
    out.matched.push_back(std::move(m));
    return out;
  }
  if (!advance) {
    out.children.push_back(P);
    return out;
  }

  YLine yp{beta * P.plus.c + Rat(1), beta * P.plus.r};
  YLine ym{beta * P.minus.c + Rat(1), beta * P.minus.r};
  std::vector<FieldElement> cuts;
  crossings(f, yp, P.lo, P.hi, cuts);
  crossings(f, ym, P.lo, P.hi, cuts);
  std::sort(cuts.begin(), cuts.end(), [](const FieldElement& a, const FieldElement& b) {
    return compare(a, b) < 0;
  });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<FieldElement> edges;
  edges.reserve(cuts.size() + 2);
  edges.push_back(P.lo);
  for (auto& c : cuts) edges.push_back(std::move(c));
  edges.push_back(P.hi);

  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    AlphaPiece child;
    child.lo = edges[i];
    child.hi = edges[i + 1];
    child.n = P.n + 1;
    long dp = digit_at(yp, child.lo);
    long dm = digit_at(ym, child.lo);
    child.plus = {yp.c, yp.r - Rat(dp), Side::plus};
    child.minus = {ym.c, ym.r - Rat(dm), Side::minus};
    child.digits_plus = P.digits_plus;
    child.digits_plus.push_back(dp);
    child.digits_minus = P.digits_minus;
    child.digits_minus.push_back(dm);
    out.children.push_back(std::move(child));
  }
  return out;
}

void run_levels(const NumberField& f, std::vector<AlphaPiece>& live,
                std::vector<MatchingInterval>& matched, int target_depth,
                int jobs) {
  while (true) {
    if (live.empty()) return;
    int n = live.front().n;
    bool advance = n < target_depth;
    std::vector<StepOutput> results(live.size());
    if (jobs <= 1 || live.size() < 64) {
      for (size_t i = 0; i < live.size(); ++i)
        results[i] = process_piece(f, live[i], advance);
    } else {
      std::atomic<size_t> next{0};
      auto worker = [&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= live.size()) return;
          results[i] = process_piece(f, live[i], advance);
        }
      };
      std::vector<std::thread> pool;
      int count = std::min<int>(jobs, static_cast<int>(live.size()));
      pool.reserve(count);
      for (int t = 0; t < count; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    std::vector<AlphaPiece> next_live;
    size_t total = 0;
    for (auto& r : results) total += r.children.size();
    if (total > kPieceGuard)
      throw Error("ResourceGuard", "live piece count exceeds the memory guard");
    next_live.reserve(total);
    for (auto& r : results) {
      for (auto& m : r.matched) matched.push_back(std::move(m));
      for (auto& c : r.children) next_live.push_back(std::move(c));
    }
    live = std::move(next_live);
    if (!advance) return;
  }
}

}  // namespace

SweepResult sweep_region(const NumberField& f, FieldElement lo, FieldElement hi,
                         int depth, int jobs, int depth_cap) {
  if (depth < 1) throw Error("BadBound", "depth must be >= 1");
  if (depth > depth_cap)
    throw Error("DepthTooLarge", "requested depth exceeds the configured cap");
  if (lo.sign() < 0 || compare(hi, f.one()) > 0 || compare(lo, hi) >= 0)
    throw Error("AlphaOutOfRange", "sweep region must satisfy 0 <= lo < hi <= 1");
  AlphaPiece seed;
  seed.lo = lo;
  seed.hi = hi;
  seed.n = 0;
  seed.plus = {f.zero(), f.zero(), Side::plus};
  seed.minus = {f.zero(), f.one(), Side::minus};
  SweepResult out{f, depth, lo, hi, {}, {}};
  std::vector<AlphaPiece> live{std::move(seed)};
  run_levels(f, live, out.matched, depth, jobs);
  out.unresolved = std::move(live);
  return out;
}

SweepResult sweep(const NumberField& f, int depth, int jobs, int depth_cap) {
  return sweep_region(f, f.zero(), f.one(), depth, jobs, depth_cap);
}

SweepResult refine(const SweepResult& result, int extra_depth, int jobs,
                   int depth_cap) {
  if (extra_depth < 0) throw Error("BadBound", "extra depth must be >= 0");
  int target = result.depth + extra_depth;
  if (target > depth_cap)
    throw Error("DepthTooLarge", "requested depth exceeds the configured cap");
  SweepResult out{result.field, target, result.region_lo, result.region_hi, {}, {}};
  std::vector<AlphaPiece> live = result.unresolved;
  std::vector<MatchingInterval> fresh;
  run_levels(result.field, live, fresh, target, jobs);
  // merge two lo-sorted runs
  out.matched.reserve(result.matched.size() + fresh.size());
  size_t i = 0, j = 0;
  while (i < result.matched.size() && j < fresh.size()) {
    if (compare(result.matched[i].lo, fresh[j].lo) < 0)
      out.matched.push_back(result.matched[i++]);
    else
      out.matched.push_back(fresh[j++]);
  }
  for (; i < result.matched.size(); ++i) out.matched.push_back(result.matched[i]);
  for (; j < fresh.size(); ++j) out.matched.push_back(fresh[j]);
  out.unresolved = std::move(live);
  return out;
}

FieldElement alpha_coefficient(const NumberField& f, int n) {
  if (n < 0) throw Error("BadBound", "n must be >= 0");
  FieldElement beta = f.beta();
  FieldElement c = f.zero();
  for (int i = 0; i < n; ++i) c = c * beta + Rat(1);
  return c;
}

std::vector<FieldElement> piece_breakpoints(const NumberField& f,
                                            const AlphaPiece& piece) {
  FieldElement beta = f.beta();
  YLine yp{beta * piece.plus.c + Rat(1), beta * piece.plus.r};
  YLine ym{beta * piece.minus.c + Rat(1), beta * piece.minus.r};
  std::vector<FieldElement> cuts;
  crossings(f, yp, piece.lo, piece.hi, cuts);
  crossings(f, ym, piece.lo, piece.hi, cuts);
  std::sort(cuts.begin(), cuts.end(), [](const FieldElement& a, const FieldElement& b) {
    return compare(a, b) < 0;
  });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace betamatch
