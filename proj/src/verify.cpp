#include "betamatch/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "betamatch/builtin_fields.hpp"
#include "betamatch/multinacci.hpp"
#include "betamatch/quadratic.hpp"
#include "betamatch/stats.hpp"
#include "betamatch/transitions.hpp"

namespace betamatch {

namespace {

NumberField field(const std::string& name) { return *builtin_field(name); }

// rational strictly below the value of v
Rat lower_rational(const FieldElement& v) {
  return v.enclosure(Rat(1, 1000000000)).first;
}
// rational strictly above
Rat upper_rational(const FieldElement& v) {
  return v.enclosure(Rat(1, 1000000000)).second;
}

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

// ---- criterion bodies ----

CriterionResult c1_quadratic_immediate(const VerifyOptions& opt) {
  Check c;
  auto f = field("k5d3");
  auto res = sweep(f, 3, opt.jobs);
  FieldElement lo = -f.beta() + Rat(5);  // k - beta
  bool found = false;
  for (const auto& m : res.matched)
    if (m.lo == lo && m.hi == f.one() && m.index == 2) found = true;
  c.expect(found, "interval [k-beta,1) with index 2 not reported");
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> dist(1, 9999);
  for (int i = 0; i < 20; ++i) {
    Rat a = Rat(7, 10) + Rat(3, 10) * Rat(dist(rng), 10000);
    auto alpha = f.from_rational(a);
    c.expect(compare(alpha, lo) > 0, "sample below k-beta");
    auto mi = matching_index(f, alpha, 10);
    c.expect(mi.matched_at == 2, "matching_index != 2 at alpha=" + rational_string(a));
  }
  return {1, "quadratic immediate matching (x^2-5x+3)", true, c.ok, c.detail.str(), 0};
}

CriterionResult c2_multinacci_prop(const VerifyOptions&) {
  Check c;
  const std::pair<const char*, int> cases[] = {
      {"golden", 2}, {"tribonacci", 3}, {"tetrabonacci", 4}};
  for (auto [name, k] : cases) {
    auto f = field(name);
    Rat lb = lower_rational(f.beta_power(k).inverse());
    for (int i = 0; i < 50; ++i) {
      Rat a = lb * Rat(i, 50);
      auto mi = matching_index(f, f.from_rational(a), 2 * k + 5);
      c.expect(mi.matched_at == k, std::string(name) + ": index != k at alpha=" +
                                       rational_string(a));
    }
  }
  return {2, "multinacci two-branch matching after k steps", true, c.ok,
          c.detail.str(), 0};
}

CriterionResult c3_tribonacci_window(const VerifyOptions&) {
  Check c;
  auto f = field("tribonacci");
  FieldElement inv_b = f.beta().inverse();
  FieldElement left = inv_b;
  FieldElement right = inv_b * inv_b + inv_b * inv_b * inv_b * Rat(2);
  auto check_alpha = [&](const FieldElement& alpha, const std::string& label) {
    auto mi = matching_index(f, alpha, 12);
    c.expect(mi.matched_at == 4, "index != 4 at " + label);
  };
  check_alpha(left, "left endpoint");
  check_alpha(right, "right endpoint");
  Rat lo = upper_rational(left), hi = lower_rational(right);
  for (int i = 0; i < 48; ++i) {
    Rat a = lo + (hi - lo) * Rat(i, 47);
    check_alpha(f.from_rational(a), rational_string(a));
  }
  return {3, "tribonacci four-step window incl. endpoints", true, c.ok,
          c.detail.str(), 0};
}

CriterionResult c4_salem(const VerifyOptions&) {
  Check c;
  auto f = field("salem4");
  FieldElement beta = f.beta();
  FieldElement b4p1 = f.beta_power(4) + Rat(1);
  FieldElement win_lo = b4p1.inverse();
  FieldElement win_hi = beta / b4p1;
  FieldElement inv_b = beta.inverse();
  for (Rat a : {Rat(3, 20), Rat(4, 25), Rat(17, 100)}) {
    auto alpha = f.from_rational(a);
    c.expect(compare(alpha, win_lo) > 0 && compare(alpha, win_hi) < 0,
             rational_string(a) + " outside the window");
    auto mi = matching_index(f, alpha, 12);
    c.expect(mi.matched_at == 4, "index != 4 at " + rational_string(a));
    auto [plus, minus] = critical_orbits(f, alpha, 3);
    FieldElement bp1a = (beta + Rat(1)) * alpha;
    FieldElement b2b1a = (beta * beta + beta + Rat(1)) * alpha;
    c.expect(plus.points[1].value == alpha, "plus step 1");
    c.expect(plus.points[2].value == bp1a, "plus step 2");
    c.expect(plus.points[3].value == b2b1a, "plus step 3");
    c.expect(minus.points[1].value == beta + alpha - Rat(1), "minus step 1");
    c.expect(minus.points[2].value == bp1a + inv_b - inv_b * inv_b, "minus step 2");
    c.expect(minus.points[3].value == b2b1a - inv_b, "minus step 3");
  }
  return {4, "Salem quartic window: orbits and four-step matching", true, c.ok,
          c.detail.str(), 0};
}

CriterionResult c5_figure_triple(const VerifyOptions&) {
  Check c;
  {
    auto f = field("salem4");
    auto mk = markov_test(f, f.zero(), 50);
    c.expect(mk.cycles.has_value(), "salem4 alpha=0: Markov not detected");
    auto mi = matching_index(f, f.zero(), 50);
    c.expect(!mi.matched_at, "salem4 alpha=0: unexpected matching");
  }
  {
    auto f = field("golden");
    auto alpha = f.beta() * Rat(2) - Rat(3);  // 1/beta^3
    auto mi = matching_index(f, alpha, 50);
    c.expect(mi.matched_at == 2, "golden 1/beta^3: index != 2");
    auto mk = markov_test(f, alpha, 50);
    c.expect(mk.cycles.has_value(), "golden 1/beta^3: Markov not detected");
    if (mk.cycles) {
      c.expect(mk.cycles->first.period == 2 && mk.cycles->second.period == 2,
               "golden 1/beta^3: cycles are not 2-periodic");
      // both orbits share one cycle (as circle points)
      bool shared = mk.plus_cycle.size() == mk.minus_cycle.size();
      for (const auto& p : mk.plus_cycle) {
        bool hit = false;
        for (const auto& q : mk.minus_cycle)
          if (circle_equal(p, q)) hit = true;
        shared = shared && hit;
      }
      c.expect(shared, "golden 1/beta^3: orbits do not share the 2-cycle");
    }
  }
  {
    auto f = field("silver");
    auto mi = matching_index(f, f.from_rational(Rat(16, 113)), 50);
    c.expect(mi.matched_at == 2, "silver 16/113: index != 2");
  }
  return {5, "figure triple: Markov/matching combinations", true, c.ok,
          c.detail.str(), 0};
}

CriterionResult c6_totient(const VerifyOptions& opt) {
  Check c;
  auto f = field("golden");
  auto res = sweep(f, 13, opt.jobs);
  auto hist = size_histogram(res);
  std::vector<long> counts;
  for (const auto& b : hist.exact) counts.push_back(b.count);
  auto rep = reference_compare(counts, ReferenceKind::totient);
  c.expect(rep.match_length >= 8,
           "first 8 exact-size counts do not match phi(1..8)");
  std::ostringstream note;
  note << "matched " << rep.match_length << " totient terms";
  if (rep.match_length < 10) note << " (expected 10)";
  if (!c.ok) note << "; " << c.detail.str();
  return {6, "golden exact-size counts = Euler phi", true, c.ok, note.str(), 0};
}

CriterionResult c7_a038199(const VerifyOptions& opt, const SweepResult& res14) {
  Check c;
  auto hist = size_histogram(res14);
  size_t first = 0;
  while (first < hist.log_counts.size() && hist.log_counts[first] == 0) ++first;
  std::vector<long> counts(hist.log_counts.begin() + first, hist.log_counts.end());
  auto rep = reference_compare(counts, ReferenceKind::a038199);
  c.expect(rep.match_length >= 6, "first 6 log-binned counts do not match A038199");
  std::ostringstream note;
  note << "matched " << rep.match_length << " A038199 terms";
  if (rep.match_length < 8) note << " (expected 8)";
  if (!c.ok) note << "; " << c.detail.str();
  (void)opt;
  return {7, "2+sqrt(2) log-binned counts = A038199", true, c.ok, note.str(), 0};
}

CriterionResult c8_dimensions(const VerifyOptions& opt, const SweepResult& res14,
                              std::vector<CriterionResult>& extra) {
  Check c;
  auto est = box_dimension_estimate(res14, res14.field.beta(), 5, 12);
  double target = quadratic_dimension_formula(res14.field);
  c.expect(std::abs(est.value - target) <= 0.03,
           "2+sqrt2 estimate " + std::to_string(est.value) + " off target");
  auto tri = field("tribonacci");
  auto tres = sweep(tri, 16, opt.jobs);
  auto test = box_dimension_estimate(tres, tri.beta(), 4, 14);
  c.expect(std::abs(test.value - 0.66) <= 0.08,
           "tribonacci estimate " + std::to_string(test.value) + " off 0.66");
  std::ostringstream note;
  note << "2+sqrt2: " << est.value << " (target " << target << "); tribonacci: "
       << test.value << " (target 0.66)";
  if (!c.ok) note << "; " << c.detail.str();

  // reported, not gated
  for (auto [name, depth, target_v] :
       {std::tuple<const char*, int, double>{"tetrabonacci", 14, 0.76},
        std::tuple<const char*, int, double>{"plastic", 20, 0.93}}) {
    auto f2 = field(name);
    auto r2 = sweep(f2, depth, opt.jobs);
    auto e2 = box_dimension_estimate(r2, f2.beta(), 3, depth - 2);
    std::ostringstream n2;
    n2 << "estimate " << e2.value << " vs " << target_v << " at depth " << depth
       << " (best effort, desk scale)";
    extra.push_back({80, std::string(name) + " dimension (reported)", false, true,
                     n2.str(), 0});
  }
  return {8, "box-dimension estimates within tolerance", true, c.ok, note.str(), 0};
}

CriterionResult c9_nonpisot(const VerifyOptions& opt) {
  Check c;
  auto f = NumberField::make({-3, -1, 1}, Rat(2), Rat(5, 2));
  auto res = sweep(f, 12, opt.jobs);
  c.expect(res.matched.empty(), "non-Pisot slope produced matching intervals");
  std::ostringstream note;
  note << res.unresolved.size() << " unresolved pieces, 0 matched";
  if (!c.ok) note << "; " << c.detail.str();
  return {9, "non-Pisot exclusion (x^2-x-3)", true, c.ok, note.str(), 0};
}

struct TableRow {
  int sign;              // source sign
  std::array<int, 3> s;  // source bits
  int label;             // unsigned offset
  int tsign;             // 0: matching
  std::array<int, 3> t;
};

CriterionResult c10_graphs(const VerifyOptions& opt) {
  Check c;
  {
    auto f = field("tribonacci");
    auto res = sweep(f, 10, opt.jobs);
    auto g = build_graph(res);
    c.expect(g.nodes.size() == 11, "tribonacci: live node count != 11");
    // classify nodes by code
    auto code_str = [&](const FieldElement& v) {
      auto code = code_of_difference(f, v);
      std::string s = code.sign < 0 ? "-" : "+";
      for (int b : code.bits) s += static_cast<char>('0' + b);
      return s;
    };
    std::vector<std::string> want_nodes = {"+111", "+001", "-001", "+010", "-010",
                                           "+011", "-011", "+101", "-101", "+110",
                                           "-110"};
    for (const auto& w : want_nodes) {
      bool found = false;
      for (const auto& v : g.nodes)
        if (code_str(v) == w) found = true;
      c.expect(found, "missing node " + w);
    }
    // the fiber table, signed: source sign epsilon gives label epsilon*|o|
    std::vector<TableRow> table;
    const TableRow base[] = {
        {+1, {0, 0, 1}, 0, +1, {0, 1, 0}}, {+1, {0, 0, 1}, 1, -1, {1, 0, 1}},
        {+1, {0, 1, 0}, 0, 0, {1, 0, 0}},  {+1, {0, 1, 0}, 1, -1, {0, 1, 1}},
        {+1, {0, 1, 1}, 0, +1, {1, 1, 0}}, {+1, {0, 1, 1}, 1, -1, {0, 0, 1}},
        {+1, {1, 0, 1}, 1, +1, {0, 1, 0}}, {+1, {1, 0, 1}, 2, -1, {1, 0, 1}},
        {+1, {1, 1, 0}, 1, 0, {1, 0, 0}},  {+1, {1, 1, 0}, 2, -1, {0, 1, 1}},
    };
    for (const TableRow& r : base) {
      table.push_back(r);
      TableRow m = r;  // mirrored signs
      m.sign = -1;
      if (m.tsign != 0) m.tsign = -m.tsign;
      table.push_back(m);
    }
    int fiber_edges = 0;
    for (const auto& e : g.edges) {
      auto from = code_of_difference(f, g.nodes[e.from]);
      if (from.bits == std::vector<int>{1, 1, 1}) {  // start edges checked below
        continue;
      }
      ++fiber_edges;
      bool in_table = false;
      for (const auto& r : table) {
        if (std::vector<int>(r.s.begin(), r.s.end()) != from.bits) continue;
        if (r.sign != from.sign) continue;
        long want_label = from.sign * r.label;
        if (e.label != want_label) continue;
        if (r.tsign == 0) {
          if (e.to != DifferenceGraph::kMatching) continue;
          in_table = true;
        } else {
          if (e.to == DifferenceGraph::kMatching) continue;
          auto to = code_of_difference(f, g.nodes[e.to]);
          if (to.sign == r.tsign &&
              to.bits == std::vector<int>(r.t.begin(), r.t.end()))
            in_table = true;
        }
        if (in_table) break;
      }
      c.expect(in_table, "edge outside the fiber table from " +
                             g.nodes[e.from].decimal(4));
    }
    c.expect(fiber_edges == 20, "fiber edge count != 20 (got " +
                                    std::to_string(fiber_edges) + ")");
    // start edges: +111 -(1)-> +110 and +111 -(2)-> -001
    int start_idx = g.node_index(f.one());
    int seen_start = 0;
    for (const auto& e : g.edges) {
      if (e.from != start_idx) continue;
      ++seen_start;
      bool ok1 = false;
      if (e.to != DifferenceGraph::kMatching) {
        auto to = code_of_difference(f, g.nodes[e.to]);
        ok1 = (e.label == 1 && to.sign > 0 && to.bits == std::vector<int>{1, 1, 0}) ||
              (e.label == 2 && to.sign < 0 && to.bits == std::vector<int>{0, 0, 1});
      }
      c.expect(ok1, "unexpected start edge");
    }
    c.expect(seen_start == 2, "start edge count != 2");
  }
  for (const char* name : {"k5d3", "two_plus_sqrt2"}) {
    auto f = field(name);
    long k = -f.minpoly()[1].get_si();
    long d = f.minpoly()[0].get_si();
    auto res = sweep(f, 8, opt.jobs);
    auto g = build_graph(res);
    FieldElement gamma = f.beta() - Rat(k - 1);
    FieldElement mdb = (f.from_int(-d)) / f.beta();
    c.expect(g.nodes.size() == 2, std::string(name) + ": node count != 2");
    c.expect(g.node_index(f.one()) == 0, std::string(name) + ": start missing");
    c.expect(g.node_index(gamma) >= 0, std::string(name) + ": gamma missing");
    int gi = g.node_index(gamma);
    const auto* chain = g.find_edge(0, gi, k - 1);
    const auto* loop = g.find_edge(gi, gi, k - 1 - d);
    const auto* exit = g.find_edge(gi, DifferenceGraph::kMatching, k - d);
    const auto* immediate = g.find_edge(0, DifferenceGraph::kMatching, k);
    c.expect(chain != nullptr, std::string(name) + ": 1->gamma edge missing");
    c.expect(loop != nullptr, std::string(name) + ": gamma self-loop missing");
    c.expect(exit != nullptr, std::string(name) + ": gamma->matching edge missing");
    c.expect(immediate != nullptr, std::string(name) + ": 1->matching edge missing");
    c.expect(static_cast<int>(g.edges.size()) == 4,
             std::string(name) + ": extra edges present");
    if (loop) {
      long mult = static_cast<long>(loop->digit_pairs.size());
      c.expect(mult == d || mult == d + 1,
               std::string(name) + ": self-loop multiplicity outside {d, d+1}");
    }
    if (exit) c.expect(exit->gateway && *exit->gateway == mdb,
                       std::string(name) + ": gateway != -d/beta");
  }
  return {10, "transition graphs match the reference tables", true, c.ok,
          c.detail.str(), 0};
}

CriterionResult c11_properties(const VerifyOptions& opt) {
  Check c;
  std::mt19937_64 rng(7);
  auto rand_rat = [&](long den) { return Rat(static_cast<long>(rng() % den), den); };

  // field axioms, 1000 triples across two fields
  for (const char* name : {"golden", "tribonacci"}) {
    auto f = field(name);
    for (int i = 0; i < 500; ++i) {
      auto rand_elem = [&]() {
        std::vector<Rat> cs(f.degree());
        for (auto& q : cs)
          q = Rat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
        return f.element(cs);
      };
      FieldElement a = rand_elem(), b = rand_elem(), cc = rand_elem();
      c.expect((a + b) + cc == a + (b + cc), "associativity (+)");
      c.expect((a * b) * cc == a * (b * cc), "associativity (*)");
      c.expect(a * b == b * a, "commutativity");
      c.expect(a * (b + cc) == a * b + a * cc, "distributivity");
      if (!a.is_zero()) c.expect(a * a.inverse() == f.one(), "inverse");
    }
  }

  // closed forms + difference recursion, 200 random (alpha, n)
  for (int i = 0; i < 200; ++i) {
    auto f = (i % 2) ? field("tribonacci") : field("golden");
    Rat a = rand_rat(997);
    int n = 1 + static_cast<int>(rng() % 25);
    auto alpha = f.from_rational(a);
    auto [plus, minus] = critical_orbits(f, alpha, n);
    FieldElement beta = f.beta();
    for (int j = 1; j <= n; ++j) {
      c.expect(closed_form_value(f, alpha, 0, plus.digits, j) ==
                   plus.points[j].value,
               "plus closed form");
      c.expect(closed_form_value(f, alpha, 1, minus.digits, j) ==
                   minus.points[j].value,
               "minus closed form");
      FieldElement dprev = minus.points[j - 1].value - plus.points[j - 1].value;
      FieldElement dnext = minus.points[j].value - plus.points[j].value;
      long off = minus.digits[j - 1] - plus.digits[j - 1];
      c.expect(dnext == beta * dprev - Rat(off), "difference recursion");
    }
  }

  // affine coefficient identity on sweep pieces
  for (int depth : {3, 6, 9}) {
    auto f = field("tribonacci");
    auto res = sweep(f, depth, opt.jobs);
    FieldElement want = alpha_coefficient(f, depth);
    for (const auto& p : res.unresolved) {
      c.expect(p.plus.c == want && p.minus.c == want, "affine coefficient");
      c.expect(p.n == depth, "piece depth");
    }
  }

  // cylinder lemma, random words to length 8
  for (const char* name : {"two_plus_sqrt2", "k5d3"}) {
    auto f = field(name);
    auto qc = quadratic_case(f);
    FieldElement beta = f.beta();
    for (int i = 0; i < 40; ++i) {
      int len = 1 + static_cast<int>(rng() % 8);
      std::vector<int> word(len);
      for (auto& e : word) e = static_cast<int>(rng() % qc.d);
      Rat a = rand_rat(211) / 2;  // keep alpha below k-beta
      auto alpha = f.from_rational(a);
      if (compare(alpha, qc.circle_length) >= 0) continue;
      auto comps = cylinder_components(f, qc, alpha, word);
      c.expect(static_cast<int>(comps.size()) <= len, "component count > n");
      FieldElement total = f.zero();
      for (const auto& arc : comps) total = total + arc.len;
      FieldElement want = qc.circle_length;
      for (int j = 0; j < len; ++j) want = want / beta;
      c.expect(total == want, "cylinder measure mismatch");
    }
  }

  // code-decoding closure on multinacci sweeps
  for (auto [name, depth] : {std::pair<const char*, int>{"tribonacci", 12},
                             std::pair<const char*, int>{"tetrabonacci", 10}}) {
    auto f = field(name);
    auto res = sweep(f, depth, opt.jobs);
    auto g = build_graph(res);
    for (const auto& v : g.nodes) {
      try {
        code_of_difference(f, v);
      } catch (const Error&) {
        c.expect(false, std::string(name) + ": node outside the code set");
      }
    }
    for (const auto& e : g.edges) {
      if (e.to != DifferenceGraph::kMatching) continue;
      if (!e.gateway) continue;
      if (e.gateway->is_zero()) continue;
      try {
        code_of_difference(f, *e.gateway);
      } catch (const Error&) {
        c.expect(false, std::string(name) + ": gateway outside the code set");
      }
    }
  }
  return {11, "property suites (axioms, closed forms, recursion, cylinders, codes)",
          true, c.ok, c.detail.str(), 0};
}

}  // namespace

std::vector<CriterionResult> run_verification(const VerifyOptions& opt) {
  std::vector<CriterionResult> out;
  auto timed = [&](auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    out.push_back(std::move(r));
  };
  auto want = [&](int id) { return !opt.only || *opt.only == id; };

  if (want(1)) timed([&] { return c1_quadratic_immediate(opt); });
  if (want(2)) timed([&] { return c2_multinacci_prop(opt); });
  if (want(3)) timed([&] { return c3_tribonacci_window(opt); });
  if (want(4)) timed([&] { return c4_salem(opt); });
  if (want(5)) timed([&] { return c5_figure_triple(opt); });
  if (want(6)) timed([&] { return c6_totient(opt); });
  if (want(7) || want(8)) {
    std::optional<SweepResult> res14;
    auto t0 = std::chrono::steady_clock::now();
    res14 = sweep(field("two_plus_sqrt2"), 14, opt.jobs);
    double shared = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (want(7)) {
      auto t1 = std::chrono::steady_clock::now();
      auto r = c7_a038199(opt, *res14);
      r.seconds = shared + std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t1)
                               .count();
      out.push_back(std::move(r));
    }
    if (want(8)) {
      std::vector<CriterionResult> extra;
      auto t1 = std::chrono::steady_clock::now();
      auto r = c8_dimensions(opt, *res14, extra);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
                      .count();
      out.push_back(std::move(r));
      for (auto& e : extra) out.push_back(std::move(e));
    }
  }
  if (want(9)) timed([&] { return c9_nonpisot(opt); });
  if (want(10)) timed([&] { return c10_graphs(opt); });
  if (want(11)) timed([&] { return c11_properties(opt); });
  return out;
}

bool all_gated_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.gated && !r.pass) return false;
  return true;
}

std::string format_results(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  [" << (r.gated ? "gated" : "report")
       << "]  #" << r.id << " " << r.name;
    char buf[32];
    std::snprintf(buf, sizeof buf, "  (%.2fs)", r.seconds);
    os << buf;
    if (!r.detail.empty()) os << "\n      " << r.detail;
    os << "\n";
  }
  os << (all_gated_passed(results) ? "ALL GATED CRITERIA PASSED"
                                   : "GATED CRITERIA FAILED")
     << "\n";
  return os.str();
}

}  // namespace betamatch
