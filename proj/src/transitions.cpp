#include "betamatch/transitions.hpp"

#include <algorithm>
#include <sstream>

#include "betamatch/multinacci.hpp"

namespace betamatch {

int DifferenceGraph::node_index(const FieldElement& v) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == v) return static_cast<int>(i);
  return -2;
}

const DifferenceGraph::Edge* DifferenceGraph::find_edge(int from, int to,
                                                        long label) const {
  for (const auto& e : edges)
    if (e.from == from && e.to == to && e.label == label) return &e;
  return nullptr;
}

namespace {

int intern_node(DifferenceGraph& g, const FieldElement& v) {
  int idx = g.node_index(v);
  if (idx != -2) return idx;
  g.nodes.push_back(v);
  return static_cast<int>(g.nodes.size()) - 1;
}

DifferenceGraph::Edge& intern_edge(DifferenceGraph& g, int from, int to, long label) {
  for (auto& e : g.edges)
    if (e.from == from && e.to == to && e.label == label) return e;
  DifferenceGraph::Edge e;
  e.from = from;
  e.to = to;
  e.label = label;
  g.edges.push_back(std::move(e));
  return g.edges.back();
}

// One trace: digit histories of a piece or a pointwise orbit pair.
// D_0 = 1, D_{j+1} = beta D_j - (dm[j] - dp[j]).
void accumulate_trace(DifferenceGraph& g, std::span<const long> dp,
                      std::span<const long> dm) {
  const NumberField& f = g.field;
  FieldElement beta = f.beta();
  FieldElement D = f.one();
  int cur = intern_node(g, D);
  for (size_t j = 0; j < dp.size(); ++j) {
    long off = dm[j] - dp[j];
    FieldElement next = beta * D - Rat(off);
    bool absorbed = next.is_integer() || (beta * next).is_integer();
    if (absorbed) {
      auto& e = intern_edge(g, cur, DifferenceGraph::kMatching, off);
      ++e.count;
      e.digit_pairs.insert({dm[j], dp[j]});
      if (!e.gateway) e.gateway = next;
      return;
    }
    int nxt = intern_node(g, next);
    auto& e = intern_edge(g, cur, nxt, off);
    ++e.count;
    e.digit_pairs.insert({dm[j], dp[j]});
    cur = nxt;
    D = std::move(next);
  }
}

void accumulate_start_gateway(DifferenceGraph& g) {
  // Degree-1 slopes: Start itself is forced into matching (beta * 1 in Z).
  const NumberField& f = g.field;
  intern_node(g, f.one());
  long j = f.beta().as_rational().get_num().get_si();
  auto& e = intern_edge(g, 0, DifferenceGraph::kMatching, j);
  ++e.count;
  e.gateway = f.zero();
}

}  // namespace

DifferenceGraph build_graph(const SweepResult& result) {
  DifferenceGraph g;
  g.field = result.field;
  FieldElement beta = g.field.beta();
  bool start_gateway = (beta * g.field.one()).is_integer();
  for (const auto& m : result.matched) {
    if (start_gateway) {
      accumulate_start_gateway(g);
      continue;
    }
    accumulate_trace(g, m.digits_plus, m.digits_minus);
  }
  for (const auto& p : result.unresolved)
    accumulate_trace(g, p.digits_plus, p.digits_minus);
  return g;
}

DifferenceGraph build_graph(const NumberField& f,
                            std::span<const FieldElement> alphas, int depth) {
  DifferenceGraph g;
  g.field = f;
  bool start_gateway = (f.beta() * f.one()).is_integer();
  for (const auto& alpha : alphas) {
    if (start_gateway) {
      accumulate_start_gateway(g);
      continue;
    }
    auto [plus, minus] = critical_orbits(f, alpha, depth);
    // stop the trace at matching if it occurs
    auto mi = matching_index(f, alpha, depth);
    size_t steps = mi.matched_at ? static_cast<size_t>(*mi.matched_at)
                                 : static_cast<size_t>(depth);
    accumulate_trace(g, std::span(plus.digits).first(steps),
                     std::span(minus.digits).first(steps));
  }
  return g;
}

void merge_graphs(DifferenceGraph& into, const DifferenceGraph& part) {
  if (into.nodes.empty()) {
    into = part;
    return;
  }
  std::vector<int> remap(part.nodes.size());
  for (size_t i = 0; i < part.nodes.size(); ++i)
    remap[i] = intern_node(into, part.nodes[i]);
  for (const auto& e : part.edges) {
    int to = e.to == DifferenceGraph::kMatching ? DifferenceGraph::kMatching
                                                : remap[e.to];
    auto& t = intern_edge(into, remap[e.from], to, e.label);
    t.count += e.count;
    t.digit_pairs.insert(e.digit_pairs.begin(), e.digit_pairs.end());
    if (!t.gateway && e.gateway) t.gateway = e.gateway;
  }
}

FinitenessOutcome finiteness_check(const NumberField& f,
                                   std::span<const FieldElement> alphas,
                                   int depth) {
  DifferenceGraph g1 = build_graph(f, alphas, depth);
  DifferenceGraph g2 = build_graph(f, alphas, 2 * depth);
  FinitenessOutcome out;
  out.nodes_at_depth = static_cast<int>(g1.nodes.size());
  out.nodes_at_double_depth = static_cast<int>(g2.nodes.size());
  out.finite = out.nodes_at_depth == out.nodes_at_double_depth;
  if (multinacci_order(f)) {
    for (const auto& v : g2.nodes) {
      try {
        code_of_difference(f, v);
      } catch (const Error&) {
        out.multinacci_codes_ok = false;
      }
    }
  }
  return out;
}

std::string export_dot(const DifferenceGraph& g, bool draw_gateways) {
  // nodes sorted by value; gateway boxes (optional) after them; matching last
  std::vector<int> order(g.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return compare(g.nodes[a], g.nodes[b]) < 0; });

  auto mn_order = multinacci_order(g.field);
  auto node_label = [&](const FieldElement& v) -> std::string {
    if (mn_order) {
      try {
        DifferenceCode code = code_of_difference(g.field, v);
        std::string s = code.sign < 0 ? "-" : (code.sign > 0 ? "+" : "");
        for (int b : code.bits) s += static_cast<char>('0' + b);
        return s;
      } catch (const Error&) {
      }
    }
    return v.decimal(6);
  };

  std::ostringstream os;
  os << "digraph differences {\n  rankdir=LR;\n  node [shape=box];\n";
  std::vector<std::string> names(g.nodes.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    int i = order[pos];
    names[i] = "n" + std::to_string(pos);
    os << "  " << names[i] << " [label=\"" << node_label(g.nodes[i]) << "\"];\n";
  }

  // collect distinct gateways deterministically (sorted by value)
  std::vector<FieldElement> gateways;
  if (draw_gateways) {
    for (const auto& e : g.edges)
      if (e.gateway && !e.gateway->is_integer()) {
        bool seen = false;
        for (auto& w : gateways)
          if (w == *e.gateway) seen = true;
        if (!seen) gateways.push_back(*e.gateway);
      }
    std::sort(gateways.begin(), gateways.end(),
              [](const FieldElement& a, const FieldElement& b) {
                return compare(a, b) < 0;
              });
    for (size_t i = 0; i < gateways.size(); ++i)
      os << "  g" << i << " [label=\"" << node_label(gateways[i])
         << "\", color=red];\n";
  }
  os << "  matching [shape=box, style=bold, peripheries=2];\n";

  auto gateway_name = [&](const FieldElement& v) -> std::string {
    for (size_t i = 0; i < gateways.size(); ++i)
      if (gateways[i] == v) return "g" + std::to_string(i);
    return "matching";
  };

  struct Line {
    std::string text;
  };
  std::vector<std::string> lines;
  for (const auto& e : g.edges) {
    std::string from = names[e.from];
    std::string label = std::to_string(e.label);
    if (e.digit_pairs.size() > 1)
      label += " (x" + std::to_string(e.digit_pairs.size()) + ")";
    if (e.to == DifferenceGraph::kMatching) {
      if (draw_gateways && e.gateway && !e.gateway->is_integer()) {
        std::string gw = gateway_name(*e.gateway);
        lines.push_back("  " + from + " -> " + gw + " [label=\"" + label + "\"];");
        lines.push_back("  " + gw + " -> matching;");
      } else {
        lines.push_back("  " + from + " -> matching [label=\"" + label + "\"];");
      }
    } else {
      lines.push_back("  " + from + " -> " + names[e.to] + " [label=\"" + label +
                      "\"];");
    }
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  for (const auto& l : lines) os << l << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace betamatch
