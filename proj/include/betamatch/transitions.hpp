#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "betamatch/paramsweep.hpp"

namespace betamatch {

/// Directed graph on the difference values D_n = T^n(0-) - T^n(0+), with an
/// absorbing Matching node. States from which matching is already forced
/// (D in Z, or beta*D in Z, i.e. D = j/beta) are collapsed into the Matching
/// node; each edge into Matching remembers the gateway value it passed
/// through, so the figure-style "pre-matching" boxes can still be drawn.
struct DifferenceGraph {
  NumberField field;

  static constexpr int kMatching = -1;

  std::vector<FieldElement> nodes;  // live difference values; index 0 is Start = 1

  struct Edge {
    int from = 0;
    int to = kMatching;  // node index, or kMatching
    long label = 0;      // branch offset b_{n+1} - a_{n+1}
    long count = 0;      // occurrences observed
    std::set<std::pair<long, long>> digit_pairs;  // distinct (b, a) contexts
    std::optional<FieldElement> gateway;          // set on Matching edges
  };
  std::vector<Edge> edges;

  int node_index(const FieldElement& v) const;  // -2 when absent
  const Edge* find_edge(int from, int to, long label) const;
};

/// Accumulates every observed transition over the pieces of a sweep
/// (matched and unresolved), reconstructing each piece's difference trace
/// from its digit histories.
DifferenceGraph build_graph(const SweepResult& result);

/// Same, from pointwise orbits of the sampled alphas.
DifferenceGraph build_graph(const NumberField& f,
                            std::span<const FieldElement> alphas, int depth);

/// Associative, commutative merge of partial graphs.
void merge_graphs(DifferenceGraph& into, const DifferenceGraph& part);

struct FinitenessOutcome {
  bool finite = false;
  int nodes_at_depth = 0;
  int nodes_at_double_depth = 0;
  bool multinacci_codes_ok = true;  // nodes within the {0,1}-code set, when applicable
};

/// Builds sampled graphs at `depth` and `2*depth` and reports whether the
/// node set stabilized; for multinacci fields additionally checks node
/// membership in the code set {sum e_i / beta^i}.
FinitenessOutcome finiteness_check(const NumberField& f,
                                   std::span<const FieldElement> alphas,
                                   int depth);

/// Deterministic DOT text: nodes sorted by value, edges lexicographically;
/// the matching node is styled distinctly. With `draw_gateways`, the forced
/// pre-matching values appear as their own boxes feeding Matching, as in the
/// transition-graph figures.
std::string export_dot(const DifferenceGraph& g, bool draw_gateways = true);

}  // namespace betamatch
