#include "betamatch/io.hpp"

#include <fstream>
#include <sstream>

#include "betamatch/builtin_fields.hpp"
#include "betamatch/multinacci.hpp"

namespace betamatch::io {

NumberField load_field_json(const json& j) {
  if (!j.contains("minpoly") || !j.contains("root_lo") || !j.contains("root_hi"))
    throw Error("BadFieldFile", "field file needs minpoly, root_lo, root_hi");
  std::vector<Int> mp;
  for (const auto& c : j.at("minpoly")) {
    if (c.is_number_integer())
      mp.emplace_back(static_cast<long>(c.get<long long>()));
    else
      mp.emplace_back(c.get<std::string>());
  }
  mp.emplace_back(1);  // leading coefficient implied
  Rat lo = parse_rational(j.at("root_lo").get<std::string>());
  Rat hi = parse_rational(j.at("root_hi").get<std::string>());
  return NumberField::make(std::move(mp), std::move(lo), std::move(hi));
}

NumberField load_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("BadFieldFile", "cannot open field file " + path);
  json j = json::parse(in);
  return load_field_json(j);
}

json field_json(const NumberField& f) {
  json j;
  json mp = json::array();
  for (int i = 0; i < f.degree(); ++i) mp.push_back(f.minpoly()[i].get_str());
  j["minpoly"] = mp;
  auto [lo, hi] = f.isolation();
  j["root_lo"] = rational_string(lo);
  j["root_hi"] = rational_string(hi);
  return j;
}

NumberField resolve_field(const std::string& path_or_name) {
  std::ifstream probe(path_or_name);
  if (probe.good()) return load_field_file(path_or_name);
  if (auto f = builtin_field(path_or_name)) return *f;
  throw Error("BadFieldFile",
              "'" + path_or_name + "' is neither a readable file nor a builtin field");
}

json element_json(const FieldElement& v, int digits) {
  json j;
  json coeffs = json::array();
  for (const auto& c : v.coeffs()) coeffs.push_back(rational_string(c));
  j["coeffs"] = coeffs;
  j["decimal"] = v.decimal(digits);
  return j;
}

json orbit_json(const NumberField& f, const FieldElement& alpha, int steps,
                bool with_trace) {
  auto [plus, minus] = critical_orbits(f, alpha, steps);
  auto orbit_to_json = [&](const OrbitRecord& o) {
    json arr = json::array();
    for (size_t n = 0; n < o.points.size(); ++n) {
      json e;
      e["n"] = n;
      e["value_coeffs"] = element_json(o.points[n].value)["coeffs"];
      e["value_decimal"] = o.points[n].value.decimal(12);
      e["side"] = side_name(o.points[n].side);
      if (n < o.digits.size()) e["digit"] = o.digits[n];
      arr.push_back(std::move(e));
    }
    return arr;
  };
  json j;
  j["alpha"] = element_json(alpha);
  j["plus"] = orbit_to_json(plus);
  j["minus"] = orbit_to_json(minus);
  if (with_trace) {
    json tr = json::array();
    for (size_t n = 0; n < plus.points.size(); ++n) {
      FieldElement d = minus.points[n].value - plus.points[n].value;
      json e;
      e["n"] = n;
      e["coeffs"] = element_json(d)["coeffs"];
      e["decimal"] = d.decimal(12);
      tr.push_back(std::move(e));
    }
    j["difference_trace"] = tr;
  }
  return j;
}

namespace {

std::string coeff_cell(const FieldElement& v) {
  std::string s;
  for (size_t i = 0; i < v.coeffs().size(); ++i) {
    if (i) s += ';';
    s += rational_string(v.coeffs()[i]);
  }
  return s;
}

}  // namespace

std::string sweep_csv(const SweepResult& r, int digits) {
  std::ostringstream os;
  os << "lo_decimal,hi_decimal,lo_coeffs,hi_coeffs,match_index,size_decimal,size_coeffs\n";
  for (const auto& m : r.matched) {
    os << m.lo.decimal(digits) << ',' << m.hi.decimal(digits) << ','
       << coeff_cell(m.lo) << ',' << coeff_cell(m.hi) << ',' << m.index << ','
       << m.size.decimal(digits) << ',' << coeff_cell(m.size) << '\n';
  }
  for (const auto& p : r.unresolved) {
    FieldElement size = p.hi - p.lo;
    os << p.lo.decimal(digits) << ',' << p.hi.decimal(digits) << ','
       << coeff_cell(p.lo) << ',' << coeff_cell(p.hi) << ",-1,"
       << size.decimal(digits) << ',' << coeff_cell(size) << '\n';
  }
  return os.str();
}

json sweep_json(const SweepResult& r, int digits) {
  json j;
  j["field"] = field_json(r.field);
  j["depth"] = r.depth;
  j["region"] = {element_json(r.region_lo, digits), element_json(r.region_hi, digits)};
  json matched = json::array();
  for (const auto& m : r.matched) {
    json e;
    e["lo"] = element_json(m.lo, digits);
    e["hi"] = element_json(m.hi, digits);
    e["lo_closed"] = m.lo_closed;
    e["hi_closed"] = m.hi_closed;
    e["match_index"] = m.index;
    e["size"] = element_json(m.size, digits);
    e["digits_plus"] = m.digits_plus;
    e["digits_minus"] = m.digits_minus;
    matched.push_back(std::move(e));
  }
  j["matched"] = matched;
  json unresolved = json::array();
  for (const auto& p : r.unresolved) {
    json e;
    e["lo"] = element_json(p.lo, digits);
    e["hi"] = element_json(p.hi, digits);
    e["match_index"] = -1;
    e["digits_plus"] = p.digits_plus;
    e["digits_minus"] = p.digits_minus;
    unresolved.push_back(std::move(e));
  }
  j["unresolved"] = unresolved;
  return j;
}

json stats_json(const SizeHistogram& h, const DimensionEstimate& est, int digits) {
  json j;
  json bins = json::array();
  for (const auto& b : h.exact) {
    json e;
    e["size"] = element_json(b.size, digits);
    e["count"] = b.count;
    bins.push_back(std::move(e));
  }
  j["bins"] = bins;
  j["a_n"] = h.log_counts;
  j["total"] = h.total;
  json e;
  e["value"] = est.value;
  e["base"] = est.base;
  e["fit_range"] = {est.fit_lo, est.fit_hi};
  json per_n = json::array();
  for (auto& [n, v] : est.per_n) per_n.push_back({{"n", n}, {"value", v}});
  e["per_n"] = per_n;
  e["residual"] = est.residual;
  e["per_n_spread"] = est.per_n_spread;
  e["cover_estimate"] = est.cover_estimate;
  j["estimate"] = e;
  return j;
}

std::string plot_tsv(const SizeHistogram& h) {
  auto [blo, bhi] = h.base.enclosure(Rat(1, 1) / (Rat(1) << 60));
  double b = mpq_get_d(blo.get_mpq_t());
  std::ostringstream os;
  os.precision(12);
  for (size_t n = 0; n < h.log_counts.size(); ++n) {
    if (h.log_counts[n] <= 0) continue;
    os << n << '\t' << std::log(static_cast<double>(h.log_counts[n])) / std::log(b)
       << '\n';
  }
  return os.str();
}

json graph_json(const DifferenceGraph& g, int digits) {
  json j;
  json nodes = json::array();
  for (const auto& v : g.nodes) nodes.push_back(element_json(v, digits));
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : g.edges) {
    json je;
    je["from"] = e.from;
    je["to"] = e.to == DifferenceGraph::kMatching ? json("matching") : json(e.to);
    je["label"] = e.label;
    je["count"] = e.count;
    je["distinct_digit_pairs"] = e.digit_pairs.size();
    if (e.gateway) je["gateway"] = element_json(*e.gateway, digits);
    edges.push_back(std::move(je));
  }
  j["edges"] = edges;
  return j;
}

json plateau_json(const NumberField& f, const PlateauMap& pm, int digits) {
  json j;
  j["alpha"] = element_json(pm.alpha, digits);
  j["k"] = pm.qc.k;
  j["d"] = pm.qc.d;
  j["case"] = pm.qc.sign == QuadSign::plus_d ? "+d" : "-d";
  j["gamma"] = element_json(pm.qc.gamma, digits);
  j["circle_length"] = element_json(pm.qc.circle_length, digits);
  j["domain"] = {element_json(pm.domain_lo, digits), element_json(pm.domain_hi, digits)};
  j["slope_power"] = pm.slope_power;
  json ps = json::array();
  for (const auto& p : pm.plateaus) {
    json e;
    e["lo"] = element_json(p.lo, digits);
    e["hi"] = element_json(p.hi, digits);
    e["value"] = element_json(p.value, digits);
    ps.push_back(std::move(e));
  }
  j["plateaus"] = ps;
  auto bd = branch_data(f, pm.alpha);
  json bs = json::array();
  for (const auto& b : bd.boundaries) bs.push_back(element_json(b, digits));
  j["branch_boundaries"] = bs;
  return j;
}

json fiber_trace_json(const NumberField& f, const FieldElement& alpha, int depth) {
  auto ord = multinacci_order(f);
  if (!ord || *ord != 3)
    throw Error("NotMultinacci", "fiber traces are tribonacci-specific");
  auto [plus, minus] = critical_orbits(f, alpha, depth);
  json arr = json::array();
  FiberState state = FiberState::make(+1, {1, 1, 1});
  for (int n = 0; n < depth; ++n) {
    long off = minus.digits[n] - plus.digits[n];
    json e;
    e["n"] = n;
    std::string s = state.sign < 0 ? "-" : "+";
    for (int b : state.bits) s += static_cast<char>('0' + b);
    e["state"] = s;
    e["offset"] = off;
    arr.push_back(std::move(e));
    state = fiber_step(state, static_cast<int>(std::labs(off)));
    if (state.matched) {
      json last;
      last["n"] = n + 1;
      last["state"] = "matched";
      arr.push_back(std::move(last));
      break;
    }
  }
  json j;
  j["alpha"] = element_json(alpha);
  j["trace"] = arr;
  return j;
}

}  // namespace betamatch::io
