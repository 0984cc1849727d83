#pragma once

#include <string>

#include <json.hpp>

#include "betamatch/dynamics.hpp"
#include "betamatch/quadratic.hpp"
#include "betamatch/stats.hpp"
#include "betamatch/transitions.hpp"

namespace betamatch::io {

using nlohmann::json;

/// Field specification file:
/// {"minpoly": [c0, c1, ...], "root_lo": "p/q", "root_hi": "p/q"}
/// with ascending coefficients and the leading 1 implied.
NumberField load_field_file(const std::string& path);
NumberField load_field_json(const json& j);
json field_json(const NumberField& f);

/// Resolves either a file path or a builtin name.
NumberField resolve_field(const std::string& path_or_name);

json element_json(const FieldElement& v, int digits = 12);

json orbit_json(const NumberField& f, const FieldElement& alpha, int steps,
                bool with_trace);

std::string sweep_csv(const SweepResult& r, int digits = 12);
json sweep_json(const SweepResult& r, int digits = 12);

json stats_json(const SizeHistogram& h, const DimensionEstimate& est,
                int digits = 12);
std::string plot_tsv(const SizeHistogram& h);

json graph_json(const DifferenceGraph& g, int digits = 12);

json plateau_json(const NumberField& f, const PlateauMap& pm, int digits = 12);

json fiber_trace_json(const NumberField& f, const FieldElement& alpha, int depth);

}  // namespace betamatch::io
