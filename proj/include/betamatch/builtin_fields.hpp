#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betamatch/numberfield.hpp"

namespace betamatch {

/// Bundled slopes: golden, silver, two_plus_sqrt2, k5d3 (x^2-5x+3),
/// k3d2m (x^2-3x-2), tribonacci, tetrabonacci, plastic, salem4, lehmer.
std::optional<NumberField> builtin_field(const std::string& name);
std::vector<std::string> builtin_field_names();

}  // namespace betamatch
