#include "betamatch/builtin_fields.hpp"

namespace betamatch {

namespace {

struct Entry {
  const char* name;
  std::vector<Int> minpoly;
  Rat lo, hi;
};

const std::vector<Entry>& table() {
  static const std::vector<Entry> entries = {
      {"golden", {-1, -1, 1}, Rat(3, 2), Rat(17, 10)},
      {"silver", {-1, -2, 1}, Rat(11, 5), Rat(5, 2)},
      {"two_plus_sqrt2", {2, -4, 1}, Rat(16, 5), Rat(7, 2)},
      {"k5d3", {3, -5, 1}, Rat(4), Rat(9, 2)},
      {"k3d2m", {-2, -3, 1}, Rat(7, 2), Rat(4)},
      {"tribonacci", {-1, -1, -1, 1}, Rat(9, 5), Rat(15, 8)},
      {"tetrabonacci", {-1, -1, -1, -1, 1}, Rat(19, 10), Rat(2)},
      {"plastic", {-1, -1, 0, 1}, Rat(13, 10), Rat(27, 20)},
      {"salem4", {1, -1, -1, -1, 1}, Rat(17, 10), Rat(7, 4)},
      {"lehmer", {1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}, Rat(117, 100), Rat(6, 5)},
  };
  return entries;
}

}  // namespace

std::optional<NumberField> builtin_field(const std::string& name) {
  for (const auto& e : table())
    if (name == e.name) return NumberField::make(e.minpoly, e.lo, e.hi);
  return std::nullopt;
}

std::vector<std::string> builtin_field_names() {
  std::vector<std::string> out;
  for (const auto& e : table()) out.emplace_back(e.name);
  return out;
}

}  // namespace betamatch
