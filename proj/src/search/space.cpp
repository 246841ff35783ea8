#include "rooftune/search/space.hpp"

#include <algorithm>
#include <set>

#include "rooftune/error.hpp"

namespace rooftune {

std::int64_t Point::at(std::string_view axis) const {
  for (const auto& [name, value] : coords) {
    if (name == axis) return value;
  }
  throw InputError("configuration has no parameter '" + std::string(axis) + "'");
}

bool Point::has(std::string_view axis) const {
  return std::any_of(coords.begin(), coords.end(), [&](const auto& c) { return c.first == axis; });
}

std::string Point::label() const {
  std::string out;
  for (const auto& [name, value] : coords) {
    if (!out.empty()) out += ',';
    out += name;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

SearchSpace::SearchSpace(std::string name, std::vector<Axis> axes, SearchOrder order)
    : name_(std::move(name)), axes_(std::move(axes)), order_(order) {
  std::set<std::string> seen;
  for (const auto& axis : axes_) {
    if (axis.values.empty()) throw InputError("search axis '" + axis.name + "' has no values");
    if (!seen.insert(axis.name).second) throw InputError("duplicate search axis '" + axis.name + "'");
  }
}

std::vector<Point> SearchSpace::enumerate() const {
  std::vector<Point> out;
  if (axes_.empty()) return out;

  std::vector<std::size_t> idx(axes_.size(), 0);
  for (;;) {
    Point p;
    p.coords.reserve(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) p.coords.emplace_back(axes_[a].name, axes_[a].values[idx[a]]);
    if (std::all_of(constraints_.begin(), constraints_.end(), [&](const Constraint& c) { return c.admits(p); })) {
      out.push_back(std::move(p));
    }
    // odometer increment, last axis fastest
    std::size_t a = axes_.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes_[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) {
        if (order_ == SearchOrder::Reverse) std::reverse(out.begin(), out.end());
        return out;
      }
    }
  }
}

std::size_t SearchSpace::cardinality() const {
  if (constraints_.empty()) {
    if (axes_.empty()) return 0;
    std::size_t n = 1;
    for (const auto& a : axes_) n *= a.values.size();
    return n;
  }
  return enumerate().size();
}

namespace {
std::vector<std::int64_t> powers_of_two(std::int64_t from, std::int64_t to) {
  std::vector<std::int64_t> v;
  for (std::int64_t x = from; x <= to; x *= 2) v.push_back(x);
  return v;
}
}  // namespace

SearchSpace build_dgemm_space(DgemmSpaceKind kind) {
  if (kind == DgemmSpaceKind::Initial) {
    return SearchSpace("initial", {{"n", powers_of_two(64, 4096)},
                                   {"m", powers_of_two(64, 4096)},
                                   {"k", powers_of_two(2, 2048)}});
  }
  // Leading dimension n avoids powers of two (500, 1000, ...).
  return SearchSpace("reduced", {{"n", {500, 1000, 2000, 4000}},
                                 {"m", powers_of_two(512, 4096)},
                                 {"k", powers_of_two(64, 2048)}});
}

std::vector<std::size_t> triad_size_ladder(std::size_t min_bytes, std::size_t max_bytes) {
  if (min_bytes > max_bytes) throw InputError("TRIAD size range is empty (min > max)");
  if (min_bytes < 24) throw InputError("TRIAD working set must hold at least one element (24 bytes)");
  std::vector<std::size_t> sizes;
  for (std::size_t s = min_bytes; s <= max_bytes; s *= 2) {
    sizes.push_back(s);
    if (s > max_bytes / 2) break;
  }
  return sizes;
}

SearchSpace build_triad_space(std::size_t min_bytes, std::size_t max_bytes) {
  Axis length{"length", {}};
  for (std::size_t bytes : triad_size_ladder(min_bytes, max_bytes)) {
    length.values.push_back(static_cast<std::int64_t>(bytes / 24));
  }
  return SearchSpace("triad", {std::move(length)});
}

}  // namespace rooftune
