#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rooftune {

// One configuration: named integer coordinates in axis order.
struct Point {
  std::vector<std::pair<std::string, std::int64_t>> coords;

  // Throws InputError if the axis is absent.
  [[nodiscard]] std::int64_t at(std::string_view axis) const;
  [[nodiscard]] bool has(std::string_view axis) const;
  // "n=4000,m=512,k=128"
  [[nodiscard]] std::string label() const;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Axis {
  std::string name;
  std::vector<std::int64_t> values;
};

struct Constraint {
  std::string description;
  std::function<bool(const Point&)> admits;
};

enum class SearchOrder { Forward, Reverse };

// Cartesian product of axes filtered by constraints. Forward order is
// lexicographic with the last axis varying fastest; Reverse is its mirror.
class SearchSpace {
 public:
  SearchSpace() = default;
  // Throws InputError for empty or duplicate axes.
  SearchSpace(std::string name, std::vector<Axis> axes, SearchOrder order = SearchOrder::Forward);

  void add_constraint(Constraint c) { constraints_.push_back(std::move(c)); }
  void set_order(SearchOrder order) { order_ = order; }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Axis>& axes() const { return axes_; }
  [[nodiscard]] SearchOrder order() const { return order_; }

  [[nodiscard]] std::vector<Point> enumerate() const;
  [[nodiscard]] std::size_t cardinality() const;

 private:
  std::string name_;
  std::vector<Axis> axes_;
  std::vector<Constraint> constraints_;
  SearchOrder order_ = SearchOrder::Forward;
};

enum class DgemmSpaceKind { Initial, Reduced };

// Initial: n, m in {64..4096} (powers of two), k in {2..2048}; 539 points.
// Reduced: n in {500,1000,2000,4000}, m in {512..4096}, k in {64..2048}; 96 points.
SearchSpace build_dgemm_space(DgemmSpaceKind kind);

inline constexpr std::size_t kTriadMinBytes = 3 * 1024;
inline constexpr std::size_t kTriadMaxBytes = 768 * 1024 * 1024;

// Working-set sizes doubling from min_bytes up to max_bytes inclusive.
// Throws InputError if min_bytes > max_bytes or min_bytes < 24.
std::vector<std::size_t> triad_size_ladder(std::size_t min_bytes = kTriadMinBytes,
                                           std::size_t max_bytes = kTriadMaxBytes);

// One axis "length" holding floor(bytes / 24) for each ladder size.
SearchSpace build_triad_space(std::size_t min_bytes = kTriadMinBytes,
                              std::size_t max_bytes = kTriadMaxBytes);

}  // namespace rooftune
