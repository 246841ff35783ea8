#pragma once

#include <cstddef>
#include <cstdlib>
#include <memory>
#include <new>
#include <span>
#include <string>

#include "rooftune/error.hpp"

namespace rooftune {

// Cache-line aligned, uninitialized array of doubles. Pages stay untouched
// until first written, so the writing thread decides NUMA placement.
class AlignedBuffer {
 public:
  static constexpr std::size_t kAlignment = 64;

  AlignedBuffer() = default;

  // Throws ResourceError naming the requested size on failure.
  explicit AlignedBuffer(std::size_t count) : size_(count) {
    if (count == 0) return;
    if (count > (static_cast<std::size_t>(-1) - kAlignment) / sizeof(double)) {
      throw ResourceError("allocation of " + std::to_string(count) + " doubles overflows");
    }
    const std::size_t bytes = (count * sizeof(double) + kAlignment - 1) / kAlignment * kAlignment;
    void* p = std::aligned_alloc(kAlignment, bytes);
    if (p == nullptr) {
      throw ResourceError("failed to allocate " + std::to_string(bytes) + " bytes");
    }
    data_.reset(static_cast<double*>(p));
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] double* data() { return data_.get(); }
  [[nodiscard]] const double* data() const { return data_.get(); }
  [[nodiscard]] std::span<double> span() { return {data_.get(), size_}; }
  [[nodiscard]] std::span<const double> span() const { return {data_.get(), size_}; }
  double& operator[](std::size_t i) { return data_[i]; }
  const double& operator[](std::size_t i) const { return data_[i]; }

 private:
  struct FreeDeleter {
    void operator()(double* p) const { std::free(p); }
  };
  std::unique_ptr<double[], FreeDeleter> data_;
  std::size_t size_ = 0;
};

}  // namespace rooftune
