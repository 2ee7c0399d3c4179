#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

namespace levelzero {

inline constexpr std::uint64_t kDefaultSweepBound = std::uint64_t{1} << 21;

/// Process-wide cap on the number of group elements an exhaustive sweep may touch.
std::uint64_t sweep_bound();
void set_sweep_bound(std::uint64_t bound);

/// Throws ResourceError when `size` exceeds the sweep bound.
void require_within_sweep_bound(std::uint64_t size, std::string_view what);

/// Cooperative per-task deadline. Default-constructed deadlines never expire.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget)
      : end_(std::chrono::steady_clock::now() + budget) {}

  bool expired() const { return end_ && std::chrono::steady_clock::now() >= *end_; }

  /// Throws TimeoutError if expired.
  void check(std::string_view where) const;

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

}  // namespace levelzero
