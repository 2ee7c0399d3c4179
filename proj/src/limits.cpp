#include "levelzero/limits.hpp"

#include <atomic>
#include <string>

#include "levelzero/errors.hpp"

namespace levelzero {

namespace {
std::atomic<std::uint64_t> g_sweep_bound{kDefaultSweepBound};
}

std::uint64_t sweep_bound() { return g_sweep_bound.load(std::memory_order_relaxed); }

void set_sweep_bound(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("sweep bound must be positive");
  g_sweep_bound.store(bound, std::memory_order_relaxed);
}

void require_within_sweep_bound(std::uint64_t size, std::string_view what) {
  if (size > sweep_bound()) {
    throw ResourceError(std::string(what) + ": " + std::to_string(size) +
                        " elements exceed the sweep bound " + std::to_string(sweep_bound()));
  }
}

void Deadline::check(std::string_view where) const {
  if (expired()) throw TimeoutError(std::string(where) + ": deadline expired");
}

}  // namespace levelzero
