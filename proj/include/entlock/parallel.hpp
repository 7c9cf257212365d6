#pragma once

#include <cstddef>
#include <functional>

namespace entlock {

/// Caps worker threads used by parallel_for (0 = hardware concurrency).
void set_thread_cap(unsigned cap) noexcept;
unsigned thread_cap() noexcept;

/// Runs body(i) for i in [0, n). Bodies must only write to their own slot;
/// results are therefore independent of scheduling. The first exception
/// thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace entlock
