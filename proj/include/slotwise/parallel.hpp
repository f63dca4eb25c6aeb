#pragma once

#include <cstddef>
#include <functional>

namespace slotwise {

/// Number of worker threads used by parallel loops. Resolved from the
/// SLOTWISE_THREADS environment variable on first use (0 or unset = hardware
/// concurrency) unless overridden with set_thread_count.
int thread_count();

/// Overrides the worker count; 0 restores the automatic choice.
void set_thread_count(int n);

/// Runs body(i) for i in [0, n). Work is split dynamically, so body must not
/// depend on which thread runs which index. Exceptions thrown by body are
/// rethrown on the caller (the one with the smallest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace slotwise
