#pragma once

#include <cstddef>
#include <functional>

namespace ilap {

/// Caps the worker count used by parallel_for. 0 restores the default
/// (hardware concurrency).
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

/// Runs body(i) for i in [0, n). Each index is visited exactly once; the
/// body must only write state owned by its index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ilap
