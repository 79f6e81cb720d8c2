#pragma once

#include <cstddef>
#include <functional>

namespace tropmeas {

/// Worker cap for parallel_for; defaults to std::thread::hardware_concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);

/// Runs body(i) for i in [0, n). Iterations must be independent; each writes
/// only its own slot, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tropmeas
