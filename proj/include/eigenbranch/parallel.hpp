#pragma once

#include <cstddef>
#include <functional>

namespace eigenbranch {

// Worker cap shared by every parallel loop in the library (the CLI's --threads).
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [0, n). Each index is handled exactly once and results
// must be written to index-addressed storage, so output never depends on the
// schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace eigenbranch
