#pragma once

#include <cstddef>
#include <functional>

namespace dsw {

// Width of data-parallel loops: hardware concurrency capped by the
// DSW_THREADS environment variable (read once).
unsigned parallel_width();

// Runs fn over [0, count) split into contiguous ranges. Serial when the loop
// is small or the width is 1. fn must write disjoint outputs only; chunk
// boundaries do not depend on the thread count, so results are identical at
// any width.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace dsw
