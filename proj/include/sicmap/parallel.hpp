#pragma once

#include <cstddef>
#include <functional>

namespace sicmap {

// Worker count used by the data-parallel loops; 0 restores the hardware
// default.
void set_thread_count(std::size_t n);
std::size_t thread_count();

// Calls body(k) for every k in [0, count), split into contiguous chunks over
// the configured worker count.  body must only write to slots owned by k.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sicmap
