#pragma once

#include <cstddef>
#include <functional>

namespace equilens {

/// Worker count used by the measure modules. Reads EQUILENS_THREADS once;
/// `set_thread_count` overrides it (0 restores the environment default).
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Runs body(i) for i in [0, count) on up to thread_count() threads using a
/// static contiguous partition. Bodies must write only to slot i of their
/// output so that results do not depend on the partition.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace equilens
