#ifndef MIXKIN_PARALLEL_HPP
#define MIXKIN_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace mixkin {

/// Set the number of worker threads used by parallel_for. 0 restores the
/// hardware default, 1 forces serial execution.
void set_thread_count(int count);

int thread_count();

/// Run body(begin, end) over a static partition of [0, n). Work items are
/// never shared between chunks, so results are identical for any thread
/// count. Exceptions thrown by the body are rethrown in the calling thread
/// (the one from the lowest chunk wins).
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body);

} // namespace mixkin

#endif
