#pragma once

// Deterministic work-sharing: fixed chunk grid independent of the thread
// count, so reductions done in chunk order give bit-identical results for
// any number of workers.

#include <cstddef>
#include <functional>
#include <vector>

namespace singlab {

// Global worker count. 0 = hardware concurrency. Settable once per process
// (CLI --threads / LAB_THREADS); reads are cheap.
void set_thread_count(int n);
int thread_count();

inline constexpr std::size_t kChunk = 2048;

// Runs fn(begin, end) over [0, n) split into fixed-size chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Deterministic sum: per-chunk partials accumulated in chunk order.
double parallel_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& chunk_sum);

}  // namespace singlab
