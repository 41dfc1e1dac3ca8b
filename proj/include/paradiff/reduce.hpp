#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace paradiff {

// Worker cap shared by every parallel loop. Resolves, in order:
// set_max_threads() value, PARADIFF_THREADS, hardware concurrency.
int max_threads();
void set_max_threads(int n);  // n <= 0 restores the default resolution

// Runs fn(begin, end) over a static partition of [0, n). Chunk boundaries
// depend only on n, never on the worker count, so per-index work is
// bit-reproducible across thread counts.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Deterministic sums: fixed 4096-element leaves combined by a fixed binary
// tree. The reduction shape depends only on n, so the result is identical
// for any schedule.
double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& term);
std::complex<double> deterministic_csum(std::size_t n,
                                        const std::function<std::complex<double>(std::size_t)>& term);

double deterministic_max(std::size_t n, const std::function<double(std::size_t)>& term);

}  // namespace paradiff
