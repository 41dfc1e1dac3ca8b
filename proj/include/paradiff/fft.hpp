#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace paradiff {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// In-place radix-2 transform, unnormalized.
// sign = -1: sum f[m] e^{-2pi i mb/n};  sign = +1: the conjugate sum.
void fft_radix2(cplx* data, std::size_t n, int sign);

// Separable transform over every axis of a row-major array with `dim`
// axes of length n each (dim = 1 or 2). Unnormalized, same sign rule.
// Parallelizes over rows/columns; results are identical for any thread count.
void fft_axes(cplx* data, int dim, std::size_t n, int sign);

bool is_pow2(std::size_t n);

}  // namespace paradiff
