#include "paradiff/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "paradiff/reduce.hpp"

namespace paradiff {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

void bit_reverse(cplx* a, std::size_t n) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

// Twiddle table: tw[k] = exp(sign * 2pi i k / n), k < n/2. Butterflies read
// the table directly (no incremental products), keeping roundoff at
// O(log n) ulp and the output independent of blocking.
std::vector<cplx> twiddle_table(std::size_t n, int sign) {
  std::vector<cplx> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double ang = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = cplx(std::cos(ang), std::sin(ang));
  }
  return tw;
}

void fft_with_table(cplx* a, std::size_t n, const std::vector<cplx>& tw) {
  bit_reverse(a, n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        cplx w = tw[j * step];
        cplx u = a[i + j];
        cplx t = a[i + j + len / 2] * w;
        a[i + j] = u + t;
        a[i + j + len / 2] = u - t;
      }
    }
  }
}

}  // namespace

void fft_radix2(cplx* data, std::size_t n, int sign) {
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  if (n == 1) return;
  fft_with_table(data, n, twiddle_table(n, sign));
}

void fft_axes(cplx* data, int dim, std::size_t n, int sign) {
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  std::vector<cplx> tw = twiddle_table(n, sign);
  if (dim == 1) {
    fft_with_table(data, n, tw);
    return;
  }
  if (dim != 2) throw std::invalid_argument("fft: dim must be 1 or 2");

  parallel_for(n, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) fft_with_table(data + r * n, n, tw);
  });
  parallel_for(n, [&](std::size_t c0, std::size_t c1) {
    std::vector<cplx> col(n);
    for (std::size_t c = c0; c < c1; ++c) {
      for (std::size_t r = 0; r < n; ++r) col[r] = data[r * n + c];
      fft_with_table(col.data(), n, tw);
      for (std::size_t r = 0; r < n; ++r) data[r * n + c] = col[r];
    }
  });
}

}  // namespace paradiff
