#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "paradiff/fft.hpp"

namespace paradiff {

// Points and frequencies live in at most two axes; component i >= dim is 0.
using RVec = std::array<double, 2>;
using IVec = std::array<int, 2>;

// Periodic grid on [0, 2pi)^dim with n samples per axis (power of two,
// n >= 64). The frequency lattice is the integer set [-n/2, n/2)^dim.
struct TorusGrid {
  int dim = 1;
  int n = 64;

  std::size_t size() const { return dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n; }
  double spacing() const { return kTwoPi / n; }
  double cell_measure() const;                   // (2pi/n)^dim
  double lattice_measure() const { return 1.0; } // unit cells on the integer lattice

  int freq_of_bin(int b) const { return b < n / 2 ? b : b - n; }
  int bin_of_freq(int f) const { return f >= 0 ? f : f + n; }

  IVec bin_coords(std::size_t flat) const {
    if (dim == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / n), static_cast<int>(flat % n)};
  }
  std::size_t flat_index(const IVec& bins) const {
    return dim == 1 ? static_cast<std::size_t>(bins[0])
                    : static_cast<std::size_t>(bins[0]) * n + bins[1];
  }

  IVec freq_at(std::size_t flat) const {
    IVec b = bin_coords(flat);
    return {freq_of_bin(b[0]), dim == 2 ? freq_of_bin(b[1]) : 0};
  }
  std::size_t flat_of_freq(const IVec& xi) const {
    return dim == 1 ? static_cast<std::size_t>(bin_of_freq(xi[0]))
                    : static_cast<std::size_t>(bin_of_freq(xi[0])) * n + bin_of_freq(xi[1]);
  }
  bool freq_in_range(const IVec& xi) const {
    for (int a = 0; a < dim; ++a)
      if (xi[a] < -n / 2 || xi[a] >= n / 2) return false;
    return true;
  }

  RVec point_at(std::size_t flat) const {
    IVec m = bin_coords(flat);
    return {spacing() * m[0], dim == 2 ? spacing() * m[1] : 0.0};
  }

  double freq_radius(std::size_t flat) const;  // |xi| at a lattice bin
  double max_freq_radius() const;

  bool operator==(const TorusGrid& o) const { return dim == o.dim && n == o.n; }
};

TorusGrid make_grid(int dim, int n);  // validates dim in {1,2}, n = 2^k >= 64

// Complex samples over grid points (row-major, x-major for dim 2).
struct GridFunction {
  TorusGrid grid;
  std::vector<cplx> v;

  GridFunction() = default;
  GridFunction(const TorusGrid& g, cplx fill = cplx(0.0)) : grid(g), v(g.size(), fill) {}
  GridFunction(const TorusGrid& g, std::vector<cplx> values);

  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }
};

// Fourier coefficients over the frequency lattice, in FFT bin order.
struct SpectralFunction {
  TorusGrid grid;
  std::vector<cplx> c;

  SpectralFunction() = default;
  SpectralFunction(const TorusGrid& g, cplx fill = cplx(0.0)) : grid(g), c(g.size(), fill) {}
  SpectralFunction(const TorusGrid& g, std::vector<cplx> coeffs);

  cplx& at_freq(const IVec& xi) { return c[grid.flat_of_freq(xi)]; }
  const cplx& at_freq(const IVec& xi) const { return c[grid.flat_of_freq(xi)]; }
};

// Coefficient at xi approximates int_T f e^{-i x xi} dx; idft inverts exactly.
SpectralFunction dft(const GridFunction& f);
GridFunction idft(const SpectralFunction& F);

// Rectangle-rule L_p quasi-norm, (sum |f|^p (2pi/n)^dim)^{1/p}; max for p = inf.
double lp_norm(const GridFunction& f, double p);

// Frequencies with |coeff| > rel_threshold * max |coeff| (empty for F == 0),
// as sorted flat bin indices. Requires 0 < rel_threshold < 1.
std::vector<std::uint32_t> numerical_support(const SpectralFunction& F, double rel_threshold);

double max_abs(const std::vector<cplx>& v);
void check_finite(const std::vector<cplx>& v, const std::string& what);

// Pointwise helpers used across modules.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const cplx& s, const GridFunction& a);
double l2_distance(const GridFunction& a, const GridFunction& b);  // lp_norm(a-b, 2)

}  // namespace paradiff
