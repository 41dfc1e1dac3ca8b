#include "paradiff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paradiff/reduce.hpp"

namespace paradiff {

double TorusGrid::cell_measure() const {
  double h = spacing();
  return dim == 1 ? h : h * h;
}

double TorusGrid::freq_radius(std::size_t flat) const {
  IVec xi = freq_at(flat);
  if (dim == 1) return std::abs(static_cast<double>(xi[0]));
  return std::hypot(static_cast<double>(xi[0]), static_cast<double>(xi[1]));
}

double TorusGrid::max_freq_radius() const {
  double h = n / 2.0;
  return dim == 1 ? h : std::sqrt(2.0) * h;
}

TorusGrid make_grid(int dim, int n) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("grid: dim must be 1 or 2");
  if (n < 64 || !is_pow2(static_cast<std::size_t>(n)))
    throw std::invalid_argument("grid: n must be a power of two >= 64");
  return TorusGrid{dim, n};
}

void check_finite(const std::vector<cplx>& v, const std::string& what) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument(what + ": non-finite entry");
}

GridFunction::GridFunction(const TorusGrid& g, std::vector<cplx> values) : grid(g), v(std::move(values)) {
  if (v.size() != g.size()) throw std::invalid_argument("GridFunction: value count != grid size");
  check_finite(v, "GridFunction");
}

SpectralFunction::SpectralFunction(const TorusGrid& g, std::vector<cplx> coeffs)
    : grid(g), c(std::move(coeffs)) {
  if (c.size() != g.size()) throw std::invalid_argument("SpectralFunction: coeff count != grid size");
  check_finite(c, "SpectralFunction");
}

SpectralFunction dft(const GridFunction& f) {
  if (f.v.size() != f.grid.size()) throw std::invalid_argument("dft: value count != grid size");
  SpectralFunction F(f.grid);
  F.c = f.v;
  fft_axes(F.c.data(), f.grid.dim, static_cast<std::size_t>(f.grid.n), -1);
  double scale = f.grid.cell_measure();
  for (cplx& z : F.c) z *= scale;
  return F;
}

GridFunction idft(const SpectralFunction& F) {
  if (F.c.size() != F.grid.size()) throw std::invalid_argument("idft: coeff count != grid size");
  GridFunction f(F.grid);
  f.v = F.c;
  fft_axes(f.v.data(), F.grid.dim, static_cast<std::size_t>(F.grid.n), +1);
  double scale = std::pow(kTwoPi, -F.grid.dim);
  for (cplx& z : f.v) z *= scale;
  return f;
}

double max_abs(const std::vector<cplx>& v) {
  return deterministic_max(v.size(), [&](std::size_t i) { return std::abs(v[i]); });
}

double lp_norm(const GridFunction& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
  if (std::isinf(p)) return max_abs(f.v);
  double s = deterministic_sum(f.v.size(), [&](std::size_t i) { return std::pow(std::abs(f.v[i]), p); });
  return std::pow(s * f.grid.cell_measure(), 1.0 / p);
}

std::vector<std::uint32_t> numerical_support(const SpectralFunction& F, double rel_threshold) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0))
    throw std::invalid_argument("numerical_support: threshold must be in (0,1)");
  double m = max_abs(F.c);
  std::vector<std::uint32_t> out;
  if (m == 0.0) return out;
  double cut = rel_threshold * m;
  for (std::size_t i = 0; i < F.c.size(); ++i)
    if (std::abs(F.c[i]) > cut) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
  GridFunction r(a.grid);
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
  GridFunction r(a.grid);
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}

GridFunction operator*(const cplx& s, const GridFunction& a) {
  GridFunction r(a.grid);
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = s * a.v[i];
  return r;
}

double l2_distance(const GridFunction& a, const GridFunction& b) { return lp_norm(a - b, 2.0); }

}  // namespace paradiff
