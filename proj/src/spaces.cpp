#include "paradiff/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "paradiff/reduce.hpp"

namespace paradiff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Besov: return "B";
    case SpaceKind::TriebelLizorkin: return "F";
    case SpaceKind::HomogeneousBesov: return "Bdot";
  }
  return "?";
}

SpaceKind kind_from_name(const std::string& s) {
  if (s == "B" || s == "besov" || s == "Besov") return SpaceKind::Besov;
  if (s == "F" || s == "triebel-lizorkin" || s == "TriebelLizorkin") return SpaceKind::TriebelLizorkin;
  if (s == "Bdot" || s == "homogeneous-besov") return SpaceKind::HomogeneousBesov;
  throw std::invalid_argument("unknown space kind: " + s);
}

void NormSpec::validate() const {
  if (!(p > 0.0)) throw std::invalid_argument("NormSpec: p must be positive");
  if (!(q > 0.0)) throw std::invalid_argument("NormSpec: q must be positive");
  if (kind == SpaceKind::TriebelLizorkin && std::isinf(p))
    throw std::invalid_argument("NormSpec: Triebel-Lizorkin requires p < inf");
}

double f_norm(const GridFunction& f, const NormSpec& spec, const DyadicPartition& part) {
  spec.validate();
  if (spec.kind != SpaceKind::TriebelLizorkin)
    throw std::invalid_argument("f_norm: spec kind must be Triebel-Lizorkin");
  DyadicBlocks blocks = decompose(f, part);

  std::size_t sz = f.grid.size();
  GridFunction inner(f.grid);
  int jn = part.j_max + 1;
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double acc = 0.0;
      if (std::isinf(spec.q)) {
        for (int j = 0; j < jn; ++j)
          acc = std::max(acc, std::exp2(spec.s * j) * std::abs(blocks.blocks[j].v[i]));
      } else {
        for (int j = 0; j < jn; ++j) {
          double w = std::exp2(spec.s * j) * std::abs(blocks.blocks[j].v[i]);
          acc += std::pow(w, spec.q);
        }
        acc = std::pow(acc, 1.0 / spec.q);
      }
      inner.v[i] = acc;
    }
  });
  return lp_norm(inner, spec.p);
}

double b_norm(const GridFunction& f, const NormSpec& spec, const DyadicPartition& part) {
  spec.validate();
  if (spec.kind != SpaceKind::Besov)
    throw std::invalid_argument("b_norm: spec kind must be Besov");
  DyadicBlocks blocks = decompose(f, part);

  double acc = 0.0;
  for (int j = 0; j <= part.j_max; ++j) {
    double w = std::exp2(spec.s * j) * lp_norm(blocks.blocks[static_cast<std::size_t>(j)], spec.p);
    if (std::isinf(spec.q))
      acc = std::max(acc, w);
    else
      acc += std::pow(w, spec.q);
  }
  return std::isinf(spec.q) ? acc : std::pow(acc, 1.0 / spec.q);
}

double space_norm(const GridFunction& f, const NormSpec& spec, const DyadicPartition& part) {
  if (spec.kind == SpaceKind::Besov) return b_norm(f, spec, part);
  if (spec.kind == SpaceKind::TriebelLizorkin) return f_norm(f, spec, part);
  throw std::invalid_argument("space_norm: homogeneous norms act on lattice rows");
}

double hom_besov_norm_window(const std::vector<cplx>& row, int dim, int npts, double spacing,
                             double s, double p, double q) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("hom norm: dim must be 1 or 2");
  if (npts < 2 || !is_pow2(static_cast<std::size_t>(npts)))
    throw std::invalid_argument("hom norm: npts must be a power of two");
  std::size_t sz = dim == 1 ? static_cast<std::size_t>(npts)
                            : static_cast<std::size_t>(npts) * npts;
  if (row.size() != sz) throw std::invalid_argument("hom norm: row size != window size");
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("hom norm: p, q must be positive");
  if (!(spacing > 0.0)) throw std::invalid_argument("hom norm: spacing must be positive");
  if (max_abs(row) == 0.0) return 0.0;

  // dual grid of the window: z = (2pi / (npts spacing)) m, m in [-npts/2, npts/2)
  std::vector<cplx> zhat = row;
  fft_axes(zhat.data(), dim, static_cast<std::size_t>(npts), -1);
  double zstep = kTwoPi / (npts * spacing);
  auto freq_radius = [&](std::size_t i) -> double {
    int b0 = dim == 1 ? static_cast<int>(i) : static_cast<int>(i / npts);
    int b1 = dim == 1 ? 0 : static_cast<int>(i % npts);
    double f0 = b0 < npts / 2 ? b0 : b0 - npts;
    double f1 = b1 < npts / 2 ? b1 : b1 - npts;
    return dim == 1 ? std::abs(f0) : std::hypot(f0, f1);
  };

  CutoffProfile prof;
  double z_min = zstep;
  double z_max = zstep * (dim == 1 ? npts / 2.0 : std::sqrt(2.0) * npts / 2.0);
  int j_lo = 0;
  while (std::ldexp(1.3, j_lo) >= z_min) --j_lo;
  ++j_lo;
  int j_hi = 0;
  while (std::ldexp(0.55, j_hi + 1) <= z_max) ++j_hi;

  double inv_sz = 1.0 / static_cast<double>(sz);
  double cell = dim == 1 ? spacing : spacing * spacing;
  std::vector<double> weighted;
  std::vector<cplx> block(sz);
  for (int j = j_lo; j <= j_hi; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < sz; ++i) {
      double y = std::ldexp(zstep * freq_radius(i), -j + 1);  // phi_j(z) = Psi(y/2) - Psi(y)
      double w = prof(0.5 * y) - prof(y);
      block[i] = w == 0.0 ? cplx(0.0) : w * zhat[i] * inv_sz;
      any = any || block[i] != cplx(0.0);
    }
    if (!any) continue;
    fft_axes(block.data(), dim, static_cast<std::size_t>(npts), +1);
    double lp;
    if (std::isinf(p)) {
      lp = 0.0;
      for (std::size_t i = 0; i < sz; ++i) lp = std::max(lp, std::abs(block[i]));
    } else {
      double sum = deterministic_sum(sz, [&](std::size_t i) { return std::pow(std::abs(block[i]), p); });
      lp = std::pow(sum * cell, 1.0 / p);
    }
    weighted.push_back(std::exp2(s * j) * lp);
  }
  // blocks at the transform noise floor would be amplified by a quasi-norm
  // combination (q < 1); drop them relative to the largest block
  double w_max = 0.0;
  for (double w : weighted) w_max = std::max(w_max, w);
  if (w_max == 0.0) return 0.0;
  double floor = 1e-11 * w_max;
  if (std::isinf(q)) return w_max;
  double acc = 0.0;
  for (double w : weighted)
    if (w > floor) acc += std::pow(w, q);
  return std::pow(acc, 1.0 / q);
}

double hom_besov_norm_in_xi(const std::vector<cplx>& row, const TorusGrid& grid,
                            double s, double p, double q) {
  return hom_besov_norm_window(row, grid.dim, grid.n, 1.0, s, p, q);
}

double hom_besov_norm_in_xi(const std::function<cplx(const RVec&)>& row, const TorusGrid& grid,
                            double s, double p, double q) {
  std::vector<cplx> sampled(grid.size());
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      IVec xi = grid.freq_at(i);
      sampled[i] = row({static_cast<double>(xi[0]), static_cast<double>(xi[1])});
    }
  });
  return hom_besov_norm_in_xi(sampled, grid, s, p, q);
}

double hom_besov_norm_scaled(const std::vector<cplx>& row, const TorusGrid& grid,
                             int k, double s, double p, double q) {
  double base = hom_besov_norm_in_xi(row, grid, s, p, q);
  return std::exp2(k * (s - grid.dim / p)) * base;
}

namespace {

// Ball offset table for one radius: per row offset, the half-width of the
// contiguous column range (torus metric), plus the exact point count.
struct BallShape {
  std::vector<std::pair<int, int>> rows;  // (row offset o_y in [0,n), half-width)
  std::size_t count = 0;
};

int torus_abs(int o, int n) { return std::min(o, n - o); }

BallShape ball_shape(const TorusGrid& grid, double rho) {
  BallShape b;
  int n = grid.n;
  if (grid.dim == 1) {
    int w = static_cast<int>(std::floor(rho));
    w = std::min(w, n / 2);
    b.rows.push_back({0, w});
    b.count = (w == n / 2) ? static_cast<std::size_t>(n) : static_cast<std::size_t>(2 * w + 1);
    return b;
  }
  for (int oy = 0; oy < n; ++oy) {
    int dy = torus_abs(oy, n);
    double rem = rho * rho - static_cast<double>(dy) * dy;
    if (rem < 0.0) continue;
    int w = static_cast<int>(std::floor(std::sqrt(rem)));
    w = std::min(w, n / 2);
    b.rows.push_back({oy, w});
    b.count += (w == n / 2) ? static_cast<std::size_t>(n) : static_cast<std::size_t>(2 * w + 1);
  }
  return b;
}

// circular range sum of prefix array P (size n+1) centered at i, half-width w
double range_sum(const std::vector<double>& P, int n, int i, int w) {
  if (2 * w + 1 >= n) return P[static_cast<std::size_t>(n)];
  int lo = i - w, hi = i + w;  // inclusive
  double s = 0.0;
  if (lo < 0) {
    s += P[static_cast<std::size_t>(n)] - P[static_cast<std::size_t>(lo + n)];
    lo = 0;
  }
  if (hi >= n) {
    s += P[static_cast<std::size_t>(hi - n + 1)];
    hi = n - 1;
  }
  s += P[static_cast<std::size_t>(hi + 1)] - P[static_cast<std::size_t>(lo)];
  return s;
}

GridFunction maximal_over(const GridFunction& f, double t, const std::vector<double>& radii_cells) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("maximal: t must be in (0,1]");
  const TorusGrid& g = f.grid;
  int n = g.n;
  std::size_t sz = g.size();

  std::vector<double> ft(sz);
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) ft[i] = std::pow(std::abs(f.v[i]), t);
  });

  // per-row circular prefix sums of |f|^t
  std::size_t nrows = g.dim == 1 ? 1 : static_cast<std::size_t>(n);
  std::vector<std::vector<double>> prefix(nrows, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (std::size_t r = 0; r < nrows; ++r)
    for (int cidx = 0; cidx < n; ++cidx)
      prefix[r][static_cast<std::size_t>(cidx) + 1] =
          prefix[r][static_cast<std::size_t>(cidx)] + ft[r * static_cast<std::size_t>(n) + cidx];

  GridFunction out(g);
  std::vector<double> best(sz, 0.0);
  for (double rho : radii_cells) {
    BallShape shape = ball_shape(g, rho);
    if (shape.count == 0) continue;
    double inv = 1.0 / static_cast<double>(shape.count);
    parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        int iy, ix;
        if (g.dim == 1) {
          iy = 0;
          ix = static_cast<int>(i);
        } else {
          iy = static_cast<int>(i / static_cast<std::size_t>(n));
          ix = static_cast<int>(i % static_cast<std::size_t>(n));
        }
        double s = 0.0;
        for (const auto& [oy, w] : shape.rows) {
          int row = g.dim == 1 ? 0 : (iy + oy) % n;
          s += range_sum(prefix[static_cast<std::size_t>(row)], n, ix, w);
        }
        double avg = s * inv;
        if (avg > best[i]) best[i] = avg;
      }
    });
  }
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out.v[i] = std::pow(best[i], 1.0 / t);
  });
  return out;
}

}  // namespace

GridFunction maximal(const GridFunction& f, double t) {
  int n = f.grid.n;
  int mmax = 0;
  while ((1 << mmax) < n) ++mmax;  // n = 2^mmax
  std::vector<double> radii;
  // r = 2pi 2^{-m}; in lattice cells that is n 2^{-m}, m = 0 .. mmax+1
  for (int m = 0; m <= mmax + 1; ++m) radii.push_back(std::ldexp(static_cast<double>(n), -m));
  return maximal_over(f, t, radii);
}

GridFunction maximal_all_radii(const GridFunction& f, double t) {
  // every realizable ball: squared lattice radii are integers
  int n = f.grid.n;
  std::vector<double> radii;
  if (f.grid.dim == 1) {
    for (int w = 0; w <= n / 2; ++w) radii.push_back(static_cast<double>(w));
  } else {
    int max2 = (n / 2) * (n / 2) * 2;
    for (int s2 = 0; s2 <= max2; ++s2) radii.push_back(std::sqrt(static_cast<double>(s2)));
  }
  return maximal_over(f, t, radii);
}

}  // namespace paradiff
