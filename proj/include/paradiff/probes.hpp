#pragma once

#include <cstdint>

#include "paradiff/io.hpp"
#include "paradiff/spaces.hpp"
#include "paradiff/symbols.hpp"

namespace paradiff {

// --- inputs ------------------------------------------------------------------

// Base profile theta with spectrum in the Euclidean lattice ball of radius
// r_theta in {0, 1, 2} (r_theta = 0: theta == 1) and dc coefficient (2pi)^n.
GridFunction theta_base(const TorusGrid& grid, int r_theta);

struct ThetaFamily {
  double d = 0.0;
  int r_theta = 0;
  std::vector<int> n_values;
  GridFunction theta;
  double theta_dc = 0.0;  // coefficient at xi = 0
  std::vector<GridFunction> members;  // theta_N per N
};

// theta_N^ = sum_{j=N}^{N^2} 2^{-jd}/j theta^(. - 2^j e_n), assembled
// spectrally. Requires N >= 1, N^2 <= j_max, and 20 r_theta <= 2^N for
// r_theta > 0.
ThetaFamily build_theta_family(double d, const std::vector<int>& n_range, int r_theta,
                               const TorusGrid& grid, const DyadicPartition& part);

// Seeded inputs. Spectral coefficients are drawn per lattice frequency from a
// hash of (seed, xi), so refining the grid extends the same trigonometric
// polynomial instead of redrawing it.
GridFunction random_resolved(const TorusGrid& grid, const DyadicPartition& part,
                             std::uint64_t seed, int j_gen = -1);
GridFunction random_band_limited(const TorusGrid& grid, double radius, std::uint64_t seed);
// Normalized so that space_norm(u, spec, part) == 1.
GridFunction random_shaped(const TorusGrid& grid, const DyadicPartition& part,
                           const NormSpec& spec, std::uint64_t seed);

cplx pairing(const GridFunction& f, const GridFunction& g);  // bilinear quadrature

// --- probes ------------------------------------------------------------------

// Reproduces the counterexample dichotomy: operator identity against the
// harmonic closed form, pairing growth, closed-form norms per (t, q), and the
// growth-ratio table with exact rational references.
Report counterexample_run(double d, const std::vector<int>& n_range,
                          const std::vector<double>& q_list, const std::vector<double>& t_list,
                          const TorusGrid& grid, const DyadicPartition& part);

struct BoundednessReport {
  std::string symbol_name;
  std::string source, target;
  std::vector<double> ratios;
  double sup_ratio = 0.0;
  double slope = 0.0;  // log-log fit of ratio against input index
  std::string diagnosis;
};

BoundednessReport boundedness_probe(const Symbol& a, const NormSpec& spec, double d,
                                    const std::vector<GridFunction>& inputs,
                                    const DyadicPartition& part);

struct MarschallResult {
  double sup_ratio = 0.0;
  bool finite = true;
  std::size_t points_used = 0;
};

// Sup over grid points of |b(x,D)v(x)| / (||b(x,2^k.)||_{B^{n/t}_{1,t}} M_t v(x))
// after band-limiting both slots below 2^k.
MarschallResult marschall_probe(const Symbol& a, const GridFunction& v, int k, double t,
                                const DyadicPartition& part);

struct EmpiricalConstant {
  double c_emp = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// max over families of ||(sum_k (M_t f_k)^q)^{1/q}||_p / ||(sum_k |f_k|^q)^{1/q}||_p
EmpiricalConstant fefferman_stein_constant(const TorusGrid& grid, const DyadicPartition& part,
                                           double p, double q, double t, int n_families,
                                           int family_size, std::uint64_t seed);

// max over draws of ||f||_1 / (R^{n/t-n} ||f||_t) for spectra in B(0, R)
EmpiricalConstant nikolskii_constant(const TorusGrid& grid, double t,
                                     const std::vector<double>& radii, int draws_per_radius,
                                     std::uint64_t seed);

double vector_lq_lp(const std::vector<GridFunction>& fs, double q, double p);

}  // namespace paradiff
