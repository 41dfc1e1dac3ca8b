#pragma once

#include <vector>

#include "paradiff/cutoff.hpp"
#include "paradiff/grid.hpp"

namespace paradiff {

// Littlewood-Paley partition sampled on the frequency lattice.
//
//   Psi_j(xi) = Psi(2^{-j} |xi|),   Phi_j = Psi_j - Psi_{j-1},  Psi_{-1} = 0.
//
// Public blocks run to j_max (resolution-limited by 13/10 * 2^j_max <= n/2).
// Internally the arrays extend to j_top, the first index with Psi_j == 1 on
// the whole lattice, so that symbol x-spectra are partitioned exactly; the
// auxiliary window Phi~_k = Phi_{k-1} + Phi_k + Phi_{k+1} is defined for
// every k <= j_max because j_top >= j_max + 1.
struct DyadicPartition {
  TorusGrid grid;
  int j_max = 0;
  int j_top = 0;
  CutoffProfile profile;
  std::vector<std::vector<double>> phi;  // [0 .. j_top]
  std::vector<std::vector<double>> psi;  // [0 .. j_top]

  const std::vector<double>& phi_j(int j) const;  // j <= j_top
  const std::vector<double>& psi_j(int j) const;
  std::vector<double> phi_tilde(int k) const;     // 0 <= k <= j_top - 1

  // formula evaluation at an arbitrary real frequency
  double phi_value(int j, double abs_xi) const;
  double psi_value(int j, double abs_xi) const;

  // homogeneous blocks phi_j(xi) = Phi_1(2^{-j+1} xi), any integer j
  double hom_phi_value(int j, double abs_xi) const;
};

DyadicPartition build_partition(const TorusGrid& grid, int j_max);

struct DyadicBlocks {
  GridFunction source;
  std::vector<GridFunction> blocks;  // index j = 0 .. j_max
};

GridFunction block(const GridFunction& f, int j, const DyadicPartition& part);
GridFunction low_pass(const GridFunction& f, int j, const DyadicPartition& part);

// Relative spectral energy above the resolved plateau |xi| <= 11/10 * 2^j_max.
double unresolved_energy_fraction(const SpectralFunction& F, const DyadicPartition& part);
void require_resolved(const SpectralFunction& F, const DyadicPartition& part,
                      double tol = 1e-12);

DyadicBlocks decompose(const GridFunction& f, const DyadicPartition& part);

// Multiplier application in place on spectral coefficients.
SpectralFunction apply_multiplier(const SpectralFunction& F, const std::vector<double>& mult);

}  // namespace paradiff
