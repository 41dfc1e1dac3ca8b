#include "paradiff/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "paradiff/reduce.hpp"

namespace paradiff {

const std::vector<double>& DyadicPartition::phi_j(int j) const {
  if (j < 0 || j > j_top) throw std::invalid_argument("partition: block index out of range");
  return phi[static_cast<std::size_t>(j)];
}

const std::vector<double>& DyadicPartition::psi_j(int j) const {
  if (j < 0 || j > j_top) throw std::invalid_argument("partition: block index out of range");
  return psi[static_cast<std::size_t>(j)];
}

std::vector<double> DyadicPartition::phi_tilde(int k) const {
  if (k < 0 || k + 1 > j_top) throw std::invalid_argument("partition: phi_tilde index out of range");
  std::vector<double> w = phi[static_cast<std::size_t>(k)];
  const std::vector<double>& up = phi[static_cast<std::size_t>(k + 1)];
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += up[i];
  if (k > 0) {
    const std::vector<double>& dn = phi[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += dn[i];
  }
  return w;
}

double DyadicPartition::psi_value(int j, double abs_xi) const {
  if (j < 0) return 0.0;
  return profile(std::ldexp(abs_xi, -j));
}

double DyadicPartition::phi_value(int j, double abs_xi) const {
  return psi_value(j, abs_xi) - psi_value(j - 1, abs_xi);
}

double DyadicPartition::hom_phi_value(int j, double abs_xi) const {
  double y = std::ldexp(abs_xi, -j + 1);  // Phi_1(y) = Psi(y/2) - Psi(y)
  return profile(0.5 * y) - profile(y);
}

DyadicPartition build_partition(const TorusGrid& grid, int j_max) {
  if (j_max < 0) throw std::invalid_argument("build_partition: j_max must be >= 0");
  // resolution condition: 13/10 * 2^j_max <= n/2, exactly in integers
  if (13L * (1L << j_max) > 5L * grid.n)
    throw std::invalid_argument("build_partition: j_max too large for grid");

  DyadicPartition part;
  part.grid = grid;
  part.j_max = j_max;

  double max_r = grid.max_freq_radius();
  int j_top = j_max + 1;
  while (std::ldexp(CutoffProfile::kLower, j_top) < max_r) ++j_top;
  part.j_top = j_top;

  std::size_t sz = grid.size();
  std::vector<double> radius(sz);
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) radius[i] = grid.freq_radius(i);
  });

  part.psi.assign(static_cast<std::size_t>(j_top) + 1, std::vector<double>(sz));
  part.phi.assign(static_cast<std::size_t>(j_top) + 1, std::vector<double>(sz));
  for (int j = 0; j <= j_top; ++j) {
    std::vector<double>& pj = part.psi[static_cast<std::size_t>(j)];
    parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) pj[i] = part.profile(std::ldexp(radius[i], -j));
    });
    std::vector<double>& fj = part.phi[static_cast<std::size_t>(j)];
    const std::vector<double>* prev = j > 0 ? &part.psi[static_cast<std::size_t>(j - 1)] : nullptr;
    parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) fj[i] = prev ? pj[i] - (*prev)[i] : pj[i];
    });
  }
  return part;
}

SpectralFunction apply_multiplier(const SpectralFunction& F, const std::vector<double>& mult) {
  if (mult.size() != F.c.size()) throw std::invalid_argument("apply_multiplier: size mismatch");
  SpectralFunction G(F.grid);
  for (std::size_t i = 0; i < F.c.size(); ++i) G.c[i] = mult[i] * F.c[i];
  return G;
}

GridFunction block(const GridFunction& f, int j, const DyadicPartition& part) {
  if (!(f.grid == part.grid)) throw std::invalid_argument("block: grid mismatch");
  if (j < 0 || j > part.j_max) throw std::invalid_argument("block: j out of range");
  return idft(apply_multiplier(dft(f), part.phi_j(j)));
}

GridFunction low_pass(const GridFunction& f, int j, const DyadicPartition& part) {
  if (!(f.grid == part.grid)) throw std::invalid_argument("low_pass: grid mismatch");
  if (j < 0 || j > part.j_max) throw std::invalid_argument("low_pass: j out of range");
  return idft(apply_multiplier(dft(f), part.psi_j(j)));
}

double unresolved_energy_fraction(const SpectralFunction& F, const DyadicPartition& part) {
  double plateau = std::ldexp(CutoffProfile::kLower, part.j_max);
  double total = deterministic_sum(F.c.size(), [&](std::size_t i) { return std::norm(F.c[i]); });
  if (total == 0.0) return 0.0;
  double tail = deterministic_sum(F.c.size(), [&](std::size_t i) {
    return part.grid.freq_radius(i) > plateau ? std::norm(F.c[i]) : 0.0;
  });
  return tail / total;
}

void require_resolved(const SpectralFunction& F, const DyadicPartition& part, double tol) {
  if (unresolved_energy_fraction(F, part) > tol)
    throw std::invalid_argument("input not resolved: spectral energy above 11/10 * 2^j_max");
}

DyadicBlocks decompose(const GridFunction& f, const DyadicPartition& part) {
  if (!(f.grid == part.grid)) throw std::invalid_argument("decompose: grid mismatch");
  SpectralFunction F = dft(f);
  require_resolved(F, part);
  DyadicBlocks out;
  out.source = f;
  out.blocks.reserve(static_cast<std::size_t>(part.j_max) + 1);
  for (int j = 0; j <= part.j_max; ++j)
    out.blocks.push_back(idft(apply_multiplier(F, part.phi_j(j))));
  return out;
}

}  // namespace paradiff
