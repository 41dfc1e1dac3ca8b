#pragma once

#include <functional>
#include <string>

#include "paradiff/partition.hpp"

namespace paradiff {

enum class SpaceKind { Besov, TriebelLizorkin, HomogeneousBesov };

std::string kind_name(SpaceKind k);
SpaceKind kind_from_name(const std::string& s);

// (quasi-)norm descriptor; p, q in (0, inf], infinities spelled as
// std::numeric_limits<double>::infinity().
struct NormSpec {
  SpaceKind kind = SpaceKind::TriebelLizorkin;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;

  bool quasi() const { return p < 1.0 || q < 1.0; }
  void validate() const;  // Triebel-Lizorkin requires p < inf
};

// || (sum_j 2^{sjq} |u_j|^q)^{1/q} ||_p  -- inner sum pointwise, then L_p.
double f_norm(const GridFunction& f, const NormSpec& spec, const DyadicPartition& part);

// ( sum_j (2^{sj} ||u_j||_p)^q )^{1/q}  -- L_p per block first.
double b_norm(const GridFunction& f, const NormSpec& spec, const DyadicPartition& part);

double space_norm(const GridFunction& f, const NormSpec& spec, const DyadicPartition& part);

// Homogeneous Besov norm of a row sampled on the frequency lattice. The
// window is treated as a period-n torus in the xi variable; blocks are the
// Fourier multipliers phi_j = Phi_1(2^{-j+1} .) acting on the dual variable,
// and L_p sums run over unit xi-cells. The j-range covers every corona
// meeting the dual grid; coronas below its spacing or above its Nyquist
// contribute nothing, and the mean of the row (dual frequency 0) is
// invisible to every block.
double hom_besov_norm_in_xi(const std::vector<cplx>& row, const TorusGrid& grid,
                            double s, double p, double q);
double hom_besov_norm_in_xi(const std::function<cplx(const RVec&)>& row, const TorusGrid& grid,
                            double s, double p, double q);

// Same norm on an explicit sampling window: npts points per axis at the given
// spacing (window extent npts * spacing per axis, dual grid accordingly).
// The lattice version is the special case spacing = 1, npts = grid.n.
double hom_besov_norm_window(const std::vector<cplx>& row, int dim, int npts, double spacing,
                             double s, double p, double q);

// Norm of the dilated row xi -> row(2^k xi), via the exact dyadic scaling
// factor 2^{k(s - n/p)}.
double hom_besov_norm_scaled(const std::vector<cplx>& row, const TorusGrid& grid,
                             int k, double s, double p, double q);

// t-power Hardy-Littlewood maximal function over dyadic radii 2pi 2^{-m},
// m = 0 .. log2(n)+1 (whole torus down to the single point), with averages
// by exact lattice counting on periodic balls. t in (0, 1].
GridFunction maximal(const GridFunction& f, double t);

// Test oracle: the same sup over every realizable ball radius.
GridFunction maximal_all_radii(const GridFunction& f, double t);

}  // namespace paradiff
