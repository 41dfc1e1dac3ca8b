#pragma once

#include <optional>

#include "paradiff/symbols.hpp"

namespace paradiff {

// Spectra of the outer-index terms of one series (k for the low-high and
// diagonal series, j for the high-low one), for the inclusion checks.
struct SeriesSpectra {
  std::vector<int> outer;
  std::vector<SpectralFunction> spectra;
};

struct ParaResult {
  GridFunction term1, term2, term3;  // a^(1) u, a^(2) u, a^(3) u
  GridFunction total;
  std::optional<SeriesSpectra> spectra1, spectra2, spectra3;
};

// a_{j,k}(x,D) u_k = OP(Phi_j(D_x) a(x,xi) Phi~_k(xi) Phi_k(xi)) u by exact
// discrete quadrature. Public indices honour j, k <= j_max.
GridFunction piece_apply(const Symbol& a, int j, int k, const GridFunction& u,
                         const DyadicPartition& part);
// Test hook: the same piece without the redundant Phi~_k window.
GridFunction piece_apply_no_tilde(const Symbol& a, int j, int k, const GridFunction& u,
                                  const DyadicPartition& part);

GridFunction series1(const Symbol& a, const GridFunction& u, const DyadicPartition& part);
GridFunction series2(const Symbol& a, const GridFunction& u, const DyadicPartition& part);
GridFunction series3(const Symbol& a, const GridFunction& u, const DyadicPartition& part);

ParaResult apply(const Symbol& a, const GridFunction& u, const DyadicPartition& part,
                 bool keep_spectra = false);

// Direct quadrature oracle (2pi)^{-n} sum_eta e^{i x.eta} a(x,eta) u^(eta),
// evaluated through Symbol::eval; O(n^{2 dim}).
GridFunction direct_apply(const Symbol& a, const GridFunction& u);

}  // namespace paradiff
