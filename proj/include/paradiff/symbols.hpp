#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "paradiff/partition.hpp"

namespace paradiff {

using EtaProfile = std::function<cplx(const RVec& xi)>;

// One x-oscillation e^{i x.nu} carrying its own frequency profile.
struct XModeTerm {
  IVec nu{0, 0};
  EtaProfile g;
};

// Multiplier term m(x) g(xi), with the multiplier held spectrally so the
// x-side Littlewood-Paley pieces are exact lattice products.
struct SeparableTerm {
  SpectralFunction m_hat;
  EtaProfile g;
};

using SymbolStructure =
    std::variant<std::monostate, std::vector<XModeTerm>, std::vector<SeparableTerm>>;

// Symbol a(x, xi): order d, a pointwise evaluator over real (x, xi), optional
// derivative closures, and an optional exact spectral structure used by the
// fast application and support machinery.
struct Symbol {
  std::string name = "symbol";
  double order = 0.0;
  int dim = 1;

  std::function<cplx(const RVec& x, const RVec& xi)> eval;

  // Analytic D_x^beta D_xi^alpha closures, valid for |beta| <= deriv_x_max,
  // |alpha| <= deriv_xi_max; -1 means unavailable (finite differences only).
  int deriv_x_max = -1;
  int deriv_xi_max = -1;
  std::function<cplx(const RVec& x, const RVec& xi, const IVec& beta, const IVec& alpha)> deriv;

  SymbolStructure structure;

  bool has_structure() const { return !std::holds_alternative<std::monostate>(structure); }
};

// --- constructors -----------------------------------------------------------

Symbol identity_symbol(int dim);
Symbol constant_symbol(int dim, cplx value);

// x-independent multiplier with order d; analytic xi-derivatives optional.
Symbol multiplier_symbol(int dim, double order, const std::string& name,
                         std::function<cplx(const RVec&)> m);
Symbol bessel_multiplier_symbol(int dim, double order);          // (1+|xi|^2)^{d/2}
Symbol gaussian_multiplier_symbol(int dim, double sigma);        // exp(-|xi|^2/(2 sigma^2))

// a(x, xi) = sum_{j>=1} 2^{jd} Phi_j(xi) e^{-i x_n 2^j}, truncated at j_max.
Symbol ching_symbol(double d, const DyadicPartition& part);

// sum_j m_j(x) Phi_j(xi); at most j_max + 1 multipliers.
Symbol reduced_symbol(const std::vector<GridFunction>& multipliers, const DyadicPartition& part);

// Linearisation symbol a_u = sum_j m_j(x) Phi_j(xi) with
// m_j = int_0^1 F'(u^{j-1} + t u_j) dt (16-point Gauss-Legendre in t).
// Requires real-valued u.
Symbol nonlinear_symbol(const std::function<double(double)>& F_prime, const GridFunction& u,
                        const DyadicPartition& part);

// Symbol from samples a(x_i, eta_l), x-major layout [x_flat * lat + eta_flat].
Symbol sampled_symbol(const TorusGrid& grid, std::vector<cplx> x_major_values,
                      double order = 0.0);

// Sparse random modes across the coronas whose partial Fourier transform is
// zeroed exactly on the cone C(|xi+eta|+1) <= |eta|.
Symbol twisted_cutoff_symbol(const DyadicPartition& part, double C, std::uint64_t seed,
                             double order = 0.0, int modes_per_corona = 2);

// Same symbol with every eta-profile multiplied by Psi_k (band limitation).
Symbol band_limit_symbol(const Symbol& a, int k);

// --- partial Fourier transform in x -----------------------------------------

// Row xi -> a^(xi, eta) for one lattice eta.
SpectralFunction partial_ft_row(const Symbol& a, const TorusGrid& grid, const IVec& eta);

double partial_ft_max_abs(const Symbol& a, const TorusGrid& grid);

// Streams every lattice pair with |a^(xi, eta)| > abs_cutoff.
void scan_partial_ft(const Symbol& a, const TorusGrid& grid, double abs_cutoff,
                     const std::function<void(std::uint32_t xi_flat, std::uint32_t eta_flat,
                                              double abs_value)>& fn);

// --- seminorms and the twisted-diagonal test ---------------------------------

struct SeminormReport {
  int l = 0, m = 0;
  double value = 0.0;
  std::size_t x_samples = 0, xi_samples = 0;
};

// mu_{l,m}(a) = sup (1+|xi|)^{-(d-|alpha|+|beta|)} |D_x^beta D_xi^alpha a|
// over sampled grid x lattice pairs, |beta| <= l, |alpha| <= m. Falls back to
// 4th-order central differences (step 2^-7 (1+|xi|) in xi, one cell in x)
// when closures are missing and allow_fd is set.
SeminormReport seminorm(const Symbol& a, int l, int m, const TorusGrid& grid,
                        bool allow_fd = true);

struct TwistedReport {
  bool ok = false;
  double max_abs = 0.0;
  double worst = 0.0;  // largest |a^| inside the cone
  std::vector<std::pair<IVec, IVec>> witnesses;
};

// True iff |a^(xi,eta)| <= rel_threshold * max|a^| wherever C(|xi+eta|+1) <= |eta|.
TwistedReport twisted_diagonal_check(const Symbol& a, double C, const TorusGrid& grid,
                                     double rel_threshold);

}  // namespace paradiff
