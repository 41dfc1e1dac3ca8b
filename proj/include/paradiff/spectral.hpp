#pragma once

#include <optional>
#include <string>

#include "paradiff/paradiff.hpp"

namespace paradiff {

struct SupportClaim {
  std::string id;
  bool pass = false;
  double threshold = 0.0;
  double max_coeff = 0.0;        // peak of the observed spectrum
  double worst_violation = 0.0;  // largest |coeff| outside the predicted set
  // corona / ball description when the prediction is a radial region
  double radius_lo = -1.0;
  double radius_hi = -1.0;
  std::vector<std::uint32_t> predicted;  // flat bins (support-rule case)
  std::vector<std::uint32_t> observed;
};

// supp F(a(x,D)v) against {xi + eta | (xi,eta) in supp a^, eta in supp v^},
// with both supports thresholded at `threshold` relative to their peaks, sums
// folded into the lattice window, and the predicted set dilated by
// `dilation_cells` (Chebyshev; negative erodes, for tightness experiments).
SupportClaim support_rule_check(const Symbol& a, const GridFunction& v, double threshold,
                                int dilation_cells = 1);

// Clausal spectra of a ParaResult (requires keep_spectra):
//   low-high terms   in  1/5 2^k <= |xi| <= 13/8 2^k
//   diagonal terms   in  |xi| <= 4 2^k
//   high-low terms   in  1/5 2^j <= |xi| <= 13/8 2^j
// plus, when C is given, the annulus floor 2^k/(4C) for k > 3 + log2(5C).
// All bounds are slackened by one lattice cell diagonal.
std::vector<SupportClaim> inclusion_check(const ParaResult& res, const DyadicPartition& part,
                                          std::optional<double> C_twisted = std::nullopt,
                                          double threshold = 1e-10);

std::string claims_csv(const std::vector<SupportClaim>& claims);

}  // namespace paradiff
