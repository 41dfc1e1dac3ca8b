#include "paradiff/spectral.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace paradiff {

namespace {

// set ops on bitmaps over lattice bins
std::vector<char> to_bitmap(const std::vector<std::uint32_t>& set, std::size_t sz) {
  std::vector<char> b(sz, 0);
  for (std::uint32_t i : set) b[i] = 1;
  return b;
}

int wrap_mod(int v, int n) {
  v %= n;
  if (v < 0) v += n;
  return v;
}

// Chebyshev dilation (r > 0) or erosion (r < 0) on the periodic lattice.
std::vector<char> dilate(const std::vector<char>& b, const TorusGrid& grid, int r) {
  if (r == 0) return b;
  bool erode = r < 0;
  int rad = std::abs(r);
  const std::vector<char>& src = b;
  std::vector<char> out(b.size(), 0);
  int n = grid.n;
  auto probe = [&](int bx, int by) -> char {
    std::size_t f = grid.dim == 1 ? static_cast<std::size_t>(bx)
                                  : static_cast<std::size_t>(bx) * n + by;
    return src[f];
  };
  for (std::size_t i = 0; i < b.size(); ++i) {
    IVec bc = grid.bin_coords(static_cast<std::uint32_t>(i));
    bool acc = erode;
    for (int dx = -rad; dx <= rad && (erode ? acc : !acc); ++dx) {
      int bx = wrap_mod(bc[0] + dx, n);
      if (grid.dim == 1) {
        char v = probe(bx, 0);
        acc = erode ? (acc && v) : (acc || v);
        continue;
      }
      for (int dy = -rad; dy <= rad && (erode ? acc : !acc); ++dy) {
        char v = probe(bx, wrap_mod(bc[1] + dy, n));
        acc = erode ? (acc && v) : (acc || v);
      }
    }
    out[i] = acc ? 1 : 0;
  }
  return out;
}

}  // namespace

SupportClaim support_rule_check(const Symbol& a, const GridFunction& v, double threshold,
                                int dilation_cells) {
  const TorusGrid& grid = v.grid;
  std::size_t sz = grid.size();
  SupportClaim claim;
  claim.id = "support-rule[" + a.name + "]";
  claim.threshold = threshold;

  SpectralFunction vhat = dft(v);
  std::vector<std::uint32_t> sv = numerical_support(vhat, threshold);
  std::vector<char> v_in = to_bitmap(sv, sz);

  double amax = partial_ft_max_abs(a, grid);
  std::vector<char> pred(sz, 0);
  if (amax > 0.0) {
    scan_partial_ft(a, grid, threshold * amax,
                    [&](std::uint32_t xi_flat, std::uint32_t eta_flat, double) {
                      if (!v_in[eta_flat]) return;
                      IVec xi = grid.freq_at(xi_flat);
                      IVec eta = grid.freq_at(eta_flat);
                      IVec sum{wrap_mod(xi[0] + eta[0] + grid.n / 2, grid.n) - grid.n / 2,
                               grid.dim == 2
                                   ? wrap_mod(xi[1] + eta[1] + grid.n / 2, grid.n) - grid.n / 2
                                   : 0};
                      pred[grid.flat_of_freq(sum)] = 1;
                    });
  }
  for (std::size_t i = 0; i < sz; ++i)
    if (pred[i]) claim.predicted.push_back(static_cast<std::uint32_t>(i));

  std::vector<char> pred_d = dilate(pred, grid, dilation_cells);

  SpectralFunction out = dft(direct_apply(a, v));
  claim.max_coeff = max_abs(out.c);
  claim.observed = numerical_support(out, threshold);
  for (std::uint32_t b : claim.observed)
    if (!pred_d[b]) claim.worst_violation = std::max(claim.worst_violation, std::abs(out.c[b]));
  claim.pass = claim.worst_violation <= threshold * claim.max_coeff;
  return claim;
}

namespace {

SupportClaim radial_claim(const std::string& id, const SpectralFunction& spec, double lo, double hi,
                          double threshold, double slack) {
  SupportClaim c;
  c.id = id;
  c.threshold = threshold;
  c.radius_lo = lo;
  c.radius_hi = hi;
  c.max_coeff = max_abs(spec.c);
  c.observed = numerical_support(spec, threshold);
  double lo_eff = lo < 0.0 ? -1.0 : lo - slack;
  double hi_eff = hi + slack;
  for (std::uint32_t b : c.observed) {
    double r = spec.grid.freq_radius(b);
    if (r < lo_eff || r > hi_eff)
      c.worst_violation = std::max(c.worst_violation, std::abs(spec.c[b]));
  }
  c.pass = c.worst_violation <= threshold * c.max_coeff;
  return c;
}

}  // namespace

std::vector<SupportClaim> inclusion_check(const ParaResult& res, const DyadicPartition& part,
                                          std::optional<double> C_twisted, double threshold) {
  if (!res.spectra1 || !res.spectra2 || !res.spectra3)
    throw std::invalid_argument("inclusion_check: ParaResult lacks per-term spectra");
  double slack = std::sqrt(static_cast<double>(part.grid.dim));
  std::vector<SupportClaim> claims;

  const SeriesSpectra& s1 = *res.spectra1;
  for (std::size_t i = 0; i < s1.outer.size(); ++i) {
    int k = s1.outer[i];
    claims.push_back(radial_claim("S1[k=" + std::to_string(k) + "]", s1.spectra[i],
                                  std::exp2(k) / 5.0, 13.0 / 8.0 * std::exp2(k), threshold, slack));
  }
  const SeriesSpectra& s2 = *res.spectra2;
  for (std::size_t i = 0; i < s2.outer.size(); ++i) {
    int k = s2.outer[i];
    double lo = -1.0;
    std::string id = "S2[k=" + std::to_string(k) + "]";
    if (C_twisted && k > 3.0 + std::log2(5.0 * *C_twisted)) {
      lo = std::exp2(k) / (4.0 * *C_twisted);
      id = "S2'[k=" + std::to_string(k) + "]";
    }
    claims.push_back(radial_claim(id, s2.spectra[i], lo, 4.0 * std::exp2(k), threshold, slack));
  }
  const SeriesSpectra& s3 = *res.spectra3;
  for (std::size_t i = 0; i < s3.outer.size(); ++i) {
    int j = s3.outer[i];
    claims.push_back(radial_claim("S3[j=" + std::to_string(j) + "]", s3.spectra[i],
                                  std::exp2(j) / 5.0, 13.0 / 8.0 * std::exp2(j), threshold, slack));
  }
  return claims;
}

std::string claims_csv(const std::vector<SupportClaim>& claims) {
  std::ostringstream os;
  os << "id,pass,radius_lo,radius_hi,predicted_count,observed_count,max_coeff,worst_violation\n";
  for (const SupportClaim& c : claims) {
    char buf[400];
    std::snprintf(buf, sizeof(buf), "%s,%d,%.17g,%.17g,%zu,%zu,%.17g,%.17g\n", c.id.c_str(),
                  c.pass ? 1 : 0, c.radius_lo, c.radius_hi, c.predicted.size(), c.observed.size(),
                  c.max_coeff, c.worst_violation);
    os << buf;
  }
  return os.str();
}

}  // namespace paradiff
