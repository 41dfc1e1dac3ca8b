#include "paradiff/paradiff.hpp"

#include <cmath>
#include <stdexcept>

#include "paradiff/reduce.hpp"

namespace paradiff {

namespace {

double two_pi_pow(int dim) { return dim == 1 ? kTwoPi : kTwoPi * kTwoPi; }

std::vector<cplx> sample_profile(const EtaProfile& g, const TorusGrid& grid) {
  std::vector<cplx> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      IVec f = grid.freq_at(i);
      out[i] = g({static_cast<double>(f[0]), static_cast<double>(f[1])});
    }
  });
  return out;
}

// Terms in a uniform shape: x-part either a pure oscillation (XMode) or a
// spectral multiplier; eta-part sampled on the lattice.
struct EngineTerm {
  bool is_mode = false;
  IVec nu{0, 0};                 // mode case
  std::vector<cplx> mode_wave;   // e^{i x.nu} on the grid (mode case)
  const SpectralFunction* m_hat = nullptr;  // multiplier case
  std::vector<cplx> g;           // eta profile on the lattice
};

struct Engine {
  const Symbol* sym;
  const DyadicPartition* part;
  TorusGrid grid;
  SpectralFunction U;
  std::vector<EngineTerm> terms;

  Engine(const Symbol& a, const GridFunction& u, const DyadicPartition& p)
      : sym(&a), part(&p), grid(p.grid) {
    if (!(u.grid == p.grid)) throw std::invalid_argument("apply: grid mismatch");
    if (a.dim != p.grid.dim) throw std::invalid_argument("apply: symbol dim mismatch");
    if (!a.has_structure())
      throw std::invalid_argument("apply: symbol carries no spectral structure");
    U = dft(u);
    require_resolved(U, p);

    if (std::holds_alternative<std::vector<XModeTerm>>(a.structure)) {
      const auto& src = std::get<std::vector<XModeTerm>>(a.structure);
      terms.resize(src.size());
      parallel_for(src.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
          EngineTerm& et = terms[t];
          et.is_mode = true;
          et.nu = src[t].nu;
          et.g = sample_profile(src[t].g, grid);
          et.mode_wave.resize(grid.size());
          for (std::size_t i = 0; i < grid.size(); ++i) {
            RVec x = grid.point_at(i);
            double ph = x[0] * et.nu[0] + x[1] * et.nu[1];
            et.mode_wave[i] = cplx(std::cos(ph), std::sin(ph));
          }
        }
      });
    } else {
      const auto& src = std::get<std::vector<SeparableTerm>>(a.structure);
      terms.resize(src.size());
      parallel_for(src.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
          terms[t].m_hat = &src[t].m_hat;
          terms[t].g = sample_profile(src[t].g, grid);
        }
      });
    }
  }

  // Psi_r(nu) / Phi_j(nu) scalars for mode terms (formula evaluation).
  double mode_phi(int j, const IVec& nu) const {
    double r = nu[1] == 0 ? std::abs(static_cast<double>(nu[0]))
                          : std::hypot(static_cast<double>(nu[0]), static_cast<double>(nu[1]));
    return part->phi_value(j, r);
  }
  double mode_psi(int r_idx, const IVec& nu) const {
    double r = nu[1] == 0 ? std::abs(static_cast<double>(nu[0]))
                          : std::hypot(static_cast<double>(nu[0]), static_cast<double>(nu[1]));
    return part->psi_value(r_idx, r);
  }

  // idft(g_t . w . U) where w is a lattice multiplier; empty result flag.
  bool eta_transform(const EngineTerm& t, const std::vector<double>& w, GridFunction& out) const {
    SpectralFunction prod(grid);
    bool any = false;
    for (std::size_t i = 0; i < prod.c.size(); ++i) {
      cplx v = t.g[i] * w[i] * U.c[i];
      prod.c[i] = v;
      any = any || v != cplx(0.0);
    }
    if (!any) return false;
    out = idft(prod);
    return true;
  }

  // x-part for a term against a given multiplier sampled on the lattice
  // (mult == nullptr means the scalar `scalar` for mode terms is known).
  bool x_part(const EngineTerm& t, const std::vector<double>& mult, GridFunction& out) const {
    if (t.is_mode) {
      double s = 0.0;
      s = mult[grid.flat_of_freq(t.nu)];
      if (s == 0.0) return false;
      out = GridFunction(grid);
      for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = s * t.mode_wave[i];
      return true;
    }
    SpectralFunction prod(grid);
    bool any = false;
    for (std::size_t i = 0; i < prod.c.size(); ++i) {
      cplx v = mult[i] * t.m_hat->c[i];
      prod.c[i] = v;
      any = any || v != cplx(0.0);
    }
    if (!any) return false;
    out = idft(prod);
    return true;
  }
};

void accumulate_product(GridFunction& acc, const GridFunction& xp, const GridFunction& vp) {
  for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += xp.v[i] * vp.v[i];
}

std::vector<double> pointwise_product(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

}  // namespace

GridFunction piece_apply_impl(const Symbol& a, int j, int k, const GridFunction& u,
                              const DyadicPartition& part, bool with_tilde, bool internal_j) {
  if (k < 0 || k > part.j_max) throw std::invalid_argument("piece_apply: k out of range");
  int j_cap = internal_j ? part.j_top : part.j_max;
  if (j < 0 || j > j_cap) throw std::invalid_argument("piece_apply: j out of range");
  Engine eng(a, u, part);

  std::vector<double> w = with_tilde ? pointwise_product(part.phi_tilde(k), part.phi_j(k))
                                     : part.phi_j(k);
  GridFunction out(part.grid);
  GridFunction xp, vp;
  for (const EngineTerm& t : eng.terms) {
    if (!eng.eta_transform(t, w, vp)) continue;
    if (!eng.x_part(t, part.phi_j(j), xp)) continue;
    accumulate_product(out, xp, vp);
  }
  return out;
}

GridFunction piece_apply(const Symbol& a, int j, int k, const GridFunction& u,
                         const DyadicPartition& part) {
  return piece_apply_impl(a, j, k, u, part, true, false);
}

GridFunction piece_apply_no_tilde(const Symbol& a, int j, int k, const GridFunction& u,
                                  const DyadicPartition& part) {
  return piece_apply_impl(a, j, k, u, part, false, false);
}

namespace {

// Shared assembly: runs all three series off one Engine. Spectra of the
// outer-index terms are captured on demand.
struct SeriesOutput {
  GridFunction term;
  std::optional<SeriesSpectra> spectra;
};

SeriesOutput run_series1(Engine& eng, bool keep) {
  const DyadicPartition& part = *eng.part;
  SeriesOutput out;
  out.term = GridFunction(eng.grid);
  if (keep) out.spectra = SeriesSpectra{};
  GridFunction xp, vp;
  for (int k = 2; k <= part.j_max; ++k) {
    std::vector<double> w = pointwise_product(part.phi_tilde(k), part.phi_j(k));
    GridFunction acc(eng.grid);
    bool any = false;
    for (const EngineTerm& t : eng.terms) {
      if (!eng.eta_transform(t, w, vp)) continue;
      if (t.is_mode) {
        double s = eng.mode_psi(k - 2, t.nu);
        if (s == 0.0) continue;
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += s * t.mode_wave[i] * vp.v[i];
        any = true;
      } else {
        if (!eng.x_part(t, part.psi_j(k - 2), xp)) continue;
        accumulate_product(acc, xp, vp);
        any = true;
      }
    }
    if (any)
      for (std::size_t i = 0; i < out.term.v.size(); ++i) out.term.v[i] += acc.v[i];
    if (keep) {
      out.spectra->outer.push_back(k);
      out.spectra->spectra.push_back(dft(acc));
    }
  }
  return out;
}

SeriesOutput run_series2(Engine& eng, bool keep) {
  const DyadicPartition& part = *eng.part;
  SeriesOutput out;
  out.term = GridFunction(eng.grid);
  if (keep) out.spectra = SeriesSpectra{};
  GridFunction xp, vp;
  // K-th input block meets x-blocks K-1, K, K+1 (K+1 <= j_top always).
  for (int K = 0; K <= part.j_max; ++K) {
    std::vector<double> w = pointwise_product(part.phi_tilde(K), part.phi_j(K));
    GridFunction acc(eng.grid);
    for (const EngineTerm& t : eng.terms) {
      if (!eng.eta_transform(t, w, vp)) continue;
      for (int j = std::max(0, K - 1); j <= K + 1; ++j) {
        if (t.is_mode) {
          double s = eng.mode_phi(j, t.nu);
          if (s == 0.0) continue;
          for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += s * t.mode_wave[i] * vp.v[i];
        } else {
          if (!eng.x_part(t, part.phi_j(j), xp)) continue;
          accumulate_product(acc, xp, vp);
        }
      }
    }
    for (std::size_t i = 0; i < out.term.v.size(); ++i) out.term.v[i] += acc.v[i];
    if (keep) {
      out.spectra->outer.push_back(K);
      out.spectra->spectra.push_back(dft(acc));
    }
  }
  return out;
}

SeriesOutput run_series3(Engine& eng, bool keep) {
  const DyadicPartition& part = *eng.part;
  SeriesOutput out;
  out.term = GridFunction(eng.grid);
  if (keep) out.spectra = SeriesSpectra{};
  GridFunction xp, vp;
  for (int j = 2; j <= part.j_top; ++j) {
    // sum_{k <= j-2} Phi~_k Phi_k = Psi_{min(j-2, j_max)} on resolved input
    int r = std::min(j - 2, part.j_max);
    const std::vector<double>& w = part.psi_j(r);
    GridFunction acc(eng.grid);
    bool any = false;
    for (const EngineTerm& t : eng.terms) {
      if (!eng.eta_transform(t, w, vp)) continue;
      if (t.is_mode) {
        double s = eng.mode_phi(j, t.nu);
        if (s == 0.0) continue;
        for (std::size_t i = 0; i < acc.v.size(); ++i) acc.v[i] += s * t.mode_wave[i] * vp.v[i];
        any = true;
      } else {
        if (!eng.x_part(t, part.phi_j(j), xp)) continue;
        accumulate_product(acc, xp, vp);
        any = true;
      }
    }
    if (any)
      for (std::size_t i = 0; i < out.term.v.size(); ++i) out.term.v[i] += acc.v[i];
    if (keep && any) {
      out.spectra->outer.push_back(j);
      out.spectra->spectra.push_back(dft(acc));
    }
  }
  return out;
}

}  // namespace

GridFunction series1(const Symbol& a, const GridFunction& u, const DyadicPartition& part) {
  Engine eng(a, u, part);
  return run_series1(eng, false).term;
}

GridFunction series2(const Symbol& a, const GridFunction& u, const DyadicPartition& part) {
  Engine eng(a, u, part);
  return run_series2(eng, false).term;
}

GridFunction series3(const Symbol& a, const GridFunction& u, const DyadicPartition& part) {
  Engine eng(a, u, part);
  return run_series3(eng, false).term;
}

ParaResult apply(const Symbol& a, const GridFunction& u, const DyadicPartition& part,
                 bool keep_spectra) {
  Engine eng(a, u, part);
  SeriesOutput s1 = run_series1(eng, keep_spectra);
  SeriesOutput s2 = run_series2(eng, keep_spectra);
  SeriesOutput s3 = run_series3(eng, keep_spectra);
  ParaResult res;
  res.term1 = std::move(s1.term);
  res.term2 = std::move(s2.term);
  res.term3 = std::move(s3.term);
  res.total = GridFunction(part.grid);
  for (std::size_t i = 0; i < res.total.v.size(); ++i)
    res.total.v[i] = res.term1.v[i] + res.term2.v[i] + res.term3.v[i];
  res.spectra1 = std::move(s1.spectra);
  res.spectra2 = std::move(s2.spectra);
  res.spectra3 = std::move(s3.spectra);
  return res;
}

GridFunction direct_apply(const Symbol& a, const GridFunction& u) {
  const TorusGrid& grid = u.grid;
  if (a.dim != grid.dim) throw std::invalid_argument("direct_apply: symbol dim mismatch");
  SpectralFunction U = dft(u);
  std::size_t sz = grid.size();
  double scale = 1.0 / two_pi_pow(grid.dim);

  GridFunction out(grid);
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ix = lo; ix < hi; ++ix) {
      RVec x = grid.point_at(ix);
      cplx acc = deterministic_csum(sz, [&](std::size_t e) -> cplx {
        if (U.c[e] == cplx(0.0)) return cplx(0.0);
        IVec f = grid.freq_at(e);
        RVec eta{static_cast<double>(f[0]), static_cast<double>(f[1])};
        double ph = x[0] * eta[0] + x[1] * eta[1];
        return cplx(std::cos(ph), std::sin(ph)) * a.eval(x, eta) * U.c[e];
      });
      out.v[ix] = scale * acc;
    }
  });
  return out;
}

}  // namespace paradiff
