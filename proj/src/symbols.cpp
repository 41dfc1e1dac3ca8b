#include "paradiff/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "paradiff/reduce.hpp"
#include "paradiff/rng.hpp"

namespace paradiff {

namespace {

double two_pi_pow(int dim) { return dim == 1 ? kTwoPi : kTwoPi * kTwoPi; }

double vec_norm(const RVec& v, int dim) {
  return dim == 1 ? std::abs(v[0]) : std::hypot(v[0], v[1]);
}

std::size_t snap_to_grid(const TorusGrid& g, const RVec& x) {
  double h = g.spacing();
  IVec m{0, 0};
  for (int a = 0; a < g.dim; ++a) {
    long r = std::lround(x[a] / h);
    r %= g.n;
    if (r < 0) r += g.n;
    m[a] = static_cast<int>(r);
  }
  return g.flat_index(m);
}

long snap_freq(double x) { return std::lround(x); }

// Radial derivative of u(|xi|) for |alpha| <= 2, given u', u'' closures.
cplx radial_deriv(const RVec& xi, int dim, const IVec& alpha,
                  const std::function<double(double)>& u,
                  const std::function<double(double)>& du,
                  const std::function<double(double)>& ddu) {
  int total = alpha[0] + alpha[1];
  double r = vec_norm(xi, dim);
  if (total == 0) return u(r);
  if (r < 1e-9) return 0.0;  // all cutoffs are radially flat near the origin
  if (dim == 1) {
    double sgn = xi[0] < 0 ? -1.0 : 1.0;
    if (total == 1) return sgn * du(r);
    return ddu(r);
  }
  if (total == 1) {
    int i = alpha[0] == 1 ? 0 : 1;
    return xi[i] / r * du(r);
  }
  int i, k;
  if (alpha[0] == 2) { i = 0; k = 0; }
  else if (alpha[1] == 2) { i = 1; k = 1; }
  else { i = 0; k = 1; }
  double del = (i == k) ? 1.0 : 0.0;
  return (del / r - xi[i] * xi[k] / (r * r * r)) * du(r) + xi[i] * xi[k] / (r * r) * ddu(r);
}

struct PhiRadial {
  CutoffProfile prof;
  int j = 0;
  double operator()(double r) const {
    double v = prof(std::ldexp(r, -j));
    if (j > 0) v -= prof(std::ldexp(r, -j + 1));
    return v;
  }
  double d1(double r) const {
    double v = std::ldexp(prof.deriv(std::ldexp(r, -j)), -j);
    if (j > 0) v -= std::ldexp(prof.deriv(std::ldexp(r, -j + 1)), -j + 1);
    return v;
  }
  double d2(double r) const {
    double v = std::ldexp(prof.deriv2(std::ldexp(r, -j)), -2 * j);
    if (j > 0) v -= std::ldexp(prof.deriv2(std::ldexp(r, -j + 1)), -2 * (j - 1));
    return v;
  }
};

EtaProfile phi_profile(int j, double scale = 1.0) {
  PhiRadial pr{CutoffProfile{}, j};
  int dim_any = 2;  // radial, dim handled by caller through RVec contents
  (void)dim_any;
  return [pr, scale](const RVec& xi) -> cplx {
    double r = std::hypot(xi[0], xi[1]);
    return scale * pr(r);
  };
}

}  // namespace

// --- constructors -----------------------------------------------------------

Symbol constant_symbol(int dim, cplx value) {
  Symbol s;
  s.name = value == cplx(1.0) ? "identity" : "constant";
  s.order = 0.0;
  s.dim = dim;
  s.eval = [value](const RVec&, const RVec&) { return value; };
  s.deriv_x_max = 99;
  s.deriv_xi_max = 99;
  s.deriv = [value](const RVec&, const RVec&, const IVec& beta, const IVec& alpha) -> cplx {
    return (beta[0] + beta[1] + alpha[0] + alpha[1] == 0) ? value : cplx(0.0);
  };
  std::vector<XModeTerm> terms;
  terms.push_back({IVec{0, 0}, [value](const RVec&) { return value; }});
  s.structure = std::move(terms);
  return s;
}

Symbol identity_symbol(int dim) { return constant_symbol(dim, cplx(1.0)); }

Symbol multiplier_symbol(int dim, double order, const std::string& name,
                         std::function<cplx(const RVec&)> m) {
  Symbol s;
  s.name = name;
  s.order = order;
  s.dim = dim;
  s.eval = [m](const RVec&, const RVec& xi) { return m(xi); };
  std::vector<XModeTerm> terms;
  terms.push_back({IVec{0, 0}, m});
  s.structure = std::move(terms);
  return s;
}

Symbol bessel_multiplier_symbol(int dim, double order) {
  double d = order;
  auto m = [d, dim](const RVec& xi) -> cplx {
    double s2 = dim == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    return std::pow(1.0 + s2, 0.5 * d);
  };
  Symbol s = multiplier_symbol(dim, order, "bessel", m);
  s.deriv_x_max = 99;
  s.deriv_xi_max = 2;
  s.deriv = [d, dim](const RVec&, const RVec& xi, const IVec& beta, const IVec& alpha) -> cplx {
    if (beta[0] + beta[1] > 0) return 0.0;
    double s2 = dim == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    double base = 1.0 + s2;
    int total = alpha[0] + alpha[1];
    if (total == 0) return std::pow(base, 0.5 * d);
    if (total == 1) {
      int i = alpha[0] == 1 ? 0 : 1;
      return d * xi[i] * std::pow(base, 0.5 * d - 1.0);
    }
    if (total == 2) {
      int i, k;
      if (alpha[0] == 2) { i = 0; k = 0; }
      else if (alpha[1] == 2) { i = 1; k = 1; }
      else { i = 0; k = 1; }
      double del = (i == k) ? 1.0 : 0.0;
      return d * del * std::pow(base, 0.5 * d - 1.0) +
             d * (d - 2.0) * xi[i] * xi[k] * std::pow(base, 0.5 * d - 2.0);
    }
    throw std::invalid_argument("bessel multiplier: xi-derivatives available up to order 2");
  };
  return s;
}

Symbol gaussian_multiplier_symbol(int dim, double sigma) {
  double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  return multiplier_symbol(dim, 0.0, "gauss", [inv2s2, dim](const RVec& xi) -> cplx {
    double s2 = dim == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    return std::exp(-s2 * inv2s2);
  });
}

Symbol ching_symbol(double d, const DyadicPartition& part) {
  const TorusGrid& grid = part.grid;
  int jmax = part.j_max;
  int dim = grid.dim;
  int axis = dim - 1;  // e_n

  Symbol s;
  s.name = "ching";
  s.order = d;
  s.dim = dim;

  CutoffProfile prof;
  s.eval = [prof, d, jmax, dim, axis](const RVec& x, const RVec& xi) -> cplx {
    double r = vec_norm(xi, dim);
    cplx acc(0.0);
    for (int j = 1; j <= jmax; ++j) {
      double t = std::ldexp(r, -j);
      if (t >= CutoffProfile::kUpper) continue;  // below corona j
      if (std::ldexp(r, -j + 1) <= CutoffProfile::kLower) break;  // above all further coronas
      double phij = prof(t) - prof(std::ldexp(r, -j + 1));
      if (phij == 0.0) continue;
      double w = std::exp2(d * j);
      double phase = -x[axis] * std::exp2(j);
      acc += w * phij * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
  };

  s.deriv_x_max = 99;
  s.deriv_xi_max = 2;
  s.deriv = [prof, d, jmax, dim, axis](const RVec& x, const RVec& xi, const IVec& beta,
                                       const IVec& alpha) -> cplx {
    if (alpha[0] + alpha[1] > 2)
      throw std::invalid_argument("ching symbol: xi-derivatives available up to order 2");
    int off_axis = 1 - axis;
    if (dim == 2 && beta[off_axis] > 0) return 0.0;
    if (dim == 1 && beta[1] > 0) return 0.0;
    cplx acc(0.0);
    for (int j = 1; j <= jmax; ++j) {
      PhiRadial pr{prof, j};
      cplx radial = radial_deriv(
          xi, dim, alpha, [&pr](double r) { return pr(r); },
          [&pr](double r) { return pr.d1(r); }, [&pr](double r) { return pr.d2(r); });
      if (radial == cplx(0.0)) continue;
      double w = std::exp2(d * j);
      double phase = -x[axis] * std::exp2(j);
      cplx xfac = std::pow(cplx(0.0, -std::exp2(j)), beta[axis]);
      acc += w * radial * xfac * cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
  };

  std::vector<XModeTerm> terms;
  for (int j = 1; j <= jmax; ++j) {
    IVec nu{0, 0};
    nu[axis] = -(1 << j);
    if (!grid.freq_in_range(nu)) throw std::invalid_argument("ching symbol: mode outside lattice");
    terms.push_back({nu, phi_profile(j, std::exp2(d * j))});
  }
  s.structure = std::move(terms);
  return s;
}

Symbol reduced_symbol(const std::vector<GridFunction>& multipliers, const DyadicPartition& part) {
  if (multipliers.size() > static_cast<std::size_t>(part.j_max) + 1)
    throw std::invalid_argument("reduced_symbol: more multipliers than blocks");
  const TorusGrid& grid = part.grid;

  auto values = std::make_shared<std::vector<std::vector<cplx>>>();
  std::vector<SeparableTerm> terms;
  for (std::size_t j = 0; j < multipliers.size(); ++j) {
    if (!(multipliers[j].grid == grid)) throw std::invalid_argument("reduced_symbol: grid mismatch");
    values->push_back(multipliers[j].v);
    terms.push_back({dft(multipliers[j]), phi_profile(static_cast<int>(j))});
  }

  Symbol s;
  s.name = "reduced";
  s.order = 0.0;
  s.dim = grid.dim;
  CutoffProfile prof;
  int dim = grid.dim;
  s.eval = [values, prof, grid, dim](const RVec& x, const RVec& xi) -> cplx {
    std::size_t ix = snap_to_grid(grid, x);
    double r = vec_norm(xi, dim);
    cplx acc(0.0);
    for (std::size_t j = 0; j < values->size(); ++j) {
      double pj = prof(std::ldexp(r, -static_cast<int>(j)));
      if (j > 0) pj -= prof(std::ldexp(r, -static_cast<int>(j) + 1));
      if (pj != 0.0) acc += (*values)[j][ix] * pj;
    }
    return acc;
  };
  s.structure = std::move(terms);
  return s;
}

Symbol nonlinear_symbol(const std::function<double(double)>& F_prime, const GridFunction& u,
                        const DyadicPartition& part) {
  double im_peak = 0.0, re_peak = 0.0;
  for (const cplx& z : u.v) {
    im_peak = std::max(im_peak, std::abs(z.imag()));
    re_peak = std::max(re_peak, std::abs(z.real()));
  }
  if (im_peak > 1e-12 * (1.0 + re_peak))
    throw std::invalid_argument("nonlinear_symbol: u must be real-valued");

  // 16-point Gauss-Legendre on [0, 1]
  static const double gl_node[8] = {
      0.09501250983763744018531934, 0.28160355077925891323046050,
      0.45801677765722738634241944, 0.61787624440264374844667176,
      0.75540440835500303389510119, 0.86563120238783174388046790,
      0.94457502307323257607798842, 0.98940093499164993259615417};
  static const double gl_weight[8] = {
      0.18945061045506849628539672, 0.18260341504492358886676366,
      0.16915651939500253818931208, 0.14959598881657673208150173,
      0.12462897125553387205247628, 0.09515851168249278480992510,
      0.06225352393864789286284384, 0.02715245941175409485178057};

  SpectralFunction U = dft(u);
  require_resolved(U, part);
  std::vector<GridFunction> mult;
  GridFunction low(u.grid);  // u^{j-1}
  for (int j = 0; j <= part.j_max; ++j) {
    GridFunction uj = idft(apply_multiplier(U, part.phi_j(j)));
    GridFunction mj(u.grid);
    parallel_for(u.grid.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        double base = low.v[i].real();
        double step = uj.v[i].real();
        double acc = 0.0;
        for (int q = 0; q < 8; ++q) {
          double t0 = 0.5 * (1.0 - gl_node[q]);
          double t1 = 0.5 * (1.0 + gl_node[q]);
          acc += 0.5 * gl_weight[q] * (F_prime(base + t0 * step) + F_prime(base + t1 * step));
        }
        mj.v[i] = acc;
      }
    });
    mult.push_back(std::move(mj));
    low = low + uj;
  }
  Symbol s = reduced_symbol(mult, part);
  s.name = "nonlinear";
  return s;
}

Symbol sampled_symbol(const TorusGrid& grid, std::vector<cplx> x_major_values, double order) {
  std::size_t sz = grid.size();
  if (x_major_values.size() != sz * sz)
    throw std::invalid_argument("sampled_symbol: need grid.size()^2 values (x-major)");
  if (sz * sz > (1u << 24)) throw std::invalid_argument("sampled_symbol: grid too large");

  auto samples = std::make_shared<std::vector<cplx>>(std::move(x_major_values));
  check_finite(*samples, "sampled_symbol");

  // a^(xi, eta), xi-major
  auto ahat = std::make_shared<std::vector<cplx>>(sz * sz);
  double cell = grid.cell_measure();
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    std::vector<cplx> col(sz);
    for (std::size_t e = lo; e < hi; ++e) {
      for (std::size_t x = 0; x < sz; ++x) col[x] = (*samples)[x * sz + e];
      fft_axes(col.data(), grid.dim, static_cast<std::size_t>(grid.n), -1);
      for (std::size_t xi = 0; xi < sz; ++xi) (*ahat)[xi * sz + e] = col[xi] * cell;
    }
  });

  Symbol s;
  s.name = "sampled";
  s.order = order;
  s.dim = grid.dim;
  s.eval = [samples, grid, sz](const RVec& x, const RVec& xi) -> cplx {
    std::size_t ix = snap_to_grid(grid, x);
    IVec f{static_cast<int>(snap_freq(xi[0])), grid.dim == 2 ? static_cast<int>(snap_freq(xi[1])) : 0};
    if (!grid.freq_in_range(f)) return 0.0;
    return (*samples)[ix * sz + grid.flat_of_freq(f)];
  };
  double inv = 1.0 / two_pi_pow(grid.dim);
  std::vector<XModeTerm> terms;
  for (std::size_t xi = 0; xi < sz; ++xi) {
    bool nonzero = false;
    for (std::size_t e = 0; e < sz; ++e)
      if ((*ahat)[xi * sz + e] != cplx(0.0)) { nonzero = true; break; }
    if (!nonzero) continue;
    IVec nu = grid.freq_at(xi);
    std::size_t row = xi;
    terms.push_back({nu, [ahat, grid, row, sz, inv](const RVec& eta) -> cplx {
                       IVec f{static_cast<int>(snap_freq(eta[0])),
                              grid.dim == 2 ? static_cast<int>(snap_freq(eta[1])) : 0};
                       if (!grid.freq_in_range(f)) return 0.0;
                       return inv * (*ahat)[row * sz + grid.flat_of_freq(f)];
                     }});
  }
  s.structure = std::move(terms);
  return s;
}

Symbol twisted_cutoff_symbol(const DyadicPartition& part, double C, std::uint64_t seed,
                             double order, int modes_per_corona) {
  if (C < 1.0) throw std::invalid_argument("twisted_cutoff_symbol: C must be >= 1");
  const TorusGrid& grid = part.grid;
  int dim = grid.dim;
  Rng rng(seed);

  struct Mode {
    IVec nu;
    double amp;
    double phase;
  };
  auto modes = std::make_shared<std::vector<Mode>>();
  modes->push_back({IVec{0, 0}, 1.0, 0.0});  // smooth baseline
  for (int j = 1; j <= part.j_max; ++j) {
    for (int rep = 0; rep < modes_per_corona; ++rep) {
      double target = rng.uniform(0.62, 1.2) * std::exp2(j);
      IVec nu{0, 0};
      if (dim == 1) {
        nu[0] = static_cast<int>((rng.uniform01() < 0.5 ? -1 : 1) * std::lround(target));
      } else {
        double ang = rng.uniform(0.0, kTwoPi);
        nu[0] = static_cast<int>(std::lround(target * std::cos(ang)));
        nu[1] = static_cast<int>(std::lround(target * std::sin(ang)));
      }
      if (!grid.freq_in_range(nu)) continue;
      modes->push_back({nu, rng.uniform(0.3, 1.0) / std::exp2(0.25 * j), rng.uniform(0.0, kTwoPi)});
    }
  }

  double d = order;
  auto profile_for = [C, d, dim](const Mode& m) -> EtaProfile {
    IVec nu = m.nu;
    double amp = m.amp, ph = m.phase;
    return [C, d, dim, nu, amp, ph](const RVec& eta) -> cplx {
      double en = vec_norm(eta, dim);
      RVec sum{eta[0] + nu[0], eta[1] + nu[1]};
      if (C * (vec_norm(sum, dim) + 1.0) <= en) return 0.0;  // exact zero on the cone
      double s2 = dim == 1 ? eta[0] * eta[0] : eta[0] * eta[0] + eta[1] * eta[1];
      return amp * std::pow(1.0 + s2, 0.5 * d) * cplx(std::cos(ph), std::sin(ph));
    };
  };

  Symbol s;
  s.name = "cutoff";
  s.order = order;
  s.dim = dim;
  std::vector<XModeTerm> terms;
  for (const Mode& m : *modes) terms.push_back({m.nu, profile_for(m)});
  auto terms_copy = std::make_shared<std::vector<XModeTerm>>(terms);
  s.eval = [terms_copy, dim](const RVec& x, const RVec& xi) -> cplx {
    cplx acc(0.0);
    for (const XModeTerm& t : *terms_copy) {
      double phase = x[0] * t.nu[0] + (dim == 2 ? x[1] * t.nu[1] : 0.0);
      acc += cplx(std::cos(phase), std::sin(phase)) * t.g(xi);
    }
    return acc;
  };
  s.structure = std::move(terms);
  return s;
}

Symbol band_limit_symbol(const Symbol& a, int k) {
  CutoffProfile prof;
  int dim = a.dim;
  auto window = [prof, k, dim](const RVec& eta) -> double {
    return prof(std::ldexp(vec_norm(eta, dim), -k));
  };
  Symbol s;
  s.name = a.name + ":bandlimited";
  s.order = a.order;
  s.dim = a.dim;
  auto base_eval = a.eval;
  s.eval = [base_eval, window](const RVec& x, const RVec& xi) -> cplx {
    double w = window(xi);
    return w == 0.0 ? cplx(0.0) : w * base_eval(x, xi);
  };
  if (std::holds_alternative<std::vector<XModeTerm>>(a.structure)) {
    std::vector<XModeTerm> terms = std::get<std::vector<XModeTerm>>(a.structure);
    for (XModeTerm& t : terms) {
      EtaProfile g = t.g;
      t.g = [g, window](const RVec& eta) -> cplx {
        double w = window(eta);
        return w == 0.0 ? cplx(0.0) : w * g(eta);
      };
    }
    s.structure = std::move(terms);
  } else if (std::holds_alternative<std::vector<SeparableTerm>>(a.structure)) {
    std::vector<SeparableTerm> terms = std::get<std::vector<SeparableTerm>>(a.structure);
    for (SeparableTerm& t : terms) {
      EtaProfile g = t.g;
      t.g = [g, window](const RVec& eta) -> cplx {
        double w = window(eta);
        return w == 0.0 ? cplx(0.0) : w * g(eta);
      };
    }
    s.structure = std::move(terms);
  }
  return s;
}

// --- partial Fourier transform ------------------------------------------------

namespace {

// buckets of XMode terms sharing an x-frequency
std::map<std::size_t, std::vector<const XModeTerm*>> bucket_modes(const std::vector<XModeTerm>& terms,
                                                                  const TorusGrid& grid) {
  std::map<std::size_t, std::vector<const XModeTerm*>> buckets;
  for (const XModeTerm& t : terms) {
    if (!grid.freq_in_range(t.nu))
      throw std::invalid_argument("symbol: x-frequency outside the lattice");
    buckets[grid.flat_of_freq(t.nu)].push_back(&t);
  }
  return buckets;
}

RVec freq_rvec(const TorusGrid& grid, std::size_t flat) {
  IVec f = grid.freq_at(flat);
  return {static_cast<double>(f[0]), static_cast<double>(f[1])};
}

}  // namespace

SpectralFunction partial_ft_row(const Symbol& a, const TorusGrid& grid, const IVec& eta) {
  RVec er{static_cast<double>(eta[0]), static_cast<double>(eta[1])};
  SpectralFunction row(grid);
  if (std::holds_alternative<std::vector<XModeTerm>>(a.structure)) {
    double tp = two_pi_pow(grid.dim);
    for (const auto& [flat, terms] : bucket_modes(std::get<std::vector<XModeTerm>>(a.structure), grid))
      for (const XModeTerm* t : terms) row.c[flat] += tp * t->g(er);
    return row;
  }
  if (std::holds_alternative<std::vector<SeparableTerm>>(a.structure)) {
    for (const SeparableTerm& t : std::get<std::vector<SeparableTerm>>(a.structure)) {
      cplx gv = t.g(er);
      if (gv == cplx(0.0)) continue;
      for (std::size_t i = 0; i < row.c.size(); ++i) row.c[i] += gv * t.m_hat.c[i];
    }
    return row;
  }
  // numeric fallback: transform x -> xi at this eta
  GridFunction col(grid);
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) col.v[i] = a.eval(grid.point_at(i), er);
  });
  return dft(col);
}

void scan_partial_ft(const Symbol& a, const TorusGrid& grid, double abs_cutoff,
                     const std::function<void(std::uint32_t, std::uint32_t, double)>& fn) {
  std::size_t sz = grid.size();
  if (std::holds_alternative<std::vector<XModeTerm>>(a.structure)) {
    double tp = two_pi_pow(grid.dim);
    for (const auto& [flat, terms] : bucket_modes(std::get<std::vector<XModeTerm>>(a.structure), grid)) {
      for (std::size_t e = 0; e < sz; ++e) {
        RVec er = freq_rvec(grid, e);
        cplx v(0.0);
        for (const XModeTerm* t : terms) v += tp * t->g(er);
        double av = std::abs(v);
        if (av > abs_cutoff) fn(static_cast<std::uint32_t>(flat), static_cast<std::uint32_t>(e), av);
      }
    }
    return;
  }
  if (std::holds_alternative<std::vector<SeparableTerm>>(a.structure)) {
    const auto& terms = std::get<std::vector<SeparableTerm>>(a.structure);
    std::vector<cplx> gv(terms.size());
    for (std::size_t e = 0; e < sz; ++e) {
      RVec er = freq_rvec(grid, e);
      bool any = false;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        gv[t] = terms[t].g(er);
        any = any || gv[t] != cplx(0.0);
      }
      if (!any) continue;
      for (std::size_t xi = 0; xi < sz; ++xi) {
        cplx v(0.0);
        for (std::size_t t = 0; t < terms.size(); ++t)
          if (gv[t] != cplx(0.0)) v += gv[t] * terms[t].m_hat.c[xi];
        double av = std::abs(v);
        if (av > abs_cutoff) fn(static_cast<std::uint32_t>(xi), static_cast<std::uint32_t>(e), av);
      }
    }
    return;
  }
  for (std::size_t e = 0; e < sz; ++e) {
    SpectralFunction row = partial_ft_row(a, grid, grid.freq_at(e));
    for (std::size_t xi = 0; xi < sz; ++xi) {
      double av = std::abs(row.c[xi]);
      if (av > abs_cutoff) fn(static_cast<std::uint32_t>(xi), static_cast<std::uint32_t>(e), av);
    }
  }
}

double partial_ft_max_abs(const Symbol& a, const TorusGrid& grid) {
  double m = 0.0;
  scan_partial_ft(a, grid, 0.0, [&m](std::uint32_t, std::uint32_t, double av) {
    if (av > m) m = av;
  });
  return m;
}

// --- seminorm ----------------------------------------------------------------

namespace {

cplx symbol_derivative(const Symbol& a, const RVec& x, const RVec& xi, IVec beta, IVec alpha,
                       double hx, bool allow_fd) {
  int bt = beta[0] + beta[1], at = alpha[0] + alpha[1];
  if (a.deriv && bt <= a.deriv_x_max && at <= a.deriv_xi_max) return a.deriv(x, xi, beta, alpha);
  if (bt + at == 0) return a.eval(x, xi);
  if (!allow_fd)
    throw std::invalid_argument("seminorm: derivative order exceeds closures and FD is disabled");

  auto stencil = [&](const std::function<cplx(double)>& f, double h) -> cplx {
    return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
  };
  for (int i = 0; i < 2; ++i) {
    if (beta[i] > 0) {
      IVec b2 = beta;
      b2[i] -= 1;
      return stencil(
          [&](double dx) {
            RVec x2 = x;
            x2[i] += dx;
            return symbol_derivative(a, x2, xi, b2, alpha, hx, allow_fd);
          },
          hx);
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (alpha[i] > 0) {
      IVec a2 = alpha;
      a2[i] -= 1;
      double r = std::hypot(xi[0], xi[1]);
      double h = std::ldexp(1.0 + r, -7);
      return stencil(
          [&](double dxi) {
            RVec xi2 = xi;
            xi2[i] += dxi;
            return symbol_derivative(a, x, xi2, beta, a2, hx, allow_fd);
          },
          h);
    }
  }
  return a.eval(x, xi);
}

std::vector<IVec> multi_indices(int dim, int max_total) {
  std::vector<IVec> out;
  if (dim == 1) {
    for (int i = 0; i <= max_total; ++i) out.push_back({i, 0});
  } else {
    for (int i = 0; i <= max_total; ++i)
      for (int k = 0; i + k <= max_total; ++k) out.push_back({i, k});
  }
  return out;
}

}  // namespace

SeminormReport seminorm(const Symbol& a, int l, int m, const TorusGrid& grid, bool allow_fd) {
  if (l < 0 || m < 0) throw std::invalid_argument("seminorm: orders must be nonnegative");
  bool analytic_ok = a.deriv && l <= a.deriv_x_max && m <= a.deriv_xi_max;
  if (!analytic_ok && !allow_fd && (l > 0 || m > 0))
    throw std::invalid_argument("seminorm: derivative order exceeds closures and FD is disabled");
  int sx = std::max(1, grid.n / 128);
  int sxi = std::max(1, grid.n / 256);
  std::vector<std::size_t> xs, xis;
  if (grid.dim == 1) {
    for (int i = 0; i < grid.n; i += sx) xs.push_back(static_cast<std::size_t>(i));
    for (int i = 0; i < grid.n; i += sxi) xis.push_back(static_cast<std::size_t>(i));
  } else {
    for (int i = 0; i < grid.n; i += sx)
      for (int k = 0; k < grid.n; k += sx)
        xs.push_back(static_cast<std::size_t>(i) * grid.n + k);
    for (int i = 0; i < grid.n; i += sxi)
      for (int k = 0; k < grid.n; k += sxi)
        xis.push_back(static_cast<std::size_t>(i) * grid.n + k);
  }

  std::vector<IVec> betas = multi_indices(grid.dim, l);
  std::vector<IVec> alphas = multi_indices(grid.dim, m);
  double hx = grid.spacing();

  std::vector<double> per_x(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ii = lo; ii < hi; ++ii) {
      RVec x = grid.point_at(xs[ii]);
      double best = 0.0;
      for (std::size_t ee = 0; ee < xis.size(); ++ee) {
        RVec xi = freq_rvec(grid, xis[ee]);
        double r = std::hypot(xi[0], xi[1]);
        for (const IVec& beta : betas) {
          for (const IVec& alpha : alphas) {
            double w = std::pow(1.0 + r, -(a.order - (alpha[0] + alpha[1]) + (beta[0] + beta[1])));
            cplx dv = symbol_derivative(a, x, xi, beta, alpha, hx, allow_fd);
            best = std::max(best, w * std::abs(dv));
          }
        }
      }
      per_x[ii] = best;
    }
  });
  SeminormReport rep;
  rep.l = l;
  rep.m = m;
  rep.x_samples = xs.size();
  rep.xi_samples = xis.size();
  for (double v : per_x) rep.value = std::max(rep.value, v);
  return rep;
}

TwistedReport twisted_diagonal_check(const Symbol& a, double C, const TorusGrid& grid,
                                     double rel_threshold) {
  if (C < 1.0) throw std::invalid_argument("twisted_diagonal_check: C must be >= 1");
  TwistedReport rep;
  rep.max_abs = partial_ft_max_abs(a, grid);
  if (rep.max_abs == 0.0) {
    rep.ok = true;
    return rep;
  }
  double cutoff = rel_threshold * rep.max_abs;
  int dim = grid.dim;
  scan_partial_ft(a, grid, cutoff, [&](std::uint32_t xi_flat, std::uint32_t eta_flat, double av) {
    IVec xi = grid.freq_at(xi_flat);
    IVec eta = grid.freq_at(eta_flat);
    RVec sum{static_cast<double>(xi[0] + eta[0]), static_cast<double>(xi[1] + eta[1])};
    RVec er{static_cast<double>(eta[0]), static_cast<double>(eta[1])};
    if (C * (vec_norm(sum, dim) + 1.0) <= vec_norm(er, dim)) {
      rep.worst = std::max(rep.worst, av);
      if (rep.witnesses.size() < 64) rep.witnesses.push_back({xi, eta});
    }
  });
  rep.ok = rep.worst <= cutoff;
  return rep;
}

}  // namespace paradiff
