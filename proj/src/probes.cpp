#include "paradiff/probes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "paradiff/fraction.hpp"
#include "paradiff/paradiff.hpp"
#include "paradiff/reduce.hpp"

namespace paradiff {

namespace {

double two_pi_pow(int dim) { return dim == 1 ? kTwoPi : kTwoPi * kTwoPi; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_double(std::uint64_t w) { return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53; }

// gaussian pair keyed by (seed, xi): grid-size independent
cplx hash_cgauss(std::uint64_t seed, const IVec& xi) {
  std::uint64_t key = splitmix64(seed ^ 0x243F6A8885A308D3ull);
  key = splitmix64(key ^ static_cast<std::uint32_t>(xi[0]));
  key = splitmix64(key ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(xi[1])) << 32));
  double u1 = unit_double(splitmix64(key ^ 1));
  double u2 = unit_double(splitmix64(key ^ 2));
  double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace

GridFunction theta_base(const TorusGrid& grid, int r_theta) {
  if (r_theta < 0 || r_theta > 2) throw std::invalid_argument("theta_base: r_theta in {0,1,2}");
  SpectralFunction F(grid);
  double dc = two_pi_pow(grid.dim);
  std::size_t sz = grid.size();
  for (std::size_t i = 0; i < sz; ++i) {
    double r = grid.freq_radius(i);
    if (r > r_theta + 1e-12) continue;
    double w = 1.0 - (r * r) / ((r_theta + 1.0) * (r_theta + 1.0));
    F.c[i] = dc * w * w;
  }
  return idft(F);
}

ThetaFamily build_theta_family(double d, const std::vector<int>& n_range, int r_theta,
                               const TorusGrid& grid, const DyadicPartition& part) {
  ThetaFamily fam;
  fam.d = d;
  fam.r_theta = r_theta;
  fam.n_values = n_range;
  fam.theta = theta_base(grid, r_theta);
  fam.theta_dc = two_pi_pow(grid.dim);

  SpectralFunction base = dft(fam.theta);
  int axis = grid.dim - 1;

  for (int N : n_range) {
    if (N < 1) throw std::invalid_argument("theta family: N must be >= 1");
    if (static_cast<long long>(N) * N > part.j_max)
      throw std::invalid_argument("theta family: N^2 must be <= j_max");
    if (r_theta > 0 && 20LL * r_theta > (1LL << N))
      throw std::invalid_argument("theta family: r_theta too large for N (20 r <= 2^N)");

    SpectralFunction F(grid);
    for (int j = N; j <= N * N; ++j) {
      double w = std::exp2(-d * j) / j;
      int shift = 1 << j;
      // copy the base spectrum shifted to 2^j e_n
      for (int o0 = -r_theta; o0 <= r_theta; ++o0) {
        for (int o1 = -(grid.dim == 2 ? r_theta : 0); o1 <= (grid.dim == 2 ? r_theta : 0); ++o1) {
          IVec src{o0, o1};
          if (!grid.freq_in_range(src)) continue;
          cplx b = base.at_freq(src);
          if (b == cplx(0.0)) continue;
          IVec dst = src;
          dst[axis] += shift;
          if (!grid.freq_in_range(dst))
            throw std::invalid_argument("theta family: shifted spectrum leaves the lattice");
          F.at_freq(dst) += w * b;
        }
      }
    }
    fam.members.push_back(idft(F));
  }
  return fam;
}

GridFunction random_resolved(const TorusGrid& grid, const DyadicPartition& part,
                             std::uint64_t seed, int j_gen) {
  if (j_gen < 0) j_gen = part.j_max;
  if (j_gen > part.j_max) throw std::invalid_argument("random_resolved: j_gen > j_max");
  double cap = std::ldexp(CutoffProfile::kLower, j_gen);
  SpectralFunction F(grid);
  std::size_t sz = grid.size();
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      if (grid.freq_radius(i) > cap) continue;
      F.c[i] = hash_cgauss(seed, grid.freq_at(i));
    }
  });
  return idft(F);
}

GridFunction random_band_limited(const TorusGrid& grid, double radius, std::uint64_t seed) {
  SpectralFunction F(grid);
  std::size_t sz = grid.size();
  parallel_for(sz, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      if (grid.freq_radius(i) > radius) continue;
      F.c[i] = hash_cgauss(seed, grid.freq_at(i));
    }
  });
  return idft(F);
}

GridFunction random_shaped(const TorusGrid& grid, const DyadicPartition& part,
                           const NormSpec& spec, std::uint64_t seed) {
  GridFunction u = random_resolved(grid, part, seed);
  double nrm = space_norm(u, spec, part);
  if (nrm == 0.0) throw std::runtime_error("random_shaped: degenerate draw");
  return cplx(1.0 / nrm) * u;
}

cplx pairing(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("pairing: grid mismatch");
  cplx s = deterministic_csum(f.v.size(), [&](std::size_t i) { return f.v[i] * g.v[i]; });
  return s * f.grid.cell_measure();
}

// --- counterexample ------------------------------------------------------------

Report counterexample_run(double d, const std::vector<int>& n_range,
                          const std::vector<double>& q_list, const std::vector<double>& t_list,
                          const TorusGrid& grid, const DyadicPartition& part) {
  Report rep;
  rep.meta["probe"] = "counterexample";
  rep.meta["d"] = d;
  rep.meta["grid"] = {{"dim", grid.dim}, {"n", grid.n}, {"j_max", part.j_max}};

  ThetaFamily fam = build_theta_family(d, n_range, 0, grid, part);
  Symbol ching = ching_symbol(d, part);

  // smooth pairing witness with <theta, phi> = 1
  GridFunction phi(grid, cplx(1.0 / fam.theta_dc));
  double theta_pairing = pairing(fam.theta, phi).real();

  std::ostringstream growth;
  growth << "N,t,q,pairing,norm_over_theta,ratio,ref_ratio,rel_err\n";

  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t idx = 0; idx < fam.n_values.size(); ++idx) {
    int N = fam.n_values[idx];
    const GridFunction& thN = fam.members[idx];

    Frac harmonic = Frac::inverse_power_sum(N, N * N, 1);
    double harmonic_v = harmonic.to_double();

    ParaResult res = apply(ching, thN, part);
    GridFunction closed = cplx(harmonic_v) * fam.theta;
    double ident_err = l2_distance(res.total, closed) / lp_norm(closed, 2.0);

    double pair_v = pairing(res.total, phi).real();
    double pair_ratio = pair_v / theta_pairing;
    double pair_err = std::abs(pair_ratio - harmonic_v) / harmonic_v;

    nlohmann::json entry;
    entry["N"] = N;
    entry["harmonic"] = harmonic.str();
    entry["harmonic_value"] = harmonic_v;
    entry["identity_rel_err"] = ident_err;
    entry["pairing_ratio"] = pair_ratio;
    entry["pairing_rel_err"] = pair_err;
    rep.record("identity[N=" + std::to_string(N) + "]", ident_err <= 1e-10);
    rep.record("pairing[N=" + std::to_string(N) + "]", pair_err <= 1e-9);

    nlohmann::json norms = nlohmann::json::array();
    for (double t : t_list) {
      double theta_t = lp_norm(fam.theta, t);
      for (double q : q_list) {
        bool besov = std::isinf(t);
        NormSpec spec{besov ? SpaceKind::Besov : SpaceKind::TriebelLizorkin, d,
                      besov ? std::numeric_limits<double>::infinity() : t, q};
        double value = besov ? b_norm(thN, spec, part) : f_norm(thN, spec, part);

        double qsum;
        std::string qsum_str;
        if (std::isinf(q)) {
          qsum = 1.0 / N;
          qsum_str = "1/" + std::to_string(N);
        } else if (q == std::floor(q) && q >= 1.0) {
          Frac f = Frac::inverse_power_sum(N, N * N, static_cast<int>(q));
          qsum = std::pow(f.to_double(), 1.0 / q);
          qsum_str = f.str();
        } else {
          double s = 0.0;
          for (int j = N; j <= N * N; ++j) s += std::pow(j, -q);
          qsum = std::pow(s, 1.0 / q);
          qsum_str = "";
        }
        double closed_norm = theta_t * qsum;
        double rel = std::abs(value - closed_norm) / closed_norm;

        double ratio = pair_ratio / (value / theta_t);
        double ref = harmonic_v / qsum;
        double ratio_err = std::abs(ratio - ref) / ref;

        nlohmann::json row;
        row["t"] = std::isinf(t) ? -1.0 : t;
        row["q"] = std::isinf(q) ? -1.0 : q;
        row["kind"] = besov ? "B" : "F";
        row["value"] = value;
        row["closed_form"] = closed_norm;
        row["rel_err"] = rel;
        row["qsum_rational"] = qsum_str;
        row["growth_ratio"] = ratio;
        row["growth_ref"] = ref;
        row["growth_rel_err"] = ratio_err;
        norms.push_back(row);
        rep.record("norm[N=" + std::to_string(N) + ",t=" + format_double(t) +
                       ",q=" + format_double(q) + "]",
                   rel <= 1e-6);
        rep.record("growth[N=" + std::to_string(N) + ",t=" + format_double(t) +
                       ",q=" + format_double(q) + "]",
                   ratio_err <= 1e-6);

        growth << N << "," << format_double(t) << "," << format_double(q) << ","
               << format_double(pair_ratio) << "," << format_double(value / theta_t) << ","
               << format_double(ratio) << "," << format_double(ref) << ","
               << format_double(ratio_err) << "\n";
      }
    }
    entry["norms"] = std::move(norms);
    entries.push_back(std::move(entry));
  }
  rep.results["members"] = std::move(entries);
  rep.tables.push_back({"growth", growth.str()});
  return rep;
}

// --- boundedness -----------------------------------------------------------------

BoundednessReport boundedness_probe(const Symbol& a, const NormSpec& spec, double d,
                                    const std::vector<GridFunction>& inputs,
                                    const DyadicPartition& part) {
  spec.validate();
  BoundednessReport rep;
  rep.symbol_name = a.name;

  NormSpec source = spec;
  source.s = spec.s + d;
  int n = part.grid.dim;

  bool target_lp = spec.s == 0.0 && spec.q == 1.0;
  NormSpec target = spec;
  if (!target_lp && spec.kind == SpaceKind::TriebelLizorkin && spec.s > 0.0)
    target.q = std::max(spec.q, n / (n + spec.s) * (1.0 + 1e-9));

  rep.source = kind_name(source.kind) + "(s=" + format_double(source.s) +
               ",p=" + format_double(source.p) + ",q=" + format_double(source.q) + ")";
  rep.target = target_lp ? "L_p(p=" + format_double(spec.p) + ")"
                         : kind_name(target.kind) + "(s=" + format_double(target.s) +
                               ",p=" + format_double(target.p) + ",q=" + format_double(target.q) + ")";

  for (const GridFunction& u : inputs) {
    ParaResult res = apply(a, u, part);
    double num = target_lp ? lp_norm(res.total, spec.p) : space_norm(res.total, target, part);
    double den = space_norm(u, source, part);
    rep.ratios.push_back(num / den);
  }
  for (double r : rep.ratios) rep.sup_ratio = std::max(rep.sup_ratio, r);

  // log-log slope against input position
  std::size_t m = rep.ratios.size();
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double x = std::log(static_cast<double>(i + 1));
      double y = std::log(std::max(rep.ratios[i], 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    rep.slope = denom == 0.0 ? 0.0 : (m * sxy - sx * sy) / denom;
  }
  rep.diagnosis = rep.slope > 0.05 ? "growing(rate=" + format_double(rep.slope) + ")" : "bounded";
  return rep;
}

// --- Marschall ratio ----------------------------------------------------------

MarschallResult marschall_probe(const Symbol& a, const GridFunction& v, int k, double t,
                                const DyadicPartition& part) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("marschall_probe: t must be in (0,1]");
  if (k < 1 || k > part.j_max + 1) throw std::invalid_argument("marschall_probe: k out of range");
  const TorusGrid& grid = part.grid;
  int n = grid.dim;
  std::size_t sz = grid.size();

  // band-limit both slots below 2^k (Psi_{k-1} vanishes past 0.65 * 2^k)
  Symbol b = band_limit_symbol(a, k - 1);
  SpectralFunction vh = dft(v);
  std::vector<double> window(sz);
  for (std::size_t i = 0; i < sz; ++i) window[i] = part.psi_value(k - 1, grid.freq_radius(i));
  GridFunction vb = idft(apply_multiplier(vh, window));

  GridFunction num = direct_apply(b, vb);
  GridFunction mt = maximal(vb, t);

  // The row x -> b(x, .) is a combination sum_t m_t(x) G_t of fixed lattice
  // rows, so the dyadic blocks of every G_t are transformed once and the
  // per-point norm combines them linearly.
  struct TermData {
    std::vector<cplx> m;   // multiplier samples over x
    EtaProfile g_callable; // eta profile, evaluable at arbitrary real frequency
  };
  std::vector<TermData> terms;
  if (std::holds_alternative<std::vector<XModeTerm>>(b.structure)) {
    for (const XModeTerm& term : std::get<std::vector<XModeTerm>>(b.structure)) {
      TermData td;
      td.g_callable = term.g;
      td.m.resize(sz);
      for (std::size_t i = 0; i < sz; ++i) {
        RVec x = grid.point_at(i);
        double ph = x[0] * term.nu[0] + x[1] * term.nu[1];
        td.m[i] = cplx(std::cos(ph), std::sin(ph));
      }
      terms.push_back(std::move(td));
    }
  } else if (std::holds_alternative<std::vector<SeparableTerm>>(b.structure)) {
    for (const SeparableTerm& term : std::get<std::vector<SeparableTerm>>(b.structure)) {
      TermData td;
      td.g_callable = term.g;
      td.m = idft(term.m_hat).v;
      terms.push_back(std::move(td));
    }
  } else {
    throw std::invalid_argument("marschall_probe: symbol carries no spectral structure");
  }
  std::size_t T = terms.size();

  // Rows are normed on a window scaled with 2^k (extent 8 * 2^k per axis,
  // fixed point count), so the discretization of || b(x, .) || is the same
  // at every k and the dyadic-scaling factor applies cleanly.
  int wpts = grid.dim == 1 ? 512 : 64;
  double wspacing = 8.0 * std::exp2(k) / wpts;
  std::size_t wsz = grid.dim == 1 ? static_cast<std::size_t>(wpts)
                                  : static_cast<std::size_t>(wpts) * wpts;
  auto window_freq = [&](std::size_t i) -> RVec {
    int b0 = grid.dim == 1 ? static_cast<int>(i) : static_cast<int>(i / wpts);
    int b1 = grid.dim == 1 ? 0 : static_cast<int>(i % wpts);
    double f0 = b0 < wpts / 2 ? b0 : b0 - wpts;
    double f1 = b1 < wpts / 2 ? b1 : b1 - wpts;
    return {wspacing * f0, grid.dim == 2 ? wspacing * f1 : 0.0};
  };

  CutoffProfile prof;
  double zstep = kTwoPi / (wpts * wspacing);
  double z_max = zstep * (grid.dim == 1 ? wpts / 2.0 : std::sqrt(2.0) * wpts / 2.0);
  int j_lo = 0;
  while (std::ldexp(1.3, j_lo) >= zstep) --j_lo;
  ++j_lo;
  int j_hi = 0;
  while (std::ldexp(0.55, j_hi + 1) <= z_max) ++j_hi;
  int nj = j_hi - j_lo + 1;
  auto wfreq_radius = [&](std::size_t i) -> double {  // integer bin radius
    int b0 = grid.dim == 1 ? static_cast<int>(i) : static_cast<int>(i / wpts);
    int b1 = grid.dim == 1 ? 0 : static_cast<int>(i % wpts);
    double f0 = b0 < wpts / 2 ? b0 : b0 - wpts;
    double f1 = b1 < wpts / 2 ? b1 : b1 - wpts;
    return grid.dim == 1 ? std::abs(f0) : std::hypot(f0, f1);
  };

  double inv_wsz = 1.0 / static_cast<double>(wsz);
  double wcell = grid.dim == 1 ? wspacing : wspacing * wspacing;
  std::vector<std::vector<std::vector<cplx>>> gblock(T);  // [t][j][window point]
  for (std::size_t tt = 0; tt < T; ++tt) {
    std::vector<cplx> zhat(wsz);
    for (std::size_t i = 0; i < wsz; ++i) zhat[i] = terms[tt].g_callable(window_freq(i));
    fft_axes(zhat.data(), grid.dim, static_cast<std::size_t>(wpts), -1);
    gblock[tt].assign(nj, {});
    for (int j = j_lo; j <= j_hi; ++j) {
      std::vector<cplx> blk(wsz);
      bool any = false;
      for (std::size_t i = 0; i < wsz; ++i) {
        double y = std::ldexp(zstep * wfreq_radius(i), -j + 1);
        double w = prof(0.5 * y) - prof(y);
        blk[i] = w == 0.0 ? cplx(0.0) : w * zhat[i] * inv_wsz;
        any = any || blk[i] != cplx(0.0);
      }
      if (!any) continue;
      fft_axes(blk.data(), grid.dim, static_cast<std::size_t>(wpts), +1);
      gblock[tt][j - j_lo] = std::move(blk);
    }
  }

  // sup over sampled points (full grid when small)
  std::size_t stride = std::max<std::size_t>(1, sz / 256);
  std::vector<std::size_t> xs;
  for (std::size_t i = 0; i < sz; i += stride) xs.push_back(i);

  double s = n / t;
  double scale = std::exp2(k * (s - static_cast<double>(n)));  // p = 1
  MarschallResult out;
  double peak_num = max_abs(num.v);
  std::vector<double> per_point(xs.size(), 0.0);
  std::vector<char> infinite(xs.size(), 0);
  parallel_for(xs.size(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> weighted;
    for (std::size_t ii = lo; ii < hi; ++ii) {
      std::size_t i = xs[ii];
      weighted.clear();
      for (int j = 0; j < nj; ++j) {
        double l1 = 0.0;
        bool present = false;
        for (std::size_t e = 0; e < wsz; ++e) {
          cplx acc(0.0);
          for (std::size_t tt = 0; tt < T; ++tt) {
            if (gblock[tt][j].empty()) continue;
            acc += terms[tt].m[i] * gblock[tt][j][e];
            present = true;
          }
          l1 += std::abs(acc);
        }
        if (!present || l1 == 0.0) continue;
        weighted.push_back(std::exp2(s * (j + j_lo)) * l1 * wcell);
      }
      double w_max = 0.0;
      for (double w : weighted) w_max = std::max(w_max, w);
      double norm_acc = 0.0;
      for (double w : weighted)
        if (w > 1e-11 * w_max) norm_acc += std::pow(w, t);  // q = t, noise floor
      double rn = scale * std::pow(norm_acc, 1.0 / t);
      double den = rn * std::abs(mt.v[i]);
      double nu = std::abs(num.v[i]);
      if (den <= 1e-300) {
        if (nu > 1e-12 * peak_num) infinite[ii] = 1;
        continue;
      }
      per_point[ii] = nu / den;
    }
  });
  for (std::size_t ii = 0; ii < xs.size(); ++ii) {
    if (infinite[ii]) out.finite = false;
    if (per_point[ii] > 0.0) {
      out.sup_ratio = std::max(out.sup_ratio, per_point[ii]);
      ++out.points_used;
    }
  }
  return out;
}

// --- empirical inequality constants ---------------------------------------------

double vector_lq_lp(const std::vector<GridFunction>& fs, double q, double p) {
  if (fs.empty()) return 0.0;
  const TorusGrid& grid = fs.front().grid;
  GridFunction inner(grid);
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double acc = 0.0;
      if (std::isinf(q)) {
        for (const GridFunction& f : fs) acc = std::max(acc, std::abs(f.v[i]));
      } else {
        for (const GridFunction& f : fs) acc += std::pow(std::abs(f.v[i]), q);
        acc = std::pow(acc, 1.0 / q);
      }
      inner.v[i] = acc;
    }
  });
  return lp_norm(inner, p);
}

EmpiricalConstant fefferman_stein_constant(const TorusGrid& grid, const DyadicPartition& part,
                                           double p, double q, double t, int n_families,
                                           int family_size, std::uint64_t seed) {
  EmpiricalConstant out;
  out.seed = seed;
  for (int fam = 0; fam < n_families; ++fam) {
    std::vector<GridFunction> fs, ms;
    for (int k = 0; k < family_size; ++k) {
      std::uint64_t s = seed + 1000003ull * static_cast<std::uint64_t>(fam) + static_cast<std::uint64_t>(k);
      fs.push_back(random_resolved(grid, part, s));
      ms.push_back(maximal(fs.back(), t));
    }
    double lhs = vector_lq_lp(ms, q, p);
    double rhs = vector_lq_lp(fs, q, p);
    if (rhs > 0.0) out.c_emp = std::max(out.c_emp, lhs / rhs);
    ++out.samples;
  }
  return out;
}

EmpiricalConstant nikolskii_constant(const TorusGrid& grid, double t,
                                     const std::vector<double>& radii, int draws_per_radius,
                                     std::uint64_t seed) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("nikolskii: t must be in (0,1]");
  EmpiricalConstant out;
  out.seed = seed;
  int n = grid.dim;
  for (double R : radii) {
    for (int i = 0; i < draws_per_radius; ++i) {
      std::uint64_t s = seed + 7919ull * static_cast<std::uint64_t>(i) +
                        static_cast<std::uint64_t>(std::llround(R) * 104729ll);
      GridFunction f = random_band_limited(grid, R, s);
      double l1 = lp_norm(f, 1.0);
      double lt = lp_norm(f, t);
      double scale = std::pow(R, static_cast<double>(n) / t - n);
      if (lt > 0.0) out.c_emp = std::max(out.c_emp, l1 / (scale * lt));
      ++out.samples;
    }
  }
  return out;
}

}  // namespace paradiff
