#include "paradiff/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "paradiff/reduce.hpp"
#include "paradiff/rng.hpp"

namespace paradiff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void add_claim(Report& rep, const std::string& name, bool ok, double value, double bound,
               const std::string& note = "") {
  nlohmann::json c;
  c["name"] = name;
  c["pass"] = ok;
  c["value"] = value;
  c["bound"] = bound;
  if (!note.empty()) c["note"] = note;
  rep.results["claims"].push_back(std::move(c));
  rep.record(name, ok);
}

GridFunction real_part(const GridFunction& f) {
  GridFunction r(f.grid);
  for (std::size_t i = 0; i < f.v.size(); ++i) r.v[i] = f.v[i].real();
  return r;
}

GridFunction pure_mode(const TorusGrid& grid, const IVec& xi) {
  SpectralFunction F(grid);
  F.at_freq(xi) = grid.dim == 1 ? kTwoPi : kTwoPi * kTwoPi;
  return idft(F);
}

Symbol make_separable_symbol(const std::string& name, const TorusGrid& grid,
                             std::vector<std::pair<GridFunction, EtaProfile>> parts) {
  auto values = std::make_shared<std::vector<std::vector<cplx>>>();
  auto profiles = std::make_shared<std::vector<EtaProfile>>();
  std::vector<SeparableTerm> terms;
  for (auto& [m, g] : parts) {
    values->push_back(m.v);
    profiles->push_back(g);
    terms.push_back({dft(m), g});
  }
  Symbol s;
  s.name = name;
  s.dim = grid.dim;
  s.eval = [values, profiles, grid](const RVec& x, const RVec& xi) -> cplx {
    double h = grid.spacing();
    IVec m{0, 0};
    for (int a = 0; a < grid.dim; ++a) {
      long r = std::lround(x[a] / h) % grid.n;
      if (r < 0) r += grid.n;
      m[a] = static_cast<int>(r);
    }
    std::size_t ix = grid.flat_index(m);
    cplx acc(0.0);
    for (std::size_t t = 0; t < values->size(); ++t) acc += (*values)[t][ix] * (*profiles)[t](xi);
    return acc;
  };
  s.structure = std::move(terms);
  return s;
}

// --- partition suite ---------------------------------------------------------

void suite_partition(Report& rep, const VerifyConfig& cfg) {
  TorusGrid grid = make_grid(cfg.dim, cfg.n);
  DyadicPartition part = build_partition(grid, cfg.j_max);
  std::size_t sz = grid.size();

  double plateau = std::exp2(cfg.j_max);
  double dev = deterministic_max(sz, [&](std::size_t i) {
    if (grid.freq_radius(i) > plateau) return 0.0;
    double s = 0.0;
    for (int j = 0; j <= part.j_max; ++j) s += part.phi_j(j)[i];
    return std::abs(s - 1.0);
  });
  add_claim(rep, "partition-of-unity", dev <= 1e-12, dev, 1e-12);

  double support_bad = 0.0;
  for (int j = 1; j <= part.j_max; ++j) {
    double lo = 0.55 * std::exp2(j), hi = 1.3 * std::exp2(j);
    support_bad += deterministic_sum(sz, [&](std::size_t i) {
      double r = grid.freq_radius(i);
      return (part.phi_j(j)[i] != 0.0 && (r < lo || r > hi)) ? 1.0 : 0.0;
    });
  }
  add_claim(rep, "support-constants-exact", support_bad == 0.0, support_bad, 0.0);

  double overlap = 0.0;
  for (int j = 0; j + 2 <= part.j_max; ++j)
    overlap += deterministic_sum(
        sz, [&](std::size_t i) { return std::abs(part.phi_j(j)[i] * part.phi_j(j + 2)[i]); });
  add_claim(rep, "adjacent-only-overlap", overlap == 0.0, overlap, 0.0);

  double tilde_dev = 0.0;
  for (int j = 0; j <= part.j_max; ++j) {
    std::vector<double> tld = part.phi_tilde(j);
    tilde_dev = std::max(tilde_dev, deterministic_max(sz, [&](std::size_t i) {
                           return std::abs(tld[i] * part.phi_j(j)[i] - part.phi_j(j)[i]);
                         }));
  }
  add_claim(rep, "tilde-window-identity", tilde_dev == 0.0, tilde_dev, 0.0);

  double tele = 0.0;
  for (int j = 0; j <= part.j_max; ++j) {
    tele = std::max(tele, deterministic_max(sz, [&](std::size_t i) {
                      double s = 0.0;
                      for (int k = 0; k <= j; ++k) s += part.phi_j(k)[i];
                      return std::abs(s - part.psi_j(j)[i]);
                    }));
  }
  add_claim(rep, "low-pass-telescoping", tele <= 1e-12, tele, 1e-12);

  IVec xi{0, 0};
  xi[grid.dim - 1] = 1 << std::max(1, part.j_max - 1);
  GridFunction mode = pure_mode(grid, xi);
  int jm = std::max(1, part.j_max - 1);
  double mode_err = l2_distance(block(mode, jm, part), mode) / lp_norm(mode, 2.0);
  double leak = lp_norm(block(mode, jm - 1 >= 0 ? std::max(0, jm - 2) : 0, part), 2.0);
  add_claim(rep, "pure-mode-block", mode_err <= 1e-12 && leak <= 1e-12 * lp_norm(mode, 2.0),
            std::max(mode_err, leak), 1e-12);

  GridFunction f = random_resolved(grid, part, cfg.seed);
  DyadicBlocks blocks = decompose(f, part);
  GridFunction sum(grid);
  for (const GridFunction& b : blocks.blocks) sum = sum + b;
  double rec = l2_distance(sum, f) / lp_norm(f, 2.0);
  add_claim(rep, "reconstruction", rec <= 1e-10, rec, 1e-10);

  rep.results["j_max"] = part.j_max;
  rep.results["j_top"] = part.j_top;
}

// --- shipped symbol/input families --------------------------------------------

std::vector<GridFunction> band_limited_multipliers(const TorusGrid& grid, int count,
                                                   std::uint64_t seed, double radius) {
  std::vector<GridFunction> out;
  for (int j = 0; j < count; ++j)
    out.push_back(random_band_limited(grid, std::min(radius, std::exp2(j)), seed + 31ull * j));
  return out;
}

}  // namespace

std::vector<SymbolInputPair> shipped_pairs(const TorusGrid& grid, const DyadicPartition& part,
                                           std::uint64_t seed) {
  std::vector<SymbolInputPair> pairs;
  ThetaFamily fam = build_theta_family(0.0, {2}, 0, grid, part);
  const GridFunction& theta2 = fam.members[0];
  GridFunction rnd = random_resolved(grid, part, seed, part.j_max - 1);
  IVec spike{0, 0};
  spike[grid.dim - 1] = 1 << (part.j_max - 1);
  GridFunction mode = pure_mode(grid, spike);

  double mrad = std::min(std::exp2(part.j_max - 2), grid.n / 8.0);
  std::vector<GridFunction> mults = band_limited_multipliers(grid, 5, seed ^ 0xabcdef, mrad);

  GridFunction u_for_au = real_part(random_resolved(grid, part, seed + 5, part.j_max - 1));

  pairs.push_back({"identity|theta2", identity_symbol(grid.dim), theta2});
  pairs.push_back({"identity|random", identity_symbol(grid.dim), rnd});
  pairs.push_back({"constant|mode", constant_symbol(grid.dim, cplx(2.5, 0.5)), mode});
  pairs.push_back({"bessel(-1)|random", bessel_multiplier_symbol(grid.dim, -1.0), rnd});
  pairs.push_back({"gauss|theta2", gaussian_multiplier_symbol(grid.dim, std::exp2(part.j_max - 2)), theta2});
  pairs.push_back({"ching(0)|theta2", ching_symbol(0.0, part), theta2});
  pairs.push_back({"ching(0)|random", ching_symbol(0.0, part), rnd});
  pairs.push_back({"ching(1)|theta2", ching_symbol(1.0, part), theta2});
  pairs.push_back({"ching(-1)|mode", ching_symbol(-1.0, part), mode});
  pairs.push_back({"reduced(a)|random", reduced_symbol(mults, part), rnd});
  pairs.push_back({"reduced(b)|theta2",
                   reduced_symbol(band_limited_multipliers(grid, 4, seed ^ 0x1234567, mrad), part),
                   theta2});
  pairs.push_back({"nonlinear(cos)|random",
                   nonlinear_symbol([](double v) { return std::cos(v); }, u_for_au, part), rnd});
  pairs.push_back({"cutoff(C=2)|random", twisted_cutoff_symbol(part, 2.0, seed + 9), rnd});
  return pairs;
}

namespace {

void suite_support_rule(Report& rep, const VerifyConfig& cfg) {
  TorusGrid grid = make_grid(cfg.dim, cfg.n);
  DyadicPartition part = build_partition(grid, cfg.j_max);
  std::vector<SymbolInputPair> pairs = shipped_pairs(grid, part, cfg.seed);
  if (!cfg.symbol.empty()) {
    std::vector<SymbolInputPair> kept;
    for (SymbolInputPair& pr : pairs)
      if (pr.label.find(cfg.symbol) != std::string::npos) kept.push_back(std::move(pr));
    if (kept.empty()) throw std::invalid_argument("no shipped pair matches symbol " + cfg.symbol);
    pairs = std::move(kept);
  }

  std::vector<SupportClaim> all;
  bool tightness_hit = false;
  for (SymbolInputPair& pr : pairs) {
    SupportClaim c = support_rule_check(pr.symbol, pr.input, cfg.threshold, 1);
    c.id = "support-rule[" + pr.label + "]";
    add_claim(rep, c.id, c.pass, c.worst_violation, cfg.threshold * c.max_coeff);
    all.push_back(c);
    if (!tightness_hit) {
      SupportClaim eroded = support_rule_check(pr.symbol, pr.input, cfg.threshold, -2);
      if (!eroded.pass) tightness_hit = true;
    }
  }
  add_claim(rep, "tightness-erosion-fails", tightness_hit, tightness_hit ? 1.0 : 0.0, 1.0,
            "eroding the predicted set by 2 cells must break at least one family");
  rep.tables.push_back({"claims", claims_csv(all)});
}

void suite_inclusions(Report& rep, const VerifyConfig& cfg) {
  TorusGrid grid = make_grid(cfg.dim, cfg.n);
  DyadicPartition part = build_partition(grid, cfg.j_max);
  GridFunction rnd = random_resolved(grid, part, cfg.seed);

  struct Case {
    std::string label;
    Symbol sym;
    std::optional<double> C;
  };
  std::vector<Case> cases;
  cases.push_back({"identity", identity_symbol(grid.dim), std::nullopt});
  cases.push_back({"ching(0)", ching_symbol(0.0, part), std::nullopt});
  double mrad = std::min(std::exp2(part.j_max - 2), grid.n / 8.0);
  cases.push_back({"reduced", reduced_symbol(band_limited_multipliers(grid, 5, cfg.seed ^ 0x77, mrad), part),
                   std::nullopt});
  cases.push_back({"cutoff", twisted_cutoff_symbol(part, cfg.twisted_C, cfg.seed + 9), cfg.twisted_C});
  if (!cfg.symbol.empty()) {
    std::vector<Case> kept;
    for (Case& cs : cases)
      if (cs.label.find(cfg.symbol) != std::string::npos) kept.push_back(std::move(cs));
    if (kept.empty()) throw std::invalid_argument("no inclusion case matches symbol " + cfg.symbol);
    cases = std::move(kept);
  }

  std::vector<SupportClaim> all;
  for (Case& cs : cases) {
    ParaResult res = apply(cs.sym, rnd, part, true);
    std::vector<SupportClaim> claims = inclusion_check(res, part, cs.C, cfg.threshold);
    for (SupportClaim& c : claims) {
      c.id = cs.label + ":" + c.id;
      add_claim(rep, c.id, c.pass, c.worst_violation, cfg.threshold * c.max_coeff);
      all.push_back(std::move(c));
    }
  }
  rep.tables.push_back({"claims", claims_csv(all)});
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

void suite_marschall(Report& rep, const VerifyConfig& cfg) {
  TorusGrid grid = make_grid(cfg.dim, cfg.n);
  DyadicPartition part = build_partition(grid, cfg.j_max);
  int k_lo = 3;
  int k_hi = std::min(7, part.j_max + 1);  // full range 3..7 on 1d acceptance grids

  for (double t : {0.5, 1.0}) {
    std::vector<double> all_sups;
    std::vector<std::vector<double>> sups_per_k(static_cast<std::size_t>(k_hi - k_lo + 1));
    bool all_finite = true;
    // paired design: each rep draws one (a, v) shape and runs its exact
    // dilates at every k, so the spread isolates the k-dependence
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
      Rng rng(cfg.seed + 131ull * static_cast<std::uint64_t>(rep_i) +
              (t < 1.0 ? 0ull : 1000000007ull));
      int om = 1 + static_cast<int>(rng.word() % 3);
      double amp = rng.uniform(0.3, 0.7);
      double ph = rng.uniform(0.0, kTwoPi);
      double amp2 = rng.uniform(0.2, 0.5);
      double ph2 = rng.uniform(0.0, kTwoPi);
      struct Mode { int mu; int sign; cplx c; };
      std::vector<Mode> modes;
      for (int i = 0; i < 8; ++i) {
        int mu = static_cast<int>(std::lround(4.8 * rng.uniform(0.25, 1.0)));
        if (mu == 0) mu = 1;
        modes.push_back({mu, rng.uniform01() < 0.5 ? -1 : 1, rng.cgauss()});
      }
      for (int k = k_lo; k <= k_hi; ++k) {
        int dil = 1 << (k - 3);
        GridFunction m1(grid), m2(grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          RVec x = grid.point_at(i);
          m1.v[i] = 1.0 + amp * std::cos(om * dil * x[0] + ph);
          m2.v[i] = amp2 * std::sin((om + 1) * dil * x[grid.dim - 1] + ph2);
        }
        double W = 0.2 * std::exp2(k);
        EtaProfile bump = [W](const RVec& eta) -> cplx {
          double r2 = eta[0] * eta[0] + eta[1] * eta[1];
          return std::exp(-r2 / (2.0 * W * W));
        };
        int axis = grid.dim - 1;
        EtaProfile tilt = [W, axis](const RVec& eta) -> cplx {
          double r2 = eta[0] * eta[0] + eta[1] * eta[1];
          return (eta[axis] / W) * std::exp(-r2 / (2.0 * W * W));
        };
        Symbol a = make_separable_symbol("marschall-rand", grid, {{m1, bump}, {m2, tilt}});
        SpectralFunction F(grid);
        for (const Mode& md : modes) {
          IVec xi{0, 0};
          xi[grid.dim - 1] = md.sign * md.mu * dil;
          F.at_freq(xi) += md.c;
        }
        GridFunction v = idft(F);
        MarschallResult mr = marschall_probe(a, v, k, t, part);
        all_finite = all_finite && mr.finite && std::isfinite(mr.sup_ratio);
        sups_per_k[static_cast<std::size_t>(k - k_lo)].push_back(mr.sup_ratio);
        all_sups.push_back(mr.sup_ratio);
      }
    }
    std::vector<double> k_medians;
    for (const std::vector<double>& sk : sups_per_k) k_medians.push_back(median_of(sk));
    double overall = median_of(all_sups);
    double worst = 0.0;
    for (double m : k_medians) worst = std::max(worst, std::abs(m - overall) / overall);
    std::string tname = format_double(t);
    add_claim(rep, "marschall-finite[t=" + tname + "]", all_finite, all_finite ? 1.0 : 0.0, 1.0);
    add_claim(rep, "marschall-spread[t=" + tname + "]", worst <= 0.30, worst, 0.30,
              "max relative deviation of per-k median sup ratios from the overall median");
    nlohmann::json arr = nlohmann::json::array();
    for (double s : all_sups) arr.push_back(s);
    rep.results["marschall-sups[t=" + tname + "]"] = std::move(arr);
    nlohmann::json med = nlohmann::json::array();
    for (double m : k_medians) med.push_back(m);
    rep.results["marschall-k-medians[t=" + tname + "]"] = std::move(med);
  }
}

void suite_fefferman_stein(Report& rep, const VerifyConfig& cfg) {
  int base = cfg.dim == 2 ? 64 : 512;
  TorusGrid coarse = make_grid(cfg.dim, base);
  TorusGrid fine = make_grid(cfg.dim, 2 * base);
  int j = cfg.dim == 2 ? 4 : 6;
  DyadicPartition pc = build_partition(coarse, j);
  DyadicPartition pf = build_partition(fine, j);

  struct Combo { double p, q, t; };
  for (Combo c : {Combo{2, 2, 0.5}, Combo{2, 1, 0.5}, Combo{1, 2, 0.5}}) {
    EmpiricalConstant base = fefferman_stein_constant(coarse, pc, c.p, c.q, c.t, 100, 4, cfg.seed);
    EmpiricalConstant refined = fefferman_stein_constant(fine, pf, c.p, c.q, c.t, 100, 4, cfg.seed);
    double drift = std::abs(refined.c_emp - base.c_emp) / base.c_emp;
    std::string id = "p=" + format_double(c.p) + ",q=" + format_double(c.q) + ",t=" + format_double(c.t);
    add_claim(rep, "fs-stability[" + id + "]", drift <= 0.20, drift, 0.20);

    double fixed = 2.0 * base.c_emp;
    EmpiricalConstant fresh = fefferman_stein_constant(coarse, pc, c.p, c.q, c.t, 25, 4, cfg.seed + 777);
    add_claim(rep, "fs-never-violated[" + id + "]", fresh.c_emp <= fixed, fresh.c_emp, fixed);
    rep.results["fs-c_emp[" + id + "]"] = base.c_emp;
  }
}

void suite_nikolskii(Report& rep, const VerifyConfig& cfg) {
  int base = cfg.dim == 2 ? 64 : 512;
  TorusGrid coarse = make_grid(cfg.dim, base);
  TorusGrid fine = make_grid(cfg.dim, 2 * base);
  std::vector<double> radii = cfg.dim == 2 ? std::vector<double>{8.0, 16.0}
                                           : std::vector<double>{16.0, 32.0, 64.0};

  for (double t : {0.5, 0.75, 1.0}) {
    EmpiricalConstant base = nikolskii_constant(coarse, t, radii, 12, cfg.seed);
    EmpiricalConstant refined = nikolskii_constant(fine, t, radii, 12, cfg.seed);
    double drift = std::abs(refined.c_emp - base.c_emp) / base.c_emp;
    std::string id = "t=" + format_double(t);
    add_claim(rep, "nikolskii-stability[" + id + "]", drift <= 0.20, drift, 0.20);

    double fixed = 2.0 * base.c_emp;
    EmpiricalConstant fresh = nikolskii_constant(coarse, t, radii, 8, cfg.seed + 777);
    add_claim(rep, "nikolskii-never-violated[" + id + "]", fresh.c_emp <= fixed, fresh.c_emp, fixed);
    rep.results["nikolskii-c_emp[" + id + "]"] = base.c_emp;
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"partition", "support-rule", "inclusions", "marschall", "fefferman-stein", "nikolskii"};
}

Report run_suite(const std::string& name, const VerifyConfig& cfg) {
  Report rep;
  rep.meta["suite"] = name;
  rep.meta["config"] = cfg.echo;
  rep.results["claims"] = nlohmann::json::array();

  VerifyConfig local = cfg;
  auto pick_size = [&](int n, int j) {
    if (!cfg.explicit_size) {
      if (cfg.dim == 2) {  // quadratic cost per axis: shrink the defaults
        local.n = std::max(64, n / 16);
        local.j_max = std::min(j, static_cast<int>(std::floor(std::log2(5.0 * local.n / 13.0))));
      } else {
        local.n = n;
        local.j_max = j;
      }
    }
  };
  if (name == "partition") {
    pick_size(4096, 10);
    suite_partition(rep, local);
  } else if (name == "support-rule") {
    pick_size(1024, 7);
    suite_support_rule(rep, local);
  } else if (name == "inclusions") {
    pick_size(2048, 9);
    suite_inclusions(rep, local);
  } else if (name == "marschall") {
    pick_size(2048, 8);
    suite_marschall(rep, local);
  } else if (name == "fefferman-stein") {
    suite_fefferman_stein(rep, local);
  } else if (name == "nikolskii") {
    suite_nikolskii(rep, local);
  } else if (name == "all") {
    for (const std::string& s : suite_names()) {
      Report sub = run_suite(s, cfg);
      rep.results["suites"][s] = sub.results;
      for (auto& tbl : sub.tables) rep.tables.push_back({s + "_" + tbl.first, tbl.second});
      if (!sub.pass && rep.pass) {
        rep.pass = false;
        rep.first_failure = sub.first_failure;
      }
    }
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  return rep;
}

}  // namespace paradiff
