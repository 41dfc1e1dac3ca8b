// Command-line front end: decompose | apply | norm | verify | counterexample | probe.
// Flags mirror the usual notation (--d, --s, --p, --q, --t, --J); a JSON config
// file can replace the flags wholesale. Reports land under --out as
// report.json plus CSV tables, with the configuration echoed verbatim.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "paradiff/paradiff.hpp"
#include "paradiff/reduce.hpp"
#include "paradiff/verify.hpp"

namespace pd = paradiff;

namespace {

struct CommonOpts {
  int dim = 1;
  int n = 1024;
  int j = 7;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out = "out";
  std::string config;
};

double parse_extended(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

std::map<std::string, std::string> parse_kv(const std::string& spec, std::string* head) {
  std::map<std::string, std::string> kv;
  std::string rest = spec;
  std::size_t colon = spec.find(':');
  *head = spec.substr(0, colon);
  if (colon == std::string::npos) return kv;
  rest = spec.substr(colon + 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) continue;
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key, double dflt) {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : parse_extended(it->second);
}

pd::GridFunction make_input(const std::string& spec, const pd::TorusGrid& grid,
                            const pd::DyadicPartition& part, std::uint64_t seed) {
  if (spec.find(".json") != std::string::npos || spec.find(".pdgf") != std::string::npos)
    return pd::load_grid_function(spec);
  std::string head;
  auto kv = parse_kv(spec, &head);
  if (head == "theta") {
    int N = static_cast<int>(kv_num(kv, "N", 2));
    double d = kv_num(kv, "d", 0.0);
    int r = static_cast<int>(kv_num(kv, "r", 0));
    return pd::build_theta_family(d, {N}, r, grid, part).members[0];
  }
  if (head == "random") {
    std::uint64_t s = static_cast<std::uint64_t>(kv_num(kv, "seed", static_cast<double>(seed)));
    int jg = static_cast<int>(kv_num(kv, "J", -1));
    return pd::random_resolved(grid, part, s, jg);
  }
  if (head == "mode") {
    pd::IVec xi{0, 0};
    xi[grid.dim - 1] = static_cast<int>(kv_num(kv, "xi", 8));
    pd::SpectralFunction F(grid);
    F.at_freq(xi) = grid.dim == 1 ? pd::kTwoPi : pd::kTwoPi * pd::kTwoPi;
    return pd::idft(F);
  }
  if (head == "const") {
    return pd::GridFunction(grid, pd::cplx(kv_num(kv, "c", 1.0)));
  }
  throw std::invalid_argument("unknown input spec: " + spec);
}

pd::Symbol make_symbol(const std::string& spec, const pd::TorusGrid& grid,
                       const pd::DyadicPartition& part, std::uint64_t seed) {
  if (spec.find(".json") != std::string::npos) {
    std::ifstream is(spec);
    if (!is) throw std::runtime_error("cannot open " + spec);
    nlohmann::json doc = nlohmann::json::parse(is);
    int dim = doc.at("dim").get<int>();
    int n = doc.at("n_points").get<int>();
    pd::TorusGrid g = pd::make_grid(dim, n);
    const nlohmann::json& arr = doc.at("values");
    std::vector<pd::cplx> vals(arr.size() / 2);
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = pd::cplx(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
    return pd::sampled_symbol(g, std::move(vals));
  }
  std::string head;
  auto kv = parse_kv(spec, &head);
  if (head == "identity") return pd::identity_symbol(grid.dim);
  if (head == "constant") return pd::constant_symbol(grid.dim, pd::cplx(kv_num(kv, "c", 1.0)));
  if (head == "ching") return pd::ching_symbol(kv_num(kv, "d", 0.0), part);
  if (head == "multiplier") {
    auto it = kv.find("name");
    std::string which = it == kv.end() ? "bessel" : it->second;
    if (which == "bessel") return pd::bessel_multiplier_symbol(grid.dim, kv_num(kv, "d", 0.0));
    if (which == "gauss") return pd::gaussian_multiplier_symbol(grid.dim, kv_num(kv, "sigma", 16.0));
    throw std::invalid_argument("unknown multiplier: " + which);
  }
  if (head == "reduced") {
    int count = static_cast<int>(kv_num(kv, "count", 5));
    std::uint64_t s = static_cast<std::uint64_t>(kv_num(kv, "seed", static_cast<double>(seed)));
    double radius = kv_num(kv, "radius", std::min(std::exp2(part.j_max - 2), grid.n / 8.0));
    std::vector<pd::GridFunction> mults;
    for (int j = 0; j < count; ++j)
      mults.push_back(pd::random_band_limited(grid, std::min(radius, std::exp2(j)), s + 31ull * j));
    return pd::reduced_symbol(mults, part);
  }
  if (head == "nonlinear") {
    auto it = kv.find("F");
    std::string which = it == kv.end() ? "cos" : it->second;
    std::function<double(double)> fp;
    if (which == "cos") fp = [](double v) { return std::cos(v); };
    else if (which == "sin") fp = [](double v) { return std::sin(v); };
    else if (which == "id") fp = [](double) { return 1.0; };
    else if (which == "square") fp = [](double v) { return v; };
    else throw std::invalid_argument("unknown F': " + which);
    std::uint64_t s = static_cast<std::uint64_t>(kv_num(kv, "seed", static_cast<double>(seed)));
    pd::GridFunction u = pd::random_resolved(grid, part, s, part.j_max - 1);
    for (auto& z : u.v) z = z.real();
    return pd::nonlinear_symbol(fp, u, part);
  }
  if (head == "cutoff")
    return pd::twisted_cutoff_symbol(part, kv_num(kv, "C", 2.0),
                                     static_cast<std::uint64_t>(kv_num(kv, "seed", static_cast<double>(seed))),
                                     kv_num(kv, "d", 0.0));
  throw std::invalid_argument("unknown symbol spec: " + spec);
}

nlohmann::json echo_config(const CommonOpts& c, const nlohmann::json& extra) {
  nlohmann::json j;
  j["dim"] = c.dim;
  j["N"] = c.n;
  j["J"] = c.j;
  j["seed"] = c.seed;
  j["threads"] = c.threads == 0 ? pd::max_threads() : c.threads;
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

void load_config_file(CommonOpts& c, nlohmann::json& extra) {
  if (c.config.empty()) return;
  std::ifstream is(c.config);
  if (!is) throw std::runtime_error("cannot open config " + c.config);
  nlohmann::json doc = nlohmann::json::parse(is);
  if (doc.contains("dim")) c.dim = doc["dim"].get<int>();
  if (doc.contains("N")) c.n = doc["N"].get<int>();
  if (doc.contains("J")) c.j = doc["J"].get<int>();
  if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("threads")) c.threads = doc["threads"].get<int>();
  if (doc.contains("out")) c.out = doc["out"].get<std::string>();
  for (auto& [k, v] : doc.items()) extra[k] = v;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--dim", c.dim, "torus dimension (1 or 2)");
  cmd->add_option("--N", c.n, "points per axis (power of two, >= 64)");
  cmd->add_option("--J", c.j, "top dyadic index");
  cmd->add_option("--seed", c.seed, "rng seed");
  cmd->add_option("--threads", c.threads, "worker cap (0 = auto / PARADIFF_THREADS)");
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--config", c.config, "JSON config file (replaces flags)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torus laboratory for type 1,1 operators"};
  app.require_subcommand(1);

  CommonOpts copt;

  // decompose
  auto* cmd_dec = app.add_subcommand("decompose", "Littlewood-Paley blocks of an input");
  std::string in_spec = "theta:N=2";
  bool export_partition = false;
  add_common(cmd_dec, copt);
  cmd_dec->add_option("--input", in_spec, "input (theta:N=..|random:..|mode:..|const:..|file)");
  cmd_dec->add_flag("--export-partition", export_partition, "also write the partition as CSV");

  // apply
  auto* cmd_app = app.add_subcommand("apply", "apply a symbol via the three-series split");
  std::string sym_spec = "identity";
  bool with_oracle = false;
  add_common(cmd_app, copt);
  cmd_app->add_option("--symbol", sym_spec, "symbol (identity|ching:d=..|multiplier:..|reduced:..|nonlinear:..|cutoff:..|file)");
  cmd_app->add_option("--input", in_spec, "input spec");
  cmd_app->add_flag("--oracle", with_oracle, "also run the direct quadrature and report the gap");

  // norm
  auto* cmd_norm = app.add_subcommand("norm", "Besov / Triebel-Lizorkin norms");
  std::string kind = "F";
  double s_s = 0.0;
  std::string p_s = "2", q_s = "2";
  std::vector<int> family_n;
  add_common(cmd_norm, copt);
  cmd_norm->add_option("--input", in_spec, "input spec");
  cmd_norm->add_option("--kind", kind, "B | F");
  cmd_norm->add_option("--s", s_s, "smoothness");
  cmd_norm->add_option("--p", p_s, "integrability (number or inf)");
  cmd_norm->add_option("--q", q_s, "summation (number or inf)");
  cmd_norm->add_option("--family-N", family_n, "emit a table over theta family members");

  // verify
  auto* cmd_ver = app.add_subcommand("verify", "run a named verification suite");
  std::string suite = "all";
  double twisted_c = 2.0;
  std::string ver_symbol;
  add_common(cmd_ver, copt);
  cmd_ver->add_option("--suite", suite, "partition|support-rule|inclusions|marschall|fefferman-stein|nikolskii|all");
  cmd_ver->add_option("--twisted-C", twisted_c, "cone constant for (S2') checks");
  cmd_ver->add_option("--symbol", ver_symbol, "optional symbol restriction");

  // counterexample
  auto* cmd_cex = app.add_subcommand("counterexample", "dichotomy experiment");
  double d_ord = 0.0;
  std::vector<int> n_list{2};
  std::vector<std::string> q_list{"1", "2", "inf"};
  std::vector<std::string> t_list{"1", "2", "inf"};
  add_common(cmd_cex, copt);
  cmd_cex->add_option("--d", d_ord, "symbol order");
  cmd_cex->add_option("--N-list", n_list, "family parameters N");
  cmd_cex->add_option("--q-list", q_list, "q values (number or inf)");
  cmd_cex->add_option("--t-list", t_list, "t values (number or inf -> Besov)");

  // probe
  auto* cmd_probe = app.add_subcommand("probe", "single experiment table");
  std::string probe_name = "boundedness";
  double p_t = 0.5;
  int p_k = 5;
  int p_count = 10;
  add_common(cmd_probe, copt);
  cmd_probe->add_option("--name", probe_name, "boundedness|marschall|fefferman-stein|nikolskii");
  cmd_probe->add_option("--symbol", sym_spec, "symbol spec (boundedness/marschall)");
  cmd_probe->add_option("--t", p_t, "maximal-function exponent");
  cmd_probe->add_option("--k", p_k, "band exponent (marschall)");
  cmd_probe->add_option("--count", p_count, "number of inputs / draws");
  cmd_probe->add_option("--kind", kind, "space kind for boundedness");
  cmd_probe->add_option("--s", s_s, "smoothness for boundedness");
  cmd_probe->add_option("--p", p_s, "p for boundedness");
  cmd_probe->add_option("--q", q_s, "q for boundedness");
  cmd_probe->add_option("--d", d_ord, "operator order for boundedness");

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json extra;
    load_config_file(copt, extra);
    if (copt.threads > 0) pd::set_max_threads(copt.threads);
    std::filesystem::create_directories(copt.out);

    pd::TorusGrid grid = pd::make_grid(copt.dim, copt.n);
    pd::DyadicPartition part = pd::build_partition(grid, copt.j);

    if (cmd_dec->parsed()) {
      pd::GridFunction f = make_input(in_spec, grid, part, copt.seed);
      pd::DyadicBlocks blocks = pd::decompose(f, part);
      pd::Report rep;
      rep.meta["command"] = "decompose";
      rep.meta["config"] = echo_config(copt, {{"input", in_spec}});
      pd::GridFunction sum(grid);
      int nonzero = 0;
      for (int j = 0; j <= part.j_max; ++j) {
        const pd::GridFunction& b = blocks.blocks[static_cast<std::size_t>(j)];
        sum = sum + b;
        double nb = pd::lp_norm(b, 2.0);
        if (nb > 1e-14 * pd::lp_norm(f, 2.0)) {
          ++nonzero;
          pd::save_grid_function(copt.out + "/block_" + std::to_string(j) + ".json", b);
        }
        rep.results["block_l2"][std::to_string(j)] = nb;
      }
      double rec = pd::l2_distance(sum, f) / pd::lp_norm(f, 2.0);
      rep.results["reconstruction_rel_err"] = rec;
      rep.results["nonzero_blocks"] = nonzero;
      rep.record("reconstruction", rec <= 1e-10);
      if (export_partition) {
        std::ostringstream csv;
        csv << "bin,xi0,xi1,radius";
        for (int j = 0; j <= part.j_max; ++j) csv << ",phi_" << j;
        csv << "\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
          pd::IVec xi = grid.freq_at(i);
          csv << i << "," << xi[0] << "," << xi[1] << "," << pd::format_double(grid.freq_radius(i));
          for (int j = 0; j <= part.j_max; ++j) csv << "," << pd::format_double(part.phi_j(j)[i]);
          csv << "\n";
        }
        rep.tables.push_back({"partition", csv.str()});
      }
      pd::write_report(copt.out, "report", rep);
      std::cout << "blocks: " << nonzero << " nonzero of " << part.j_max + 1
                << ", reconstruction error " << pd::format_double(rec) << "\n";
      return rep.pass ? 0 : 1;
    }

    if (cmd_app->parsed()) {
      pd::Symbol sym = make_symbol(sym_spec, grid, part, copt.seed);
      pd::GridFunction u = make_input(in_spec, grid, part, copt.seed);
      pd::ParaResult res = pd::apply(sym, u, part);
      pd::Report rep;
      rep.meta["command"] = "apply";
      rep.meta["config"] = echo_config(copt, {{"symbol", sym_spec}, {"input", in_spec}});
      nlohmann::json combined;
      combined["term1"] = pd::values_to_json(grid.dim, grid.n, res.term1.v);
      combined["term2"] = pd::values_to_json(grid.dim, grid.n, res.term2.v);
      combined["term3"] = pd::values_to_json(grid.dim, grid.n, res.term3.v);
      combined["total"] = pd::values_to_json(grid.dim, grid.n, res.total.v);
      pd::write_text_file(copt.out + "/apply.json", combined.dump());
      pd::save_grid_function(copt.out + "/total.json", res.total);
      rep.results["l2"] = {{"term1", pd::lp_norm(res.term1, 2.0)},
                           {"term2", pd::lp_norm(res.term2, 2.0)},
                           {"term3", pd::lp_norm(res.term3, 2.0)},
                           {"total", pd::lp_norm(res.total, 2.0)}};
      if (in_spec.rfind("theta", 0) == 0) {
        pd::GridFunction phi(grid, pd::cplx(std::pow(pd::kTwoPi, -grid.dim)));
        pd::GridFunction theta = pd::theta_base(grid, 0);
        double coeff = pd::pairing(res.total, phi).real() / pd::pairing(theta, phi).real();
        rep.results["theta_coefficient"] = coeff;
        std::cout << "theta coefficient: " << pd::format_double(coeff) << "\n";
      }
      if (with_oracle) {
        pd::GridFunction ref = pd::direct_apply(sym, u);
        double gap = pd::l2_distance(res.total, ref) / (1.0 + pd::lp_norm(ref, 2.0));
        rep.results["oracle_rel_err"] = gap;
        rep.record("oracle", gap <= 1e-8);
        std::cout << "paradifferential vs direct quadrature: " << pd::format_double(gap) << "\n";
      }
      pd::write_report(copt.out, "report", rep);
      return rep.pass ? 0 : 1;
    }

    if (cmd_norm->parsed()) {
      pd::NormSpec spec{pd::kind_from_name(kind), s_s, parse_extended(p_s), parse_extended(q_s)};
      pd::Report rep;
      rep.meta["command"] = "norm";
      rep.meta["config"] = echo_config(copt, {{"input", in_spec}, {"kind", kind}});
      std::ostringstream csv;
      csv << "family_parameter,kind,s,p,q,value\n";
      if (!family_n.empty()) {
        pd::ThetaFamily fam = pd::build_theta_family(s_s, family_n, 0, grid, part);
        for (std::size_t i = 0; i < fam.members.size(); ++i) {
          double v = pd::space_norm(fam.members[i], spec, part);
          rep.results["norm"][std::to_string(fam.n_values[i])] = v;
          csv << fam.n_values[i] << "," << kind << "," << pd::format_double(s_s) << "," << p_s
              << "," << q_s << "," << pd::format_double(v) << "\n";
          std::cout << "N=" << fam.n_values[i] << "  " << pd::format_double(v) << "\n";
        }
      } else {
        pd::GridFunction f = make_input(in_spec, grid, part, copt.seed);
        double v = pd::space_norm(f, spec, part);
        rep.results["norm"] = v;
        csv << in_spec << "," << kind << "," << pd::format_double(s_s) << "," << p_s << "," << q_s
            << "," << pd::format_double(v) << "\n";
        std::cout << kind << "(s=" << s_s << ",p=" << p_s << ",q=" << q_s
                  << ") norm = " << pd::format_double(v) << "\n";
      }
      rep.tables.push_back({"norms", csv.str()});
      pd::write_report(copt.out, "report", rep);
      return 0;
    }

    if (cmd_ver->parsed()) {
      pd::VerifyConfig vc;
      vc.dim = copt.dim;
      vc.n = copt.n;
      vc.j_max = copt.j;
      vc.explicit_size = cmd_ver->count("--N") > 0 || cmd_ver->count("--J") > 0 ||
                         extra.contains("N") || extra.contains("J");
      vc.seed = copt.seed;
      vc.symbol = ver_symbol;
      vc.twisted_C = twisted_c;
      vc.echo = echo_config(copt, {{"suite", suite}, {"twisted_C", twisted_c}});
      for (auto& [k, v] : extra.items()) vc.echo[k] = v;
      pd::Report rep = pd::run_suite(suite, vc);
      pd::write_report(copt.out, "report", rep);
      if (rep.results.contains("claims"))
        for (const auto& c : rep.results["claims"])
          std::cout << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>()
                    << "\n";
      if (!rep.pass) {
        std::cout << "FAILED: " << rep.first_failure << "\n";
        return 1;
      }
      std::cout << "suite '" << suite << "' passed\n";
      return 0;
    }

    if (cmd_cex->parsed()) {
      std::vector<double> qs, ts;
      for (const std::string& q : q_list) qs.push_back(parse_extended(q));
      for (const std::string& t : t_list) ts.push_back(parse_extended(t));
      pd::Report rep = pd::counterexample_run(d_ord, n_list, qs, ts, grid, part);
      rep.meta["config"] = echo_config(copt, {{"d", d_ord}});
      pd::write_report(copt.out, "report", rep);
      std::cout << "growth table (N, pairing/norm ratio at q=2):\n";
      for (const auto& entry : rep.results["members"]) {
        for (const auto& row : entry["norms"])
          if (row["q"].get<double>() == 2.0 && row["kind"] == "F") {
            std::cout << "  " << entry["N"].get<int>() << "  "
                      << pd::format_double(row["growth_ratio"].get<double>()) << "\n";
            break;
          }
      }
      return rep.pass ? 0 : 1;
    }

    if (cmd_probe->parsed()) {
      pd::Report rep;
      rep.meta["command"] = "probe";
      rep.meta["config"] = echo_config(copt, {{"name", probe_name}});
      if (probe_name == "boundedness") {
        pd::Symbol sym = make_symbol(sym_spec, grid, part, copt.seed);
        pd::NormSpec spec{pd::kind_from_name(kind), s_s, parse_extended(p_s), parse_extended(q_s)};
        std::vector<pd::GridFunction> inputs;
        for (int i = 0; i < p_count; ++i)
          inputs.push_back(pd::random_shaped(grid, part, pd::NormSpec{spec.kind, s_s + d_ord, spec.p, spec.q},
                                             copt.seed + static_cast<std::uint64_t>(i)));
        pd::BoundednessReport br = pd::boundedness_probe(sym, spec, d_ord, inputs, part);
        rep.results["ratios"] = br.ratios;
        rep.results["sup_ratio"] = br.sup_ratio;
        rep.results["diagnosis"] = br.diagnosis;
        std::ostringstream csv;
        csv << "index,ratio\n";
        for (std::size_t i = 0; i < br.ratios.size(); ++i)
          csv << i << "," << pd::format_double(br.ratios[i]) << "\n";
        rep.tables.push_back({"ratios", csv.str()});
        std::cout << br.source << " -> " << br.target << ": sup ratio "
                  << pd::format_double(br.sup_ratio) << " (" << br.diagnosis << ")\n";
      } else if (probe_name == "marschall") {
        pd::Symbol sym = make_symbol(sym_spec, grid, part, copt.seed);
        std::ostringstream csv;
        csv << "k,t,sup_ratio\n";
        pd::MarschallResult last;
        for (int i = 0; i < p_count; ++i) {
          pd::GridFunction v =
              pd::random_band_limited(grid, 0.6 * std::exp2(p_k), copt.seed + static_cast<std::uint64_t>(i));
          last = pd::marschall_probe(sym, v, p_k, p_t, part);
          csv << p_k << "," << pd::format_double(p_t) << "," << pd::format_double(last.sup_ratio)
              << "\n";
        }
        rep.tables.push_back({"ratios", csv.str()});
        rep.results["sup_ratio"] = last.sup_ratio;
        rep.results["finite"] = last.finite;
        std::cout << "marschall sup ratio: " << pd::format_double(last.sup_ratio) << "\n";
      } else if (probe_name == "fefferman-stein") {
        pd::EmpiricalConstant c = pd::fefferman_stein_constant(
            grid, part, parse_extended(p_s), parse_extended(q_s), p_t, p_count, 4, copt.seed);
        rep.results["c_emp"] = c.c_emp;
        std::cout << "fefferman-stein empirical constant: " << pd::format_double(c.c_emp) << "\n";
      } else if (probe_name == "nikolskii") {
        pd::EmpiricalConstant c =
            pd::nikolskii_constant(grid, p_t, {16.0, 32.0, 64.0}, p_count, copt.seed);
        rep.results["c_emp"] = c.c_emp;
        std::cout << "nikolskii empirical constant: " << pd::format_double(c.c_emp) << "\n";
      } else {
        throw std::invalid_argument("unknown probe: " + probe_name);
      }
      pd::write_report(copt.out, "report", rep);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
