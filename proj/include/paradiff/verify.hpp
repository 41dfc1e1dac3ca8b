#pragma once

#include "paradiff/probes.hpp"
#include "paradiff/spectral.hpp"

namespace paradiff {

struct VerifyConfig {
  int dim = 1;
  int n = 1024;
  int j_max = 8;
  bool explicit_size = false;  // when false, each suite picks its own n / j_max
  std::uint64_t seed = 1;
  std::string symbol;        // optional: restrict suites to one symbol spec
  double twisted_C = 2.0;
  double threshold = 1e-10;
  nlohmann::json echo = nlohmann::json::object();  // config as given, echoed in reports
};

std::vector<std::string> suite_names();  // partition support-rule inclusions marschall fefferman-stein nikolskii

// Runs one named suite ("all" = every suite in order). Every claim lands in
// report.results["claims"]; report.pass reflects the conjunction.
Report run_suite(const std::string& name, const VerifyConfig& cfg);

// Shipped (symbol, input) families used by the support-rule and inclusion
// suites and by the acceptance gate.
struct SymbolInputPair {
  std::string label;
  Symbol symbol;
  GridFunction input;
};
std::vector<SymbolInputPair> shipped_pairs(const TorusGrid& grid, const DyadicPartition& part,
                                           std::uint64_t seed);

}  // namespace paradiff
