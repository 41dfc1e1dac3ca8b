#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "paradiff/grid.hpp"

namespace paradiff {

// JSON document {dim, n_points, values:[re,im,...]} shared by grid and
// spectral data; which one it is follows from context.
nlohmann::json values_to_json(int dim, int n, const std::vector<cplx>& values);
GridFunction grid_function_from_json(const nlohmann::json& doc);
SpectralFunction spectral_from_json(const nlohmann::json& doc);

// Binary variant: 16-byte header (magic "PDGF", u32 version, u32 dim, u32 n)
// followed by little-endian float64 re/im pairs.
void write_pdgf(const std::string& path, int dim, int n, const std::vector<cplx>& values);
GridFunction read_pdgf(const std::string& path);

void save_grid_function(const std::string& path, const GridFunction& f);  // by extension
GridFunction load_grid_function(const std::string& path);

std::string format_double(double v);  // %.17g

void write_text_file(const std::string& path, const std::string& content);

// Structured experiment output: `results` is the deterministic numeric
// payload (byte-compared across reruns); `meta` holds config echo and other
// non-compared fields; `tables` are CSV attachments.
struct Report {
  nlohmann::json meta = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> tables;
  bool pass = true;
  std::string first_failure;

  void record(const std::string& claim, bool ok) {
    if (!ok && pass) {
      pass = false;
      first_failure = claim;
    }
  }
  std::string results_string() const { return results.dump(); }
};

// Writes <name>.json plus one CSV per table into out_dir (created if needed).
void write_report(const std::string& out_dir, const std::string& name, const Report& report);

}  // namespace paradiff
