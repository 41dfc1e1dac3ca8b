#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "paradiff/io.hpp"
#include "paradiff/probes.hpp"

using namespace paradiff;

TEST_CASE("json document round trip") {
  TorusGrid g = make_grid(1, 64);
  GridFunction f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f.v[i] = cplx(0.25 * i, -1.0 / (i + 1.0));
  nlohmann::json doc = values_to_json(g.dim, g.n, f.v);
  CHECK(doc["dim"] == 1);
  CHECK(doc["n_points"] == 64);
  CHECK(doc["values"].size() == 128);
  GridFunction back = grid_function_from_json(doc);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(back.v[i] == f.v[i]);

  doc["values"].erase(0);
  CHECK_THROWS(grid_function_from_json(doc));
}

TEST_CASE("binary round trip is bit exact") {
  TorusGrid g = make_grid(2, 64);
  GridFunction f(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    f.v[i] = cplx(std::sin(0.01 * i) * 1e-7, std::cos(0.03 * i) * 1e9);
  std::string path = std::filesystem::temp_directory_path() / "pd_io_test.pdgf";
  write_pdgf(path, g.dim, g.n, f.v);
  GridFunction back = read_pdgf(path);
  CHECK(back.grid.dim == 2);
  CHECK(back.grid.n == 64);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(back.v[i].real() == f.v[i].real());
    CHECK(back.v[i].imag() == f.v[i].imag());
  }
  std::remove(path.c_str());
}

TEST_CASE("binary loader rejects corrupt headers") {
  std::string path = std::filesystem::temp_directory_path() / "pd_io_bad.pdgf";
  write_text_file(path, "NOPExxxxxxxxxxxxxxxx");
  CHECK_THROWS(read_pdgf(path));

  // right magic, truncated payload
  TorusGrid g = make_grid(1, 64);
  std::vector<cplx> v(g.size(), cplx(1.0));
  write_pdgf(path, 1, 64, v);
  std::ifstream is(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  is.close();
  write_text_file(path, bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS(read_pdgf(path));
  std::remove(path.c_str());
}

TEST_CASE("save/load dispatch by extension") {
  TorusGrid g = make_grid(1, 64);
  GridFunction f = random_band_limited(g, 8.0, 2);
  for (const char* name : {"pd_io_test2.json", "pd_io_test2.pdgf"}) {
    std::string path = std::filesystem::temp_directory_path() / name;
    save_grid_function(path, f);
    GridFunction back = load_grid_function(path);
    CHECK(l2_distance(back, f) == 0.0);
    std::remove(path.c_str());
  }
}

TEST_CASE("report writer emits json and csv") {
  Report rep;
  rep.meta["config"] = {{"seed", 1}};
  rep.results["value"] = 0.1 + 0.2;
  rep.tables.push_back({"tbl", "a,b\n1,2\n"});
  rep.record("claim-a", true);
  rep.record("claim-b", false);
  CHECK(!rep.pass);
  CHECK(rep.first_failure == "claim-b");
  std::string dir = std::filesystem::temp_directory_path() / "pd_report_test";
  write_report(dir, "report", rep);
  CHECK(std::filesystem::exists(dir + "/report.json"));
  CHECK(std::filesystem::exists(dir + "/report_tbl.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("format_double survives a round trip") {
  for (double v : {0.1, 1e-300, 13.0 / 12.0, 6.283185307179586}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
