#include "paradiff/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace paradiff {

nlohmann::json values_to_json(int dim, int n, const std::vector<cplx>& values) {
  nlohmann::json doc;
  doc["dim"] = dim;
  doc["n_points"] = n;
  nlohmann::json arr = nlohmann::json::array();
  for (const cplx& z : values) {
    arr.push_back(z.real());
    arr.push_back(z.imag());
  }
  doc["values"] = std::move(arr);
  return doc;
}

namespace {

std::pair<TorusGrid, std::vector<cplx>> values_from_json(const nlohmann::json& doc) {
  int dim = doc.at("dim").get<int>();
  int n = doc.at("n_points").get<int>();
  TorusGrid grid = make_grid(dim, n);
  const nlohmann::json& arr = doc.at("values");
  if (arr.size() != 2 * grid.size())
    throw std::invalid_argument("values: expected " + std::to_string(2 * grid.size()) + " numbers");
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = cplx(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
  return {grid, std::move(v)};
}

}  // namespace

GridFunction grid_function_from_json(const nlohmann::json& doc) {
  auto [grid, v] = values_from_json(doc);
  return GridFunction(grid, std::move(v));
}

SpectralFunction spectral_from_json(const nlohmann::json& doc) {
  auto [grid, v] = values_from_json(doc);
  return SpectralFunction(grid, std::move(v));
}

namespace {

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  buf.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f64(std::vector<unsigned char>& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_pdgf(const std::string& path, int dim, int n, const std::vector<cplx>& values) {
  std::vector<unsigned char> buf;
  buf.reserve(16 + 16 * values.size());
  buf.push_back('P');
  buf.push_back('D');
  buf.push_back('G');
  buf.push_back('F');
  put_u32(buf, 1u);
  put_u32(buf, static_cast<std::uint32_t>(dim));
  put_u32(buf, static_cast<std::uint32_t>(n));
  for (const cplx& z : values) {
    put_f64(buf, z.real());
    put_f64(buf, z.imag());
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

GridFunction read_pdgf(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (buf.size() < 16 || std::memcmp(buf.data(), "PDGF", 4) != 0)
    throw std::runtime_error(path + ": not a PDGF file");
  std::uint32_t version = get_u32(buf.data() + 4);
  if (version != 1) throw std::runtime_error(path + ": unsupported PDGF version");
  int dim = static_cast<int>(get_u32(buf.data() + 8));
  int n = static_cast<int>(get_u32(buf.data() + 12));
  TorusGrid grid = make_grid(dim, n);
  if (buf.size() != 16 + 16 * grid.size()) throw std::runtime_error(path + ": truncated PDGF payload");
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = cplx(get_f64(buf.data() + 16 + 16 * i), get_f64(buf.data() + 16 + 16 * i + 8));
  return GridFunction(grid, std::move(v));
}

void save_grid_function(const std::string& path, const GridFunction& f) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".pdgf") {
    write_pdgf(path, f.grid.dim, f.grid.n, f.v);
    return;
  }
  write_text_file(path, values_to_json(f.grid.dim, f.grid.n, f.v).dump());
}

GridFunction load_grid_function(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".pdgf") return read_pdgf(path);
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(is);
  return grid_function_from_json(doc);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << content;
}

void write_report(const std::string& out_dir, const std::string& name, const Report& report) {
  std::filesystem::create_directories(out_dir);
  nlohmann::json doc;
  doc["meta"] = report.meta;
  doc["results"] = report.results;
  doc["pass"] = report.pass;
  doc["first_failure"] = report.first_failure;
  write_text_file(out_dir + "/" + name + ".json", doc.dump(2) + "\n");
  for (const auto& [tname, csv] : report.tables)
    write_text_file(out_dir + "/" + name + "_" + tname + ".csv", csv);
}

}  // namespace paradiff
