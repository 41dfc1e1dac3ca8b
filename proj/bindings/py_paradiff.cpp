// Python bindings for the main operations: transforms, partitions, norms,
// symbols, the three-series application and the support-rule checker.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paradiff/paradiff.hpp"
#include "paradiff/probes.hpp"
#include "paradiff/reduce.hpp"
#include "paradiff/spectral.hpp"

namespace py = pybind11;
using namespace paradiff;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

TorusGrid grid_of(const CArray& arr) {
  if (arr.ndim() == 1) return make_grid(1, static_cast<int>(arr.shape(0)));
  if (arr.ndim() == 2) {
    if (arr.shape(0) != arr.shape(1)) throw std::invalid_argument("expected a square array");
    return make_grid(2, static_cast<int>(arr.shape(0)));
  }
  throw std::invalid_argument("expected a 1d or 2d array");
}

std::vector<cplx> values_of(const CArray& arr) {
  const std::complex<double>* p = arr.data();
  return std::vector<cplx>(p, p + arr.size());
}

GridFunction grid_function_of(const CArray& arr) {
  return GridFunction(grid_of(arr), values_of(arr));
}

CArray to_array(const TorusGrid& grid, const std::vector<cplx>& v) {
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(grid.dim), grid.n);
  CArray out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

struct PyPartition {
  DyadicPartition part;
};

struct PySymbol {
  Symbol sym;
};

}  // namespace

PYBIND11_MODULE(_paradiff, m) {
  m.doc() = "Littlewood-Paley laboratory for type 1,1 operators on the torus";

  m.def("set_threads", [](int n) { set_max_threads(n); }, py::arg("n"),
        "cap worker threads (0 restores PARADIFF_THREADS / hardware default)");

  py::class_<PyPartition>(m, "Partition")
      .def(py::init([](int dim, int n, int j_max) {
             return PyPartition{build_partition(make_grid(dim, n), j_max)};
           }),
           py::arg("dim"), py::arg("n"), py::arg("j_max"))
      .def_property_readonly("j_max", [](const PyPartition& p) { return p.part.j_max; })
      .def_property_readonly("j_top", [](const PyPartition& p) { return p.part.j_top; })
      .def_property_readonly("dim", [](const PyPartition& p) { return p.part.grid.dim; })
      .def_property_readonly("n", [](const PyPartition& p) { return p.part.grid.n; });

  py::class_<PySymbol>(m, "Symbol")
      .def_property_readonly("name", [](const PySymbol& s) { return s.sym.name; })
      .def_property_readonly("order", [](const PySymbol& s) { return s.sym.order; });

  m.def("dft", [](const CArray& arr) {
    GridFunction f = grid_function_of(arr);
    return to_array(f.grid, dft(f).c);
  });
  m.def("idft", [](const CArray& arr) {
    TorusGrid g = grid_of(arr);
    return to_array(g, idft(SpectralFunction(g, values_of(arr))).v);
  });
  m.def("lp_norm", [](const CArray& arr, double p) { return lp_norm(grid_function_of(arr), p); },
        py::arg("f"), py::arg("p"));

  m.def("decompose", [](const CArray& arr, const PyPartition& p) {
    DyadicBlocks blocks = decompose(grid_function_of(arr), p.part);
    py::list out;
    for (const GridFunction& b : blocks.blocks) out.append(to_array(b.grid, b.v));
    return out;
  });

  m.def(
      "space_norm",
      [](const CArray& arr, const PyPartition& p, const std::string& kind, double s, double pp,
         double q) {
        NormSpec spec{kind_from_name(kind), s, pp, q};
        return space_norm(grid_function_of(arr), spec, p.part);
      },
      py::arg("f"), py::arg("partition"), py::arg("kind"), py::arg("s"), py::arg("p"),
      py::arg("q"));

  m.def("hom_besov_norm", [](const CArray& row, double s, double p, double q) {
    TorusGrid g = grid_of(row);
    return hom_besov_norm_in_xi(values_of(row), g, s, p, q);
  });

  m.def("maximal", [](const CArray& arr, double t) {
    GridFunction mf = maximal(grid_function_of(arr), t);
    return to_array(mf.grid, mf.v);
  });

  // symbol constructors
  m.def("identity_symbol", [](int dim) { return PySymbol{identity_symbol(dim)}; }, py::arg("dim"));
  m.def("ching_symbol",
        [](double d, const PyPartition& p) { return PySymbol{ching_symbol(d, p.part)}; },
        py::arg("d"), py::arg("partition"));
  m.def("bessel_symbol", [](int dim, double d) { return PySymbol{bessel_multiplier_symbol(dim, d)}; },
        py::arg("dim"), py::arg("d"));
  m.def("gaussian_symbol",
        [](int dim, double sigma) { return PySymbol{gaussian_multiplier_symbol(dim, sigma)}; },
        py::arg("dim"), py::arg("sigma"));
  m.def("reduced_symbol", [](const std::vector<CArray>& mults, const PyPartition& p) {
    std::vector<GridFunction> ms;
    for (const CArray& m_arr : mults) ms.push_back(grid_function_of(m_arr));
    return PySymbol{reduced_symbol(ms, p.part)};
  });
  m.def("cutoff_symbol",
        [](const PyPartition& p, double C, std::uint64_t seed) {
          return PySymbol{twisted_cutoff_symbol(p.part, C, seed)};
        },
        py::arg("partition"), py::arg("C"), py::arg("seed"));

  m.def(
      "theta_member",
      [](const PyPartition& p, int N, double d, int r_theta) {
        ThetaFamily fam = build_theta_family(d, {N}, r_theta, p.part.grid, p.part);
        return to_array(p.part.grid, fam.members[0].v);
      },
      py::arg("partition"), py::arg("N"), py::arg("d") = 0.0, py::arg("r_theta") = 0);
  m.def("theta_base", [](const PyPartition& p, int r_theta) {
    GridFunction th = theta_base(p.part.grid, r_theta);
    return to_array(th.grid, th.v);
  });
  m.def(
      "random_resolved",
      [](const PyPartition& p, std::uint64_t seed) {
        GridFunction u = random_resolved(p.part.grid, p.part, seed);
        return to_array(u.grid, u.v);
      },
      py::arg("partition"), py::arg("seed"));

  m.def("apply", [](const PySymbol& a, const CArray& arr, const PyPartition& p) {
    ParaResult res = apply(a.sym, grid_function_of(arr), p.part);
    py::dict out;
    out["term1"] = to_array(res.term1.grid, res.term1.v);
    out["term2"] = to_array(res.term2.grid, res.term2.v);
    out["term3"] = to_array(res.term3.grid, res.term3.v);
    out["total"] = to_array(res.total.grid, res.total.v);
    return out;
  });
  m.def("direct_apply", [](const PySymbol& a, const CArray& arr) {
    GridFunction out = direct_apply(a.sym, grid_function_of(arr));
    return to_array(out.grid, out.v);
  });

  m.def(
      "support_rule_check",
      [](const PySymbol& a, const CArray& v, double threshold) {
        SupportClaim claim = support_rule_check(a.sym, grid_function_of(v), threshold);
        py::dict out;
        out["pass"] = claim.pass;
        out["worst_violation"] = claim.worst_violation;
        out["max_coeff"] = claim.max_coeff;
        out["predicted"] = claim.predicted.size();
        out["observed"] = claim.observed.size();
        return out;
      },
      py::arg("symbol"), py::arg("v"), py::arg("threshold") = 1e-10);

  m.def("twisted_diagonal_check", [](const PySymbol& a, double C, int dim, int n, double thr) {
    TwistedReport rep = twisted_diagonal_check(a.sym, C, make_grid(dim, n), thr);
    py::dict out;
    out["ok"] = rep.ok;
    out["max_abs"] = rep.max_abs;
    out["witnesses"] = rep.witnesses.size();
    return out;
  });
}
