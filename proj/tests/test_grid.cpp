#include <complex>

#include "doctest.h"
#include "paradiff/grid.hpp"
#include "paradiff/probes.hpp"

using namespace paradiff;

namespace {
GridFunction mode(const TorusGrid& g, int xi) {
  GridFunction f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    RVec x = g.point_at(i);
    f.v[i] = cplx(std::cos(xi * x[0]), std::sin(xi * x[0]));
  }
  return f;
}
}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS(make_grid(3, 64));
  CHECK_THROWS(make_grid(1, 100));
  CHECK_THROWS(make_grid(1, 32));
  TorusGrid g = make_grid(2, 64);
  CHECK(g.size() == 64u * 64u);
  CHECK(g.freq_of_bin(0) == 0);
  CHECK(g.freq_of_bin(63) == -1);
  CHECK(g.freq_in_range({-32, 31}));
  CHECK(!g.freq_in_range({32, 0}));
}

TEST_CASE("dft of a constant is 2pi at the origin") {
  TorusGrid g = make_grid(1, 128);
  SpectralFunction F = dft(GridFunction(g, cplx(1.0)));
  CHECK(std::abs(F.at_freq({0, 0}) - cplx(kTwoPi)) < 1e-12);
  double off = 0.0;
  for (std::size_t i = 1; i < F.c.size(); ++i) off = std::max(off, std::abs(F.c[i]));
  CHECK(off < 1e-12);
}

TEST_CASE("dft of a pure mode lands on its frequency") {
  TorusGrid g = make_grid(1, 128);
  SpectralFunction F = dft(mode(g, 3));
  CHECK(std::abs(F.at_freq({3, 0}) - cplx(kTwoPi)) < 1e-11);
  F.at_freq({3, 0}) = 0.0;
  CHECK(max_abs(F.c) < 1e-11);
}

TEST_CASE("idft inverts dft to 1e-12") {
  for (int dim : {1, 2}) {
    TorusGrid g = make_grid(dim, dim == 1 ? 1024 : 64);
    GridFunction f = random_band_limited(g, g.n / 2.0, 7);
    GridFunction back = idft(dft(f));
    CHECK(l2_distance(back, f) / lp_norm(f, 2.0) < 1e-12);
    SpectralFunction F = dft(f);
    SpectralFunction FF = dft(idft(F));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < F.c.size(); ++i) {
      num += std::norm(FF.c[i] - F.c[i]);
      den += std::norm(F.c[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
  }
}

TEST_CASE("idft of a spectral delta is constant") {
  TorusGrid g = make_grid(1, 64);
  SpectralFunction F(g);
  F.at_freq({0, 0}) = kTwoPi;
  GridFunction f = idft(F);
  for (const cplx& z : f.v) CHECK(std::abs(z - cplx(1.0)) < 1e-13);
}

TEST_CASE("lp_norm closed forms and Parseval") {
  TorusGrid g = make_grid(1, 256);
  CHECK(lp_norm(GridFunction(g, cplx(1.0)), 2.0) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-13));
  CHECK(lp_norm(mode(g, 3), std::numeric_limits<double>::infinity()) == doctest::Approx(1.0).epsilon(1e-13));

  GridFunction f = random_band_limited(g, 100.0, 11);
  double l2 = lp_norm(f, 2.0);
  SpectralFunction F = dft(f);
  double parseval = 0.0;
  for (const cplx& z : F.c) parseval += std::norm(z);
  parseval = std::sqrt(parseval / kTwoPi);
  CHECK(std::abs(l2 - parseval) / parseval < 1e-10);

  // exact homogeneity
  GridFunction f3 = cplx(3.5) * f;
  for (double p : {0.5, 1.0, 2.0, 4.0})
    CHECK(std::abs(lp_norm(f3, p) - 3.5 * lp_norm(f, p)) <= 1e-14 * 3.5 * lp_norm(f, p) * 10);
  CHECK_THROWS(lp_norm(f, 0.0));
  CHECK_THROWS(lp_norm(f, -1.0));
}

TEST_CASE("numerical_support finds spikes and nothing else") {
  TorusGrid g = make_grid(1, 128);
  std::vector<std::uint32_t> s = numerical_support(dft(mode(g, 3)), 1e-10);
  REQUIRE(s.size() == 1);
  CHECK(g.freq_at(s[0])[0] == 3);

  SpectralFunction zero(g);
  CHECK(numerical_support(zero, 1e-10).empty());
  CHECK_THROWS(numerical_support(zero, 0.0));
  CHECK_THROWS(numerical_support(zero, 1.0));
}

TEST_CASE("theta_N spectrum occupies exactly the dyadic spikes") {
  TorusGrid g = make_grid(1, 1024);
  DyadicPartition part = build_partition(g, 7);
  ThetaFamily fam = build_theta_family(0.0, {2}, 0, g, part);
  std::vector<std::uint32_t> s = numerical_support(dft(fam.members[0]), 1e-10);
  REQUIRE(s.size() == 3);
  CHECK(g.freq_at(s[0])[0] == 4);
  CHECK(g.freq_at(s[1])[0] == 8);
  CHECK(g.freq_at(s[2])[0] == 16);
}

TEST_CASE("value count mismatches are rejected") {
  TorusGrid g = make_grid(1, 64);
  std::vector<cplx> bad(63);
  CHECK_THROWS(GridFunction(g, bad));
  CHECK_THROWS(SpectralFunction(g, bad));
  std::vector<cplx> nan(64);
  nan[5] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS(GridFunction(g, nan));
}
