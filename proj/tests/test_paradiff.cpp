#include "doctest.h"
#include "paradiff/fraction.hpp"
#include "paradiff/paradiff.hpp"
#include "paradiff/probes.hpp"

using namespace paradiff;

TEST_CASE("pieces of the unit symbol") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol one = identity_symbol(1);
  GridFunction u = random_resolved(g, part, 4);
  for (int k : {0, 3, 6}) {
    GridFunction p0 = piece_apply(one, 0, k, u, part);
    CHECK(l2_distance(p0, block(u, k, part)) < 1e-12 * lp_norm(u, 2.0));
    for (int j : {1, 2, 5}) CHECK(lp_norm(piece_apply(one, j, k, u, part), 2.0) < 1e-13);
  }
  CHECK_THROWS(piece_apply(one, 0, part.j_max + 1, u, part));
  CHECK_THROWS(piece_apply(one, part.j_max + 1, 0, u, part));
}

TEST_CASE("ching pieces in closed form") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  double d = 1.0;
  Symbol a = ching_symbol(d, part);
  GridFunction u = random_resolved(g, part, 8);
  SpectralFunction U = dft(u);
  for (int j : {3, 5}) {
    for (int k : {3, 4, 5, 7}) {
      GridFunction got = piece_apply(a, j, k, u, part);
      // only the x-frequency -2^j is active; eta weight 2^{jd} Phi_j Phi~_k Phi_k
      std::vector<double> w(g.size());
      std::vector<double> tld = part.phi_tilde(k);
      for (std::size_t i = 0; i < g.size(); ++i)
        w[i] = std::exp2(d * j) * part.phi_j(j)[i] * tld[i] * part.phi_j(k)[i];
      GridFunction cut = idft(apply_multiplier(U, w));
      GridFunction expect(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        double ph = -g.point_at(i)[0] * std::exp2(j);
        expect.v[i] = cplx(std::cos(ph), std::sin(ph)) * cut.v[i];
      }
      CHECK(l2_distance(got, expect) <= 1e-12 * (1.0 + lp_norm(expect, 2.0)));
    }
  }
}

TEST_CASE("piece spectra obey the support rule bound") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol a = ching_symbol(0.0, part);
  GridFunction u = random_resolved(g, part, 5);
  int j = 5, k = 5;
  SpectralFunction sp = dft(piece_apply(a, j, k, u, part));
  // x-frequency -2^j plus eta in supp(Phi~_k Phi_k): [-2^j + 0.55 2^k, -2^j + 1.3 2^k]
  std::vector<std::uint32_t> sup = numerical_support(sp, 1e-10);
  for (std::uint32_t b : sup) {
    double f = sp.grid.freq_at(b)[0];
    double lo = -std::exp2(j) - 1.3 * std::exp2(k), hi = -std::exp2(j) + 1.3 * std::exp2(k);
    CHECK(f >= lo - 1.0);
    CHECK(f <= hi + 1.0);
  }
}

TEST_CASE("series of the unit symbol") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol one = identity_symbol(1);
  GridFunction u = random_resolved(g, part, 12);
  GridFunction s1 = series1(one, u, part);
  GridFunction expect(g);
  for (int k = 2; k <= part.j_max; ++k) expect = expect + block(u, k, part);
  CHECK(l2_distance(s1, expect) < 1e-11 * lp_norm(u, 2.0));
  CHECK(lp_norm(series3(one, u, part), 2.0) < 1e-13);
  // the three series reconstruct the identity
  GridFunction s2 = series2(one, u, part);
  GridFunction s3 = series3(one, u, part);
  GridFunction total = s1 + s2 + s3;
  CHECK(l2_distance(total, u) / lp_norm(u, 2.0) < 1e-10);
}

TEST_CASE("ching low-high series vanishes by support disjointness") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol a = ching_symbol(0.0, part);
  GridFunction u = random_resolved(g, part, 2);
  CHECK(lp_norm(series1(a, u, part), 2.0) < 1e-13);
}

TEST_CASE("ching diagonal series carries the whole theta output") {
  TorusGrid g = make_grid(1, 1024);
  DyadicPartition part = build_partition(g, 8);
  ThetaFamily fam = build_theta_family(0.0, {2}, 0, g, part);
  Symbol a = ching_symbol(0.0, part);
  const GridFunction& thN = fam.members[0];
  GridFunction s2 = series2(a, thN, part);
  double harmonic = Frac::inverse_power_sum(2, 4, 1).to_double();
  GridFunction closed = cplx(harmonic) * fam.theta;
  CHECK(l2_distance(s2, closed) / lp_norm(closed, 2.0) < 1e-12);
  CHECK(lp_norm(series1(a, thN, part), 2.0) < 1e-13);
  CHECK(lp_norm(series3(a, thN, part), 2.0) < 1e-13);
}

TEST_CASE("ching high-low series closed form") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  double d = -1.0;
  Symbol a = ching_symbol(d, part);
  GridFunction u = random_resolved(g, part, 31);
  SpectralFunction U = dft(u);
  GridFunction got = series3(a, u, part);
  GridFunction expect(g);
  for (int j = 2; j <= part.j_max; ++j) {
    // x-mode weight Phi_j(-2^j e) = 1; eta weight 2^{jd} Phi_j(eta) Psi_{j-2}(eta)
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      w[i] = std::exp2(d * j) * part.phi_j(j)[i] * part.psi_j(j - 2)[i];
    GridFunction low = idft(apply_multiplier(U, w));
    for (std::size_t i = 0; i < g.size(); ++i) {
      double ph = -g.point_at(i)[0] * std::exp2(j);
      expect.v[i] += cplx(std::cos(ph), std::sin(ph)) * low.v[i];
    }
  }
  CHECK(l2_distance(got, expect) / (1.0 + lp_norm(expect, 2.0)) < 1e-12);
}

TEST_CASE("apply: unit symbol returns the input") {
  for (int dim : {1, 2}) {
    TorusGrid g = make_grid(dim, dim == 1 ? 1024 : 128);
    DyadicPartition part = build_partition(g, dim == 1 ? 8 : 5);
    Symbol one = identity_symbol(dim);
    GridFunction u = random_resolved(g, part, 17);
    ParaResult res = apply(one, u, part);
    CHECK(l2_distance(res.total, u) / lp_norm(u, 2.0) < 1e-10);
    // the result decomposes as announced
    GridFunction recomposed = res.term1 + res.term2 + res.term3;
    CHECK(l2_distance(recomposed, res.total) < 1e-13 * lp_norm(u, 2.0));
  }
}

TEST_CASE("apply matches the direct quadrature oracle") {
  TorusGrid g = make_grid(1, 1024);
  DyadicPartition part = build_partition(g, 8);
  GridFunction u = random_resolved(g, part, 23);

  std::vector<Symbol> symbols;
  symbols.push_back(identity_symbol(1));
  symbols.push_back(bessel_multiplier_symbol(1, -1.0));
  symbols.push_back(gaussian_multiplier_symbol(1, 64.0));
  std::vector<GridFunction> mults;
  for (int j = 0; j < 5; ++j) mults.push_back(random_band_limited(g, std::exp2(j), 100 + j));
  symbols.push_back(reduced_symbol(mults, part));
  for (double d : {0.0, 1.0, -1.0}) symbols.push_back(ching_symbol(d, part));
  symbols.push_back(twisted_cutoff_symbol(part, 2.0, 55));

  for (const Symbol& a : symbols) {
    ParaResult res = apply(a, u, part);
    GridFunction ref = direct_apply(a, u);
    double err = l2_distance(res.total, ref) / (1.0 + lp_norm(ref, 2.0));
    INFO(a.name);
    CHECK(err <= 1e-8);
  }
}

TEST_CASE("direct_apply of a multiplier is the spectral product") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  GridFunction u = random_resolved(g, part, 19);
  Symbol a = bessel_multiplier_symbol(1, -1.0);
  GridFunction got = direct_apply(a, u);
  SpectralFunction U = dft(u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r = g.freq_radius(i);
    U.c[i] *= std::pow(1.0 + r * r, -0.5);
  }
  GridFunction expect = idft(U);
  CHECK(l2_distance(got, expect) / lp_norm(expect, 2.0) < 1e-12);
}

TEST_CASE("apply is linear") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol a = ching_symbol(0.0, part);
  GridFunction u = random_resolved(g, part, 41);
  GridFunction v = random_resolved(g, part, 42);
  cplx al(2.0, -1.0), be(0.5, 3.0);
  GridFunction w = al * u + be * v;
  GridFunction lhs = apply(a, w, part).total;
  GridFunction rhs = al * apply(a, u, part).total + be * apply(a, v, part).total;
  CHECK(l2_distance(lhs, rhs) <= 1e-12 * (1.0 + lp_norm(rhs, 2.0)));
}

TEST_CASE("the eta window is redundant on matching blocks") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol a = ching_symbol(0.0, part);
  GridFunction u = random_resolved(g, part, 51);
  for (int j : {4, 5}) {
    for (int k : {4, 5, 6}) {
      GridFunction with = piece_apply(a, j, k, u, part);
      GridFunction without = piece_apply_no_tilde(a, j, k, u, part);
      CHECK(l2_distance(with, without) <= 1e-12 * (1.0 + lp_norm(with, 2.0)));
    }
  }
}

TEST_CASE("two-dimensional harmonic-sum identity") {
  TorusGrid g = make_grid(2, 128);
  DyadicPartition part = build_partition(g, 4);
  ThetaFamily fam = build_theta_family(0.0, {2}, 0, g, part);
  Symbol a = ching_symbol(0.0, part);
  ParaResult res = apply(a, fam.members[0], part);
  double harmonic = Frac::inverse_power_sum(2, 4, 1).to_double();
  GridFunction closed = cplx(harmonic) * fam.theta;
  CHECK(l2_distance(res.total, closed) / lp_norm(closed, 2.0) < 1e-10);
  GridFunction ref = direct_apply(a, fam.members[0]);
  CHECK(l2_distance(res.total, ref) / (1.0 + lp_norm(ref, 2.0)) < 1e-10);
}

TEST_CASE("apply refuses unresolved input and missing structure") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 4);
  SpectralFunction F(g);
  F.at_freq({100, 0}) = 1.0;
  GridFunction bad = idft(F);
  Symbol one = identity_symbol(1);
  CHECK_THROWS(apply(one, bad, part));
  Symbol bare;
  bare.dim = 1;
  bare.eval = [](const RVec&, const RVec&) { return cplx(1.0); };
  GridFunction ok = random_resolved(g, part, 1);
  CHECK_THROWS(apply(bare, ok, part));
}
