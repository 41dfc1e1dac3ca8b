#include "doctest.h"
#include "paradiff/probes.hpp"
#include "paradiff/paradiff.hpp"

using namespace paradiff;

TEST_CASE("ching symbol values at dyadic frequencies") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  for (double d : {0.0, 1.0, -1.0}) {
    Symbol a = ching_symbol(d, part);
    for (int j = 1; j <= part.j_max; ++j) {
      RVec x{1.234, 0.0};
      cplx got = a.eval(x, {std::exp2(j), 0.0});
      double ph = -x[0] * std::exp2(j);
      cplx expect = std::exp2(d * j) * cplx(std::cos(ph), std::sin(ph));
      CHECK(std::abs(got - expect) < 1e-12 * std::abs(expect));
    }
    CHECK(std::abs(a.eval({0.3, 0.0}, {0.0, 0.0})) == 0.0);
  }
}

TEST_CASE("ching structure agrees with eval on lattice samples") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol a = ching_symbol(0.5, part);
  const auto& terms = std::get<std::vector<XModeTerm>>(a.structure);
  REQUIRE(terms.size() == 7);
  for (std::size_t i = 0; i < g.size(); i += 17) {
    RVec x = g.point_at(i);
    for (int f = -100; f <= 100; f += 13) {
      RVec xi{static_cast<double>(f), 0.0};
      cplx via_terms(0.0);
      for (const XModeTerm& t : terms) {
        double ph = x[0] * t.nu[0];
        via_terms += cplx(std::cos(ph), std::sin(ph)) * t.g(xi);
      }
      CHECK(std::abs(via_terms - a.eval(x, xi)) <= 1e-12 * (1.0 + std::abs(via_terms)));
    }
  }
}

TEST_CASE("ching partial transform is supported on its modes") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  Symbol a = ching_symbol(0.0, part);
  // row at eta = 2^j: single spike at xi = -2^j with value (2pi)^n
  for (int j : {2, 4, 6}) {
    SpectralFunction row = partial_ft_row(a, g, {1 << j, 0});
    CHECK(std::abs(row.at_freq({-(1 << j), 0}) - cplx(kTwoPi)) < 1e-12);
    row.at_freq({-(1 << j), 0}) = 0.0;
    CHECK(max_abs(row.c) < 1e-12);
  }
}

TEST_CASE("nonlinear symbol with identity linearisation") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);
  GridFunction u = random_resolved(g, part, 3, 4);
  for (auto& z : u.v) z = z.real();
  Symbol a = nonlinear_symbol([](double) { return 1.0; }, u, part);
  const auto& terms = std::get<std::vector<SeparableTerm>>(a.structure);
  for (const SeparableTerm& t : terms) {
    GridFunction m = idft(t.m_hat);
    for (const cplx& z : m.v) CHECK(std::abs(z - cplx(1.0)) < 1e-12);
  }
}

TEST_CASE("nonlinear multipliers are bounded by sup F'") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);
  GridFunction u = random_resolved(g, part, 11, 4);
  for (auto& z : u.v) z = z.real();
  Symbol a = nonlinear_symbol([](double v) { return std::cos(v); }, u, part);
  for (const SeparableTerm& t : std::get<std::vector<SeparableTerm>>(a.structure)) {
    GridFunction m = idft(t.m_hat);
    for (const cplx& z : m.v) CHECK(std::abs(z) <= 1.0 + 1e-12);
  }
}

TEST_CASE("nonlinear quadrature matches the closed form for F' = v") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);
  // u a pure low mode; m_j = int_0^1 (u^{j-1} + t u_j) dt = u^{j-1} + u_j / 2
  GridFunction u(g);
  for (std::size_t i = 0; i < g.size(); ++i) u.v[i] = std::cos(3.0 * g.point_at(i)[0]);
  Symbol a = nonlinear_symbol([](double v) { return v; }, u, part);
  SpectralFunction U = dft(u);
  const auto& terms = std::get<std::vector<SeparableTerm>>(a.structure);
  GridFunction low(g);
  for (int j = 0; j <= part.j_max; ++j) {
    GridFunction uj = idft(apply_multiplier(U, part.phi_j(j)));
    GridFunction expect(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      expect.v[i] = low.v[i].real() + 0.5 * uj.v[i].real();
    GridFunction got = idft(terms[static_cast<std::size_t>(j)].m_hat);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(got.v[i] - expect.v[i]) < 1e-12);
    low = low + uj;
  }
}

TEST_CASE("nonlinear symbol rejects complex input") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);
  GridFunction u(g, cplx(0.0, 1.0));
  CHECK_THROWS(nonlinear_symbol([](double) { return 1.0; }, u, part));
}

TEST_CASE("reduced symbol basics") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  // all multipliers identically one: symbol value = Psi_top on every xi
  std::vector<GridFunction> ones(4, GridFunction(g, cplx(1.0)));
  Symbol a = reduced_symbol(ones, part);
  CHECK(std::abs(a.eval({0.1, 0.0}, {2.0, 0.0}) - cplx(1.0)) < 1e-12);  // Phi_1(2) = 1

  // single-j case equals pointwise multiply after a block cut
  std::vector<GridFunction> single;
  single.push_back(GridFunction(g));
  single.push_back(GridFunction(g));
  single.push_back(random_band_limited(g, 3.0, 5));
  Symbol b = reduced_symbol(single, part);
  GridFunction u = random_resolved(g, part, 6, 5);
  GridFunction lhs = direct_apply(b, u);
  GridFunction cut = block(u, 2, part);
  GridFunction rhs(g);
  for (std::size_t i = 0; i < g.size(); ++i) rhs.v[i] = single[2].v[i] * cut.v[i];
  CHECK(l2_distance(lhs, rhs) / (1.0 + lp_norm(rhs, 2.0)) < 1e-10);

  std::vector<GridFunction> over(static_cast<std::size_t>(part.j_max) + 2, GridFunction(g));
  CHECK_THROWS(reduced_symbol(over, part));
}

TEST_CASE("ching is the reduced symbol with oscillating multipliers") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 6);
  double d = 0.5;
  std::vector<GridFunction> mults;
  mults.push_back(GridFunction(g));  // j = 0 empty
  for (int j = 1; j <= part.j_max; ++j) {
    GridFunction m(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double ph = -g.point_at(i)[0] * std::exp2(j);
      m.v[i] = std::exp2(d * j) * cplx(std::cos(ph), std::sin(ph));
    }
    mults.push_back(m);
  }
  Symbol red = reduced_symbol(mults, part);
  Symbol chg = ching_symbol(d, part);
  GridFunction u = random_resolved(g, part, 9, 4);
  GridFunction x = direct_apply(red, u), y = direct_apply(chg, u);
  CHECK(l2_distance(x, y) / lp_norm(y, 2.0) < 1e-11);
}

TEST_CASE("partial transform of an x-independent symbol sits at xi = 0") {
  TorusGrid g = make_grid(1, 256);
  Symbol a = bessel_multiplier_symbol(1, -1.0);
  SpectralFunction row = partial_ft_row(a, g, {10, 0});
  cplx expect = kTwoPi * std::pow(1.0 + 100.0, -0.5);
  CHECK(std::abs(row.at_freq({0, 0}) - expect) < 1e-12);
  row.at_freq({0, 0}) = 0.0;
  CHECK(max_abs(row.c) == 0.0);
}

TEST_CASE("structured partial transform matches the numeric one") {
  TorusGrid g = make_grid(1, 128);
  DyadicPartition part = build_partition(g, 5);
  std::vector<GridFunction> mults;
  for (int j = 0; j < 4; ++j) mults.push_back(random_band_limited(g, 8.0, 21 + j));
  Symbol a = reduced_symbol(mults, part);
  Symbol plain = a;
  plain.structure = std::monostate{};  // force the numeric path
  for (int eta : {0, 3, 17, -40}) {
    SpectralFunction s1 = partial_ft_row(a, g, {eta, 0});
    SpectralFunction s2 = partial_ft_row(plain, g, {eta, 0});
    double scale = 1.0 + max_abs(s1.c);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(s1.c[i] - s2.c[i]) < 1e-10 * scale);
  }
}

TEST_CASE("seminorm of the unit symbol is one") {
  TorusGrid g = make_grid(1, 256);
  Symbol one = identity_symbol(1);
  for (int l : {0, 1}) {
    for (int m : {0, 1, 2}) {
      SeminormReport rep = seminorm(one, l, m, g);
      CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("ching mu_00 is finite and grid-stable") {
  double values[2];
  int idx = 0;
  for (int n : {512, 1024}) {
    TorusGrid g = make_grid(1, n);
    DyadicPartition part = build_partition(g, 7);
    Symbol a = ching_symbol(1.0, part);
    values[idx++] = seminorm(a, 0, 0, g).value;
  }
  CHECK(values[0] > 0.0);
  CHECK(std::abs(values[1] - values[0]) / values[0] < 0.05);
}

TEST_CASE("seminorms grow with the derivative orders") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);
  Symbol a = ching_symbol(0.0, part);
  SeminormReport m00 = seminorm(a, 0, 0, g);
  SeminormReport m10 = seminorm(a, 1, 0, g);
  SeminormReport m01 = seminorm(a, 0, 1, g);
  CHECK(m00.value <= m10.value * (1.0 + 1e-12));
  CHECK(m00.value <= m01.value * (1.0 + 1e-12));
}

TEST_CASE("finite differences agree with analytic closures") {
  TorusGrid g = make_grid(1, 256);
  Symbol a = bessel_multiplier_symbol(1, -1.0);
  Symbol fd = a;
  fd.deriv_x_max = -1;
  fd.deriv_xi_max = -1;
  fd.deriv = nullptr;
  for (int m : {1, 2}) {
    double va = seminorm(a, 0, m, g).value;
    double vf = seminorm(fd, 0, m, g).value;
    CHECK(std::abs(va - vf) / va < 1e-5);
  }
  Symbol no_fd = fd;
  CHECK_THROWS(seminorm(no_fd, 0, 1, g, false));
}

TEST_CASE("twisted diagonal check") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);

  Symbol smooth = bessel_multiplier_symbol(1, -0.5);
  TwistedReport r1 = twisted_diagonal_check(smooth, 2.0, g, 1e-10);
  CHECK(r1.ok);
  CHECK(r1.witnesses.empty());

  Symbol chg = ching_symbol(0.0, part);
  TwistedReport r2 = twisted_diagonal_check(chg, 2.0, g, 1e-10);
  CHECK(!r2.ok);
  bool found = false;
  for (const auto& [xi, eta] : r2.witnesses)
    if (xi[0] == -(1 << 4) && eta[0] == (1 << 4)) found = true;
  CHECK(found);

  Symbol zero = constant_symbol(1, cplx(0.0));
  CHECK(twisted_diagonal_check(zero, 2.0, g, 1e-10).ok);
  CHECK_THROWS(twisted_diagonal_check(zero, 0.5, g, 1e-10));

  Symbol cut = twisted_cutoff_symbol(part, 2.0, 77);
  CHECK(twisted_diagonal_check(cut, 2.0, g, 1e-10).ok);
}

TEST_CASE("sampled symbol reproduces its sample matrix") {
  TorusGrid g = make_grid(1, 64);
  DyadicPartition part = build_partition(g, 4);
  Symbol base = ching_symbol(0.0, part);
  std::vector<cplx> vals(g.size() * g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t e = 0; e < g.size(); ++e) {
      IVec f = g.freq_at(e);
      vals[x * g.size() + e] = base.eval(g.point_at(x), {static_cast<double>(f[0]), 0.0});
    }
  Symbol s = sampled_symbol(g, vals);
  GridFunction u = random_resolved(g, part, 13, 3);
  GridFunction got = direct_apply(s, u);
  GridFunction expect = direct_apply(base, u);
  CHECK(l2_distance(got, expect) / lp_norm(expect, 2.0) < 1e-11);
}
