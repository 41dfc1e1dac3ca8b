#include "doctest.h"
#include "paradiff/partition.hpp"
#include "paradiff/probes.hpp"

using namespace paradiff;

namespace {
GridFunction mode(const TorusGrid& g, int xi) {
  SpectralFunction F(g);
  F.at_freq({xi, 0}) = kTwoPi;
  return idft(F);
}
}  // namespace

TEST_CASE("partition values at distinguished frequencies") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  std::size_t origin = g.flat_of_freq({0, 0});
  CHECK(part.phi_j(0)[origin] == 1.0);
  for (int j = 1; j <= part.j_max; ++j) CHECK(part.phi_j(j)[origin] == 0.0);
  for (int j = 1; j <= part.j_max; ++j) {
    std::size_t at = g.flat_of_freq({1 << j, 0});
    CHECK(part.phi_j(j)[at] == 1.0);  // Psi(1) = 1, Psi(2) = 0
  }
}

TEST_CASE("partition of unity on the resolved ball") {
  TorusGrid g = make_grid(1, 4096);
  DyadicPartition part = build_partition(g, 10);
  double plateau = std::exp2(10);
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.freq_radius(i) > plateau) continue;
    double s = 0.0;
    for (int j = 0; j <= part.j_max; ++j) s += part.phi_j(j)[i];
    dev = std::max(dev, std::abs(s - 1.0));
  }
  CHECK(dev <= 1e-12);
}

TEST_CASE("support constants are exact and overlap is adjacent-only") {
  TorusGrid g = make_grid(1, 1024);
  DyadicPartition part = build_partition(g, 8);
  for (int j = 1; j <= part.j_max; ++j) {
    double lo = 0.55 * std::exp2(j), hi = 1.3 * std::exp2(j);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double r = g.freq_radius(i);
      if (part.phi_j(j)[i] != 0.0) {
        CHECK(r >= lo);
        CHECK(r <= hi);
      }
    }
  }
  for (int j = 0; j + 2 <= part.j_max; ++j)
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(part.phi_j(j)[i] * part.phi_j(j + 2)[i] == 0.0);
  // the three-block window reproduces each block exactly
  for (int j = 0; j <= part.j_max; ++j) {
    std::vector<double> tld = part.phi_tilde(j);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(tld[i] * part.phi_j(j)[i] == part.phi_j(j)[i]);
  }
}

TEST_CASE("profile transition is monotone and clamped") {
  CutoffProfile prof;
  CHECK(prof(1.1) == 1.0);
  CHECK(prof(1.3) == 0.0);
  CHECK(prof(0.0) == 1.0);
  CHECK(prof(99.0) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 2000; ++i) {
    double t = 1.1 + 0.2 * i / 2000.0;
    double v = prof(t);
    CHECK(v <= prev + 1e-14);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("build_partition rejects unresolvable j_max") {
  TorusGrid g = make_grid(1, 256);
  CHECK_NOTHROW(build_partition(g, 6));   // 13/10 * 64 = 83.2 <= 128
  CHECK_THROWS(build_partition(g, 7));    // 13/10 * 128 = 166.4 > 128
  CHECK_NOTHROW(build_partition(g, 0));   // degenerate single block
}

TEST_CASE("block picks pure modes exactly") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  GridFunction f = mode(g, 1 << 5);
  CHECK(l2_distance(block(f, 5, part), f) / lp_norm(f, 2.0) < 1e-13);
  CHECK(lp_norm(block(f, 3, part), 2.0) < 1e-13);
  CHECK(lp_norm(block(f, 7, part), 2.0) < 1e-13);

  GridFunction one(g, cplx(1.0));
  CHECK(l2_distance(block(one, 0, part), one) < 1e-13);
  CHECK(lp_norm(block(one, 1, part), 2.0) < 1e-13);
  CHECK_THROWS(block(f, -1, part));
  CHECK_THROWS(block(f, part.j_max + 1, part));
}

TEST_CASE("blocks sum back to a resolved input") {
  for (int dim : {1, 2}) {
    TorusGrid g = make_grid(dim, dim == 1 ? 1024 : 128);
    DyadicPartition part = build_partition(g, dim == 1 ? 8 : 5);
    GridFunction f = random_resolved(g, part, 3);
    GridFunction sum(g);
    for (int j = 0; j <= part.j_max; ++j) sum = sum + block(f, j, part);
    CHECK(l2_distance(sum, f) / lp_norm(f, 2.0) < 1e-10);
  }
}

TEST_CASE("low_pass on constants and pure modes") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  GridFunction one(g, cplx(3.0));
  for (int j : {0, 4}) CHECK(l2_distance(low_pass(one, j, part), one) < 1e-12);
  GridFunction below = mode(g, 1 << 3);
  GridFunction above = mode(g, 1 << 6);
  CHECK(l2_distance(low_pass(below, 5, part), below) / lp_norm(below, 2.0) < 1e-13);
  CHECK(lp_norm(low_pass(above, 3, part), 2.0) < 1e-13);
}

TEST_CASE("low_pass telescopes the blocks") {
  TorusGrid g = make_grid(1, 512);
  DyadicPartition part = build_partition(g, 7);
  GridFunction f = random_resolved(g, part, 5);
  for (int j : {0, 3, 7}) {
    GridFunction acc(g);
    for (int k = 0; k <= j; ++k) acc = acc + block(f, k, part);
    CHECK(l2_distance(acc, low_pass(f, j, part)) <= 1e-12 * lp_norm(f, 2.0));
  }
}

TEST_CASE("decompose reproduces the theta blocks in closed form") {
  TorusGrid g = make_grid(1, 1024);
  DyadicPartition part = build_partition(g, 7);
  double d = 1.0;
  ThetaFamily fam = build_theta_family(d, {2}, 0, g, part);
  DyadicBlocks blocks = decompose(fam.members[0], part);
  for (int j = 0; j <= part.j_max; ++j) {
    const GridFunction& bj = blocks.blocks[static_cast<std::size_t>(j)];
    if (j < 2 || j > 4) {
      CHECK(lp_norm(bj, 2.0) < 1e-12);
      continue;
    }
    GridFunction expect(g);
    double w = std::exp2(-d * j) / j;
    for (std::size_t i = 0; i < g.size(); ++i) {
      RVec x = g.point_at(i);
      double ph = (1 << j) * x[0];
      expect.v[i] = w * cplx(std::cos(ph), std::sin(ph));
    }
    CHECK(l2_distance(bj, expect) / lp_norm(expect, 2.0) < 1e-12);
  }
}

TEST_CASE("decompose of a constant is a single block") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 6);
  DyadicBlocks blocks = decompose(GridFunction(g, cplx(2.0)), part);
  CHECK(l2_distance(blocks.blocks[0], GridFunction(g, cplx(2.0))) < 1e-12);
  for (int j = 1; j <= part.j_max; ++j) CHECK(lp_norm(blocks.blocks[static_cast<std::size_t>(j)], 2.0) < 1e-13);
}

TEST_CASE("decompose rejects unresolved inputs") {
  TorusGrid g = make_grid(1, 256);
  DyadicPartition part = build_partition(g, 4);  // plateau 11/10 * 16 = 17.6
  GridFunction f = mode(g, 40);
  CHECK_THROWS(decompose(f, part));
}
