// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <doctest.h>

#include "oracles.hpp"
#include "treeconc/harness.hpp"

using namespace treeconc;

namespace {

MMSpace two_point(double n) { return MMSpace({0.0, n, n, 0.0}, {1.0 - 1.0 / n, 1.0 / n}); }
MMSpace one_point() { return MMSpace({0.0}, {1.0}); }

WitnessOptions light() {
  WitnessOptions o;
  o.mcshane_sets = 16;
  o.restarts = 4;
  return o;
}

}  // namespace

TEST_CASE("obsdiam examples") {
  const MMSpace x = two_point(10);
  for (double k : {0.1, 0.3, 0.8}) {
    const auto b = obsdiam_R(x, k);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 0.0);
  }
  const auto small = obsdiam_R(x, 0.05);
  CHECK(small.lower == doctest::Approx(10.0));
  CHECK(small.upper == doctest::Approx(10.0));
  const auto one = obsdiam_R(one_point(), 0.3);
  CHECK(one.lower == 0.0);
  CHECK(one.upper == 0.0);
}

TEST_CASE("obscrad examples") {
  const auto r = obscrad_R(two_point(10), 0.3);
  CHECK(r.lower >= 1.0 - 1e-12);
  CHECK(r.lower <= r.upper);
  CHECK(obscrad_R(one_point(), 0.3).upper == 0.0);
  const MMSpace pair({0.0, 1.0, 1.0, 0.0}, {1.0, 1.0});
  CHECK(obscrad_R(pair, 0.4).lower == doctest::Approx(0.5));
}

TEST_CASE("obslpvar examples") {
  CHECK(obslpvar_R(one_point(), 1.0).upper == 0.0);
  const MMSpace pair({0.0, 2.0, 2.0, 0.0}, {1.0, 1.0});
  for (double p : {1.0, 2.0, 3.0}) {
    const auto b = obslpvar_R(pair, p);
    CHECK(b.lower == doctest::Approx(std::pow(2.0, 1.0 / p) * 2.0));
    CHECK(b.upper == doctest::Approx(std::pow(2.0, 1.0 / p) * 2.0));
  }
  const MMSpace tri = MMSpace::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {1, 1, 1});
  const auto t = obslpvar_R(tri, 1.0);
  CHECK(t.upper == doctest::Approx(6.0));
  // Vertex enumeration on the 1/2 grid: f = (0, 1, 1) or (0, 1/2, 1) give 4.
  CHECK(t.lower == doctest::Approx(4.0));
}

TEST_CASE("McShane extension") {
  Rng rng(61);
  const MMSpace x = random_graph_metric(rng, 7, 4);
  const std::vector<std::size_t> a{2};
  const std::vector<double> zero{0.0};
  const auto f = mcshane_extension(x, a, zero);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(f[i] == x.d(i, 2));
  std::vector<std::size_t> all(x.size());
  std::iota(all.begin(), all.end(), 0);
  const auto dist0 = x.row(0);
  const std::vector<double> vals(dist0.begin(), dist0.end());
  const auto g = mcshane_extension(x, all, vals);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(g[i] == vals[i]);
  const std::vector<std::size_t> pair{0, 1};
  const std::vector<double> bad{0.0, x.d(0, 1) + 1.0};
  CHECK_THROWS_AS(mcshane_extension(x, pair, bad), InputError);
}

TEST_CASE("linear programs") {
  std::vector<double> sol;
  // max x + y, x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5), value 14/5.
  const double v = solve_lp({{1, 2}, {3, 1}}, std::vector<double>{4, 6}, std::vector<double>{1, 1}, sol);
  CHECK(v == doctest::Approx(14.0 / 5));
  CHECK(sol[0] == doctest::Approx(8.0 / 5));
  CHECK(std::isinf(solve_lp({{1, -1}}, std::vector<double>{1}, std::vector<double>{1, 1}, sol)));
}

TEST_CASE("property: random McShane extensions restrict to their data") {
  Rng rng(62);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const MMSpace x = random_graph_metric(rng, 3 + trial % 9, 5);
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (u(rng) < 0.4) a.push_back(i);
    if (a.empty()) a.push_back(0);
    // Lower envelope of random data is 1-Lipschitz on A.
    std::vector<double> raw(a.size()), vals(a.size());
    for (auto& r : raw) r = 3.0 * u(rng);
    for (std::size_t i = 0; i < a.size(); ++i) {
      vals[i] = raw[i];
      for (std::size_t j = 0; j < a.size(); ++j) vals[i] = std::min(vals[i], raw[j] + x.d(a[i], a[j]));
    }
    const auto f = mcshane_extension(x, a, vals);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(f[a[i]] == doctest::Approx(vals[i]));
  }
}

TEST_CASE("property: sampled tree maps are 1-Lipschitz") {
  Rng rng(63);
  for (int trial = 0; trial < 1000; ++trial) {
    const MMSpace x = random_graph_metric(rng, 1 + trial % 9, 3);
    const Tree t = random_tree(rng, 1 + trial % 15);
    const auto f = sample_lipschitz_tree_map(x, t, rng);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        REQUIRE(t.distance(f.images()[i], f.images()[j]) <= x.d(i, j) + 1e-9);
  }
}

TEST_CASE("property: exact obsdiam matches the grid oracle on unit graphs") {
  Rng rng(64);
  for (int trial = 0; trial < 25; ++trial) {
    const MMSpace x = random_graph_metric(rng, 2 + trial % 4, 1);
    const double kappa = (0.05 + 0.1 * (trial % 4)) * x.total_mass();
    const auto exact = obsdiam_exact(x, kappa);
    const double grid = oracle::grid_obsdiam(x, kappa, x.min_positive_distance() / 8.0);
    CHECK(exact.value == doctest::Approx(grid));
    CHECK(oracle::partial_diameter_values(exact.witness, x.masses(), kappa) ==
          doctest::Approx(exact.value));
  }
}

TEST_CASE("property: sandwich and separation chain") {
  Rng rng(65);
  for (int trial = 0; trial < 30; ++trial) {
    const MMSpace x = random_graph_metric(rng, 2 + trial % 10, 3);
    const double m = x.total_mass();
    for (double frac : {0.05, 0.1, 0.2}) {
      const double k = frac * m;
      const auto d = obsdiam_R(x, k, light());
      CHECK(d.lower <= d.upper + 1e-12);
      CHECK(separation(x, k, k).value <= obsdiam_R(x, 0.9 * k, light()).upper + 1e-9);
      CHECK(obsdiam_R(x, 2 * k, light()).lower <= separation(x, k, k).value + 1e-9);
      const auto c = obscrad_R(x, k, light());
      CHECK(c.lower <= c.upper + 1e-12);
      const double sep = separation(x, k, k).value;
      for (double p : {1.0, 2.0, 3.0})
        CHECK(sep <= 2.0 / std::pow(m * k, 1.0 / p) * obslpvar_R(x, p, light()).upper + 1e-9);
      CHECK(sep <= std::sqrt(2.0 / (m * k)) * obslpvar_R(x, 2.0, light()).upper + 1e-9);
    }
  }
}

TEST_CASE("property: variation of a subspace is bounded by the space") {
  Rng rng(66);
  for (int trial = 0; trial < 30; ++trial) {
    const MMSpace x = random_graph_metric(rng, 3 + trial % 8, 4);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < x.size(); i += 2) idx.push_back(i);
    const MMSpace a = x.restrict_to(idx);
    for (double p : {1.0, 2.0})
      CHECK(obslpvar_R(a, p, light()).lower <= obslpvar_R(x, p, light()).upper + 1e-9);
  }
}

TEST_CASE("witnesses re-validate") {
  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const MMSpace x = random_graph_metric(rng, 2 + trial % 12, 4);
    for (const auto& b : {obsdiam_R(x, 0.1, light()), obscrad_R(x, 0.2, light()), obslpvar_R(x, 2.0, light())}) {
      REQUIRE(b.witness.size() == x.size());
      CHECK_NOTHROW(LipschitzFunction::validated(x, b.witness));
    }
  }
}
