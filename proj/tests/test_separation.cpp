// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <doctest.h>

#include "oracles.hpp"
#include "treeconc/harness.hpp"

using namespace treeconc;

TEST_CASE("hypercube rule matches enumeration for small n") {
  for (int n = 1; n <= 3; ++n) {
    const MMSpace x = hypercube_space(n, false);
    const double unit = 1.0 / x.size();
    for (std::size_t k1 = 1; k1 <= x.size(); ++k1)
      for (std::size_t k2 = 1; k2 <= x.size(); ++k2) {
        const auto h = hypercube_separation(n, false, k1 * unit, k2 * unit);
        CHECK(h.value == oracle::separation(x, k1 * unit, k2 * unit));
      }
  }
}

TEST_CASE("hypercube rule matches the exact search at n = 4") {
  const MMSpace x = hypercube_space(4, false);
  for (std::size_t k1 = 1; k1 <= 16; k1 += 1)
    for (std::size_t k2 = k1; k2 <= 16; k2 += 3) {
      const auto h = hypercube_separation(4, false, k1 / 16.0, k2 / 16.0);
      const auto s = separation(x, k1 / 16.0, k2 / 16.0);
      REQUIRE(s.exact);
      CHECK(h.value == s.value);
      double d = std::numeric_limits<double>::infinity();
      for (auto i : h.a)
        for (auto j : h.b) d = std::min(d, x.d(i, j));
      CHECK(h.a.size() >= k1);
      CHECK(h.b.size() >= k2);
      CHECK(d == h.value);
    }
}

TEST_CASE("hypercube normalization divides by n") {
  for (int n : {4, 7, 10}) {
    const auto raw = hypercube_separation(n, false, 0.1, 0.1);
    const auto norm = hypercube_separation(n, true, 0.1, 0.1);
    CHECK(norm.value == doctest::Approx(raw.value / n));
  }
}

TEST_CASE("heavy masses separate by zero") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const MMSpace x = random_graph_metric(rng, 2 + trial % 10, 5);
    const double m = x.total_mass();
    CHECK(separation(x, 0.51 * m, 0.51 * m).value == 0.0);
    CHECK(separation(x, 0.7 * m, 0.9 * m).value == 0.0);
  }
}

TEST_CASE("infeasible masses give zero, negative masses are rejected") {
  const MMSpace x({0.0, 1.0, 1.0, 0.0}, {0.5, 0.5});
  CHECK(separation(x, 1.5, 0.1).value == 0.0);
  CHECK(hypercube_separation(3, false, 1.5, 0.1).value == 0.0);
  CHECK_THROWS_AS(separation(x, -0.1, 0.1), InputError);
  CHECK_THROWS_AS(hypercube_separation(3, false, -0.1, 0.1), InputError);
}

TEST_CASE("large spaces fall back to a lower bound") {
  Rng rng(32);
  const MMSpace x = random_graph_metric(rng, 24, 3);
  SeparationOptions small;
  small.max_exact_points = 8;
  const auto lb = separation(x, 0.2, 0.2, small);
  CHECK_FALSE(lb.exact);
  const auto full = separation(x, 0.2, 0.2);
  // 24 points exceeds the default limit too; both are lower bounds realized by sets.
  for (const auto& s : {lb, full}) {
    double d = std::numeric_limits<double>::infinity();
    for (auto i : s.a)
      for (auto j : s.b) d = std::min(d, x.d(i, j));
    CHECK(d >= s.value - 1e-12);
  }
}

TEST_CASE("property: 1-Lipschitz images do not increase separation") {
  Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const MMSpace x = random_graph_metric(rng, 2 + trial % 8, 3);
    const Tree t = random_tree(rng, 6);
    const auto f = sample_lipschitz_tree_map(x, t, rng);
    const TreeMeasure push = pushforward(x, t, f);
    const double m = x.total_mass();
    for (auto [a, b] : {std::pair{0.1, 0.1}, {1.0 / 3.0, 0.1}, {0.25, 0.4}})
      CHECK(separation(t, push, a * m, b * m).value <= separation(x, a * m, b * m).value + 1e-9);
  }
}

TEST_CASE("normalized hypercube separation is not monotone in n") {
  // Q5, 4-point sets: every A of size 4 leaves fewer than 4 points at distance >= 4,
  // checked over all 4-subsets containing 0 (translation invariance).
  int best5 = 0;
  for (int a = 1; a < 32; ++a)
    for (int b = a + 1; b < 32; ++b)
      for (int c = b + 1; c < 32; ++c) {
        const int set[4] = {0, a, b, c};
        int far[6] = {};
        for (int x = 0; x < 32; ++x) {
          int d = 5;
          for (int s : set) d = std::min(d, __builtin_popcount(x ^ s));
          ++far[d];
        }
        for (int r = 5, count = 0; r >= 0; --r) {
          count += far[r];
          if (count >= 4) {
            best5 = std::max(best5, r);
            break;
          }
        }
      }
  CHECK(best5 == 3);
  // Q6, 7 points: the radius-1 ball about 0 and the 7 points of weight >= 5 are 4 apart.
  CHECK(hypercube_separation(5, true, 0.1, 0.1).value == doctest::Approx(3.0 / 5));
  CHECK(hypercube_separation(6, true, 0.1, 0.1).value >= 4.0 / 6 - 1e-12);
  CHECK(hypercube_separation(6, true, 0.1, 0.1).value > hypercube_separation(5, true, 0.1, 0.1).value);
}
