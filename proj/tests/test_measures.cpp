// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <doctest.h>

#include "oracles.hpp"
#include "treeconc/harness.hpp"
#include "treeconc/transport.hpp"

using namespace treeconc;

namespace {

LineMeasure line(std::vector<double> x, std::vector<double> w) {
  return LineMeasure(1, std::move(x), std::move(w));
}

}  // namespace

TEST_CASE("MMSpace validation") {
  CHECK_THROWS_AS(MMSpace({0.0, 1.0, 2.0, 0.0}, {1.0, 1.0}), InputError);  // asymmetric
  CHECK_THROWS_AS(MMSpace({1.0, 1.0, 1.0, 0.0}, {1.0, 1.0}), InputError);  // nonzero diagonal
  CHECK_THROWS_AS(MMSpace({0.0, 1.0, 1.0, 0.0}, {1.0, 0.0}), InputError);  // zero mass
  CHECK_THROWS_AS(MMSpace::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, {1, 1, 1}), InputError);
  CHECK_NOTHROW(MMSpace::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {1, 1, 1}));
}

TEST_CASE("V_p examples") {
  CHECK(vp(line({2.0}, {1.0}), 1.0) == 0.0);
  for (double p : {1.0, 2.0, 3.0}) {
    const double expect = std::pow(2.0, 1.0 / p) * 2.5;
    CHECK(vp(line({0.0, 2.5}, {1.0, 1.0}), p) == doctest::Approx(expect));
  }
  CHECK(vp(line({0.0, 1.0}, {0.5, 0.5}), 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("partial diameter examples") {
  std::vector<double> x, w;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i);
    w.push_back(0.1);
  }
  const LineMeasure nu = line(x, w);
  CHECK(partial_diameter(nu, 0.2) == doctest::Approx(7.0));
  CHECK(partial_diameter(nu, 1.0) == 0.0);
  CHECK(partial_diameter(line({4.0}, {2.0}), 1.5) == 0.0);
}

TEST_CASE("separation examples") {
  const MMSpace two({0.0, 10.0, 10.0, 0.0}, {0.9, 0.1});
  CHECK(separation(two, 0.1, 0.1).value == doctest::Approx(10.0));
  CHECK(separation(two, 0.6, 0.6).value == 0.0);
  const LineMeasure four = line({0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25});
  CHECK(separation(four, 0.25, 0.25).value == doctest::Approx(3.0));
}

TEST_CASE("central radius examples") {
  CHECK(central_radius(line({1.0}, {1.0}), 0.3, std::vector<double>{1.0}) == 0.0);
  const LineMeasure remark = line({0.0, 10.0}, {0.9, 0.1});
  CHECK(central_radius(remark, 0.1, std::vector<double>{1.0}) == doctest::Approx(1.0));
  CHECK(central_radius(remark, 0.5, std::vector<double>{1.0}) == doctest::Approx(1.0));
  CHECK(central_radius(remark, 0.05, std::vector<double>{1.0}) == doctest::Approx(9.0));
}

TEST_CASE("pushforward merges atoms") {
  const MMSpace x = MMSpace::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {0.2, 0.3, 0.5});
  const auto constant = pushforward(x, LipschitzFunction::validated(x, {4.0, 4.0, 4.0}));
  REQUIRE(constant.size() == 1);
  CHECK(constant.mass(0) == doctest::Approx(1.0));
  const auto injective = pushforward(x, LipschitzFunction::validated(x, {0.0, 1.0, 2.0}));
  CHECK(injective.size() == 3);

  const std::vector<double> len{1.0, 1.0};
  const Tree t = Tree::path(len);
  const auto f = LipschitzTreeMap::validated(x, t, {TreePoint::at_vertex(0), TreePoint::at_vertex(0), TreePoint::at_vertex(1)});
  const auto nu = pushforward(x, t, f);
  REQUIRE(nu.size() == 2);
  CHECK(nu.total_mass() == doctest::Approx(1.0));
  CHECK_THROWS_AS(LipschitzFunction::validated(x, {0.0, 2.0, 2.0}), InputError);
}

TEST_CASE("coarsening") {
  const std::vector<double> len{0.5, 3.0};
  const Tree t = Tree::path(len);
  const TreeMeasure nu(t, {{TreePoint::at_vertex(0), 1.0}, {TreePoint::at_vertex(1), 2.0},
                           {TreePoint::at_vertex(2), 1.0}});
  const auto same = coarsen(t, nu, 0.1);
  CHECK(same.size() == 3);
  const auto merged = coarsen(t, nu, 1.0);
  CHECK(merged.size() == 2);
  CHECK(merged.total_mass() == doctest::Approx(4.0));
}

TEST_CASE("property: partial diameter and V_p agree with enumeration") {
  Rng rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const Tree t = random_tree(rng, 1 + trial % 10);
    const TreeMeasure nu = random_tree_measure(t, rng, 1 + trial % 9);
    const MMSpace x = atom_space(t, nu);
    for (double frac : {0.0, 0.1, 0.3, 0.5, 0.9}) {
      const double kappa = frac * nu.total_mass();
      const double ref = oracle::partial_diameter(x, kappa);
      CHECK(partial_diameter(t, nu, kappa) == doctest::Approx(ref).scale(1.0));
      CHECK(partial_diameter_tree_metric(x, kappa) == doctest::Approx(ref).scale(1.0));
      CHECK(partial_diameter_exhaustive(x, kappa) == doctest::Approx(ref).scale(1.0));
    }
    for (double p : {1.0, 2.0, 3.0})
      CHECK(vp(t, nu, p) == doctest::Approx(oracle::vp(x, p)));
  }
}

TEST_CASE("property: separation agrees with labelling enumeration") {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const MMSpace x = random_graph_metric(rng, 2 + trial % 7, 4);
    const double m = x.total_mass();
    for (auto [a, b] : {std::pair{0.1, 0.1}, {1.0 / 3.0, 0.05}, {0.2, 0.4}, {0.5, 0.5}, {0.05, 0.9}}) {
      const auto s = separation(x, a * m, b * m);
      CHECK(s.exact);
      CHECK(s.value == doctest::Approx(oracle::separation(x, a * m, b * m)));
      // Reported sets carry the masses and realize the value.
      double ma = 0.0, mb = 0.0, d = std::numeric_limits<double>::infinity();
      for (auto i : s.a) ma += x.mass(i);
      for (auto j : s.b) mb += x.mass(j);
      for (auto i : s.a)
        for (auto j : s.b) d = std::min(d, x.d(i, j));
      CHECK(ma >= a * m - 1e-12);
      CHECK(mb >= b * m - 1e-12);
      CHECK(d == doctest::Approx(s.value));
    }
  }
}

TEST_CASE("property: separation of tree and line measures") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Tree t = random_tree(rng, 2 + trial % 8);
    const TreeMeasure nu = random_tree_measure(t, rng, 2 + trial % 8);
    const MMSpace x = atom_space(t, nu);
    const double m = nu.total_mass();
    CHECK(separation(t, nu, m / 3.0, 0.1 * m).value ==
          doctest::Approx(oracle::separation(x, m / 3.0, 0.1 * m)));
  }
  // Interleaved optimal sets on the line: A = {0, 10}, B = {5}.
  const LineMeasure nu = line({0.0, 5.0, 10.0}, {0.3, 0.4, 0.3});
  CHECK(separation(nu, 0.6, 0.4).value == doctest::Approx(5.0));
}

TEST_CASE("property: coarsening moves mass at most eps") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const Tree t = random_tree(rng, 1 + trial % 12);
    const TreeMeasure nu = random_tree_measure(t, rng, 1 + trial % 14);
    const double eps = 0.1 + 0.2 * (trial % 5);
    const TreeMeasure c = coarsen(t, nu, eps);
    CHECK(c.total_mass() == doctest::Approx(nu.total_mass()));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(t.distance(c.atoms()[i].point, c.atoms()[j].point) > eps - 1e-12);
    CHECK(w1_tree(t, c, nu) <= eps * nu.total_mass() + 1e-9);
  }
}
