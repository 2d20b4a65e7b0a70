// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "treeconc/harness.hpp"

using namespace treeconc;

namespace {

InstanceSpec spec(std::string g, std::map<std::string, double> p, std::uint64_t seed = 1) {
  InstanceSpec s;
  s.generator = std::move(g);
  s.params = std::move(p);
  s.seed = seed;
  return s;
}

const CheckRecord* find(const CheckReport& r, const std::string& name) {
  for (const auto& c : r.records)
    if (c.inequality == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("generator examples") {
  const auto two = generate(spec("two-point", {{"n", 10}}));
  REQUIRE(two.space.size() == 2);
  CHECK(two.space.d(0, 1) == 10.0);
  CHECK(two.space.mass(0) == doctest::Approx(0.9));
  CHECK(two.space.mass(1) == doctest::Approx(0.1));

  const auto h1 = generate(spec("hypercube", {{"n", 1}}));
  REQUIRE(h1.space.size() == 2);
  CHECK(h1.space.d(0, 1) == 1.0);
  CHECK(h1.space.mass(0) == 0.5);

  const auto h2 = generate(spec("hypercube", {{"n", 2}}));
  REQUIRE(h2.space.size() == 4);
  std::set<double> d;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(h2.space.mass(i) == 0.25);
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) d.insert(h2.space.d(i, j));
  }
  CHECK(d == std::set<double>{1.0, 2.0});

  CHECK_THROWS_AS(generate(spec("hypercube", {{"n", 0}})), InputError);
  CHECK_THROWS_AS(generate(spec("two-point", {{"n", 1}})), InputError);
  CHECK_THROWS_AS(generate(spec("cloud", {{"d", 2}, {"k", 2.5}})), InputError);
  CHECK_THROWS_AS(generate(spec("nope", {})), InputError);
}

TEST_CASE("generators are deterministic") {
  for (const auto& s : {spec("tree", {{"edges", 9}, {"atoms", 7}}, 5), spec("cloud", {{"d", 3}, {"k", 6}}, 5),
                        spec("graph", {{"k", 8}, {"wmax", 4}}, 5), spec("path", {{"k", 5}}, 5)}) {
    const auto a = generate(s), b = generate(s);
    REQUIRE(a.space.size() == b.space.size());
    CHECK(std::equal(a.space.dist().begin(), a.space.dist().end(), b.space.dist().begin()));
    CHECK(std::equal(a.space.masses().begin(), a.space.masses().end(), b.space.masses().begin()));
    CHECK(a.name == b.name);
  }
}

TEST_CASE("measure checks on a point mass and a symmetric star") {
  const std::vector<double> len(3, 1.0);
  const Tree t = Tree::star(len);
  CheckOptions opts;
  CheckReport point;
  check_measure_inequalities(t, TreeMeasure(t, {{t.at(0, 0.5), 1.0}}), "point", opts, point);
  CHECK(point.all_pass());
  for (const auto& r : point.records)
    if (r.inequality.rfind("vp-transfer", 0) == 0 || r.inequality.rfind("partial-diam", 0) == 0)
      CHECK(r.lhs == 0.0);

  CheckOptions one;
  one.kappa_fractions = {0.2};
  CheckReport star;
  const TreeMeasure nu(t, {{TreePoint::at_vertex(1), 1.0 / 3}, {TreePoint::at_vertex(2), 1.0 / 3},
                           {TreePoint::at_vertex(3), 1.0 / 3}});
  check_measure_inequalities(t, nu, "star", one, star);
  CHECK(star.all_pass());
  const auto* ball = find(star, "median-ball-mass[k=0.2]");
  REQUIRE(ball);
  // Sep(nu; 1/3, 0.1) = 2 (two leaves), so the ball about the center holds all the mass.
  CHECK(ball->lhs == doctest::Approx(0.8));
  CHECK(ball->rhs == doctest::Approx(1.0));
}

TEST_CASE("map checks on constant and two-point maps") {
  const MMSpace x({0.0, 10.0, 10.0, 0.0}, {0.9, 0.1});
  const std::vector<double> one{1.0};
  const Tree t = Tree::path(one);
  CheckOptions opts;
  const auto bounds = space_bounds(x, {}, opts);
  const std::vector<LipschitzTreeMap> maps{
      LipschitzTreeMap::validated(x, t, {TreePoint::at_vertex(0), TreePoint::at_vertex(0)}),
      LipschitzTreeMap::validated(x, t, {TreePoint::at_vertex(0), TreePoint::at_vertex(1)})};
  CheckReport r;
  check_map_inequalities(x, t, maps, "two-point", bounds, opts, r);
  CHECK(r.all_pass());
  for (const auto& c : r.records)
    if (c.instance.ends_with("map0")) CHECK(c.lhs == 0.0);
  for (std::size_t k = 0; k < bounds.kappas.size(); ++k)
    CHECK(bounds.sep_median[k] == doctest::Approx(oracle::separation(x, 1.0 / 3, bounds.kappas[k] / 2)));
  CHECK(r.comparisons.size() == opts.kappa_fractions.size());
}

TEST_CASE("hypercube(6) against sampled maps into a 20-edge tree") {
  const auto inst = generate(spec("hypercube", {{"n", 6}}));
  Rng rng(81);
  const Tree t = random_tree(rng, 20);
  std::vector<LipschitzTreeMap> maps;
  for (int i = 0; i < 200; ++i) maps.push_back(sample_lipschitz_tree_map(inst.space, t, rng));
  CheckOptions opts;
  opts.witness.restarts = 4;
  opts.witness.mcshane_sets = 16;
  const auto bounds = space_bounds(inst.space, separation_for(inst), opts);
  CheckReport r;
  check_map_inequalities(inst.space, t, maps, inst.name, bounds, opts, r);
  CHECK(r.failures() == 0);
}

TEST_CASE("random measure suite passes") {
  CheckOptions opts;
  CheckReport all;
  for (std::uint64_t i = 0; i < 60; ++i) {
    const auto inst = generate(spec("tree", {{"edges", 1 + i % 20}, {"atoms", 1 + i % 12}}, derive_seed(3, i)));
    check_measure_inequalities(*inst.tree, *inst.measure, inst.name, opts, all);
  }
  for (const auto& r : all.records)
    if (!r.pass) MESSAGE(r.instance << " " << r.inequality << " lhs=" << r.lhs << " rhs=" << r.rhs);
  CHECK(all.all_pass());
}

TEST_CASE("two-point family separation") {
  for (int n = 2; n <= 50; ++n) {
    const auto inst = generate(spec("two-point", {{"n", static_cast<double>(n)}}));
    CHECK(separation(inst.space, 1.0 / n, 1.0 / n).value == doctest::Approx(n));
    if (n > 4) CHECK(separation(inst.space, 0.25, 0.25).value == 0.0);
  }
}

TEST_CASE("family report") {
  std::vector<InstanceSpec> fam;
  for (int n = 2; n <= 6; ++n) fam.push_back(spec("hypercube", {{"n", static_cast<double>(n)}, {"normalized", 1}}));
  WitnessOptions o;
  o.restarts = 2;
  o.mcshane_sets = 8;
  const auto rows = levy_report(fam, 0.1, 1.0, o);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.obsdiam.lower <= r.obsdiam.upper + 1e-12);
    CHECK(r.sep_exact);
  }
  const auto csv = levy_csv(rows);
  CHECK(csv == levy_csv(levy_report(fam, 0.1, 1.0, o)));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  const auto svg = levy_svg(rows, "t");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);

  std::vector<InstanceSpec> constant(3, spec("two-point", {{"n", 10}}));
  const auto flat = levy_report(constant, 0.3, 1.0, o);
  CHECK(flat[0].sep == flat[2].sep);
  CHECK(flat[0].obsdiam.upper == flat[2].obsdiam.upper);
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw InputError("x");
                  }),
                  InputError);
}
