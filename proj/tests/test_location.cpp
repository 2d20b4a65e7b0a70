// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <doctest.h>

#include "oracles.hpp"
#include "treeconc/harness.hpp"

using namespace treeconc;

namespace {

Tree unit_star(std::size_t leaves) {
  const std::vector<double> len(leaves, 1.0);
  return Tree::star(len);
}

TreeMeasure leaves_measure(const Tree& t, std::vector<double> w) {
  std::vector<TreeAtom> atoms;
  for (std::size_t i = 0; i < w.size(); ++i) atoms.push_back({TreePoint::at_vertex(i + 1), w[i]});
  return TreeMeasure(t, std::move(atoms));
}

/// Minimum of the Frechet objective by ternary search on every edge (it is
/// convex along each edge).
double brute_min_objective(const Tree& t, const TreeMeasure& nu) {
  auto f = [&](TreePoint x) {
    double s = 0.0;
    for (const auto& a : nu.atoms()) {
      const double d = t.distance(x, a.point);
      s += a.mass * d * d;
    }
    return s;
  };
  double best = f(TreePoint::at_vertex(0));
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    double lo = 0.0, hi = t.edge(e).length;
    for (int it = 0; it < 200; ++it) {
      const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
      if (f(t.at(e, a)) < f(t.at(e, b))) hi = b;
      else lo = a;
    }
    best = std::min(best, f(t.at(e, 0.5 * (lo + hi))));
  }
  return best;
}

}  // namespace

TEST_CASE("directional imbalance examples") {
  const Tree t = unit_star(3);
  const TreeMeasure nu = leaves_measure(t, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto comps = components_at(t, TreePoint::at_vertex(0));
  for (const auto& c : comps)
    CHECK(directional_imbalance(t, nu, TreePoint::at_vertex(0), c) == doctest::Approx(-1.0 / 3));
  const auto at_leaf = components_at(t, TreePoint::at_vertex(1));
  REQUIRE(at_leaf.size() == 1);
  CHECK(directional_imbalance(t, nu, TreePoint::at_vertex(1), at_leaf[0]) == doctest::Approx(4.0 / 3));
  CHECK(verify_sturm(t, nu, TreePoint::at_vertex(1)) == doctest::Approx(4.0 / 3));
  const TreeMeasure point(t, {{TreePoint::at_vertex(2), 1.0}});
  for (const auto& c : components_at(t, TreePoint::at_vertex(2)))
    CHECK(directional_imbalance(t, point, TreePoint::at_vertex(2), c) == 0.0);
  CHECK_THROWS_AS(directional_imbalance(t, nu, TreePoint::at_vertex(0), Subtree::whole(t)), InputError);
}

TEST_CASE("barycenter examples") {
  const std::vector<double> one{1.0};
  const Tree e = Tree::path(one);
  const TreeMeasure two(e, {{TreePoint::at_vertex(0), 1.0}, {TreePoint::at_vertex(1), 3.0}});
  const auto b = tree_barycenter(e, two);
  CHECK(e.distance(b.point, TreePoint::at_vertex(0)) == doctest::Approx(0.75));

  const Tree s = unit_star(3);
  const auto c = tree_barycenter(s, leaves_measure(s, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(s.same_point(c.point, TreePoint::at_vertex(0), 1e-9));

  const TreeMeasure single(s, {{s.at(1, 0.25), 2.0}});
  const auto d = tree_barycenter(s, single);
  CHECK(s.same_point(d.point, s.at(1, 0.25), 1e-12));
  CHECK(d.objective == 0.0);

  const LineMeasure line(1, {0.0, 3.0}, {1.0, 1.0});
  CHECK(real_barycenter(line)[0] == doctest::Approx(1.5));
  const LineMeasure remark(1, {0.0, 10.0}, {0.9, 0.1});
  CHECK(real_barycenter(remark)[0] == doctest::Approx(1.0));
}

TEST_CASE("median examples") {
  const Tree s = unit_star(3);
  const TreeMeasure nu = leaves_measure(s, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto m = tree_median(s, nu);
  // The center and every leaf are medians (a leaf with parts {leaf} and T).
  CHECK(m.point.is_vertex());
  CHECK(std::min(m.mass_a, m.mass_b) >= 1.0 / 3 - 1e-12);
  CHECK(m.mass_a + m.mass_b <= 4.0 / 3 + 1e-12);

  const std::vector<double> one{1.0};
  const Tree e = Tree::path(one);
  const TreeMeasure heavy(e, {{TreePoint::at_vertex(0), 0.9}, {TreePoint::at_vertex(1), 0.1}});
  const auto h = tree_median(e, heavy);
  CHECK(e.same_point(h.point, TreePoint::at_vertex(0)));
  CHECK(std::min(h.mass_a, h.mass_b) >= 0.3);

  const std::vector<double> three(3, 1.0);
  const Tree p = Tree::path(three);
  std::vector<TreeAtom> quarter;
  for (VertexId v = 0; v < 4; ++v) quarter.push_back({TreePoint::at_vertex(v), 0.25});
  const auto q = tree_median(p, TreeMeasure(p, quarter));
  const double x = p.distance(q.point, TreePoint::at_vertex(0));
  CHECK(x >= 1.0 - 1e-12);
  CHECK(x <= 2.0 + 1e-12);
}

TEST_CASE("signed distance") {
  const Tree s = unit_star(3);
  const TreeMeasure nu = leaves_measure(s, {0.5, 0.3, 0.2});
  const auto bary = tree_barycenter(s, nu);
  const auto med = tree_median(s, nu);
  const auto phi = phi_nu(s, nu, med, bary);
  CHECK(phi(bary.point) == doctest::Approx(0.0).scale(1.0));
  CHECK(phi(med.point) == doctest::Approx(s.distance(bary.point, med.point)));
  int positive = 0, negative = 0;
  for (VertexId v = 1; v <= 3; ++v) (phi(TreePoint::at_vertex(v)) > 0 ? positive : negative)++;
  CHECK(positive == 1);
  CHECK(negative == 2);
}

TEST_CASE("property: barycenter is certified and optimal") {
  Rng rng(41);
  for (int trial = 0; trial < 120; ++trial) {
    const Tree t = random_tree(rng, 1 + trial % 20);
    const TreeMeasure nu = random_tree_measure(t, rng, 1 + trial % 15);
    const auto b = tree_barycenter(t, nu);
    CHECK(b.max_violation <= b.tolerance);
    const double ref = brute_min_objective(t, nu);
    CHECK(b.objective <= ref + 1e-9 * std::max(1.0, ref));
    CHECK(frechet_objective(t, nu, b.point) == doctest::Approx(b.objective));
    for (int k = 0; k < 20; ++k)
      CHECK(b.objective <= frechet_objective(t, nu, random_tree_point(t, rng)) + 1e-9 * std::max(1.0, ref));
  }
}

TEST_CASE("property: median parts carry a third each and meet at the median") {
  Rng rng(42);
  for (int trial = 0; trial < 120; ++trial) {
    const Tree t = random_tree(rng, 1 + trial % 20);
    const TreeMeasure nu = random_tree_measure(t, rng, 1 + trial % 15);
    const auto med = tree_median(t, nu);
    const double m = nu.total_mass();
    double a = 0.0, b = 0.0;
    for (const auto& atom : nu.atoms()) {
      if (med.part_a.contains(t, atom.point)) a += atom.mass;
      if (med.part_b.contains(t, atom.point)) b += atom.mass;
    }
    CHECK(a >= m / 3.0 - 1e-12 * std::max(1.0, m));
    CHECK(b >= m / 3.0 - 1e-12 * std::max(1.0, m));
    CHECK(med.part_a.contains(t, med.point));
    CHECK(med.part_b.contains(t, med.point));
    const auto meet = subtree_intersection(t, med.part_a, med.part_b);
    REQUIRE(meet);
    CHECK(meet->length(t) <= 1e-9);
    const std::vector<Subtree> parts{med.part_a, med.part_b};
    CHECK(subtree_union(t, parts).length(t) == doctest::Approx(t.total_length()));
  }
}

TEST_CASE("property: signed distance is 1-Lipschitz with nonpositive mean") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Tree t = random_tree(rng, 1 + trial % 15);
    const TreeMeasure nu = random_tree_measure(t, rng, 1 + trial % 12);
    const auto phi = phi_nu(t, nu, tree_median(t, nu), tree_barycenter(t, nu));
    const MMSpace x = atom_space(t, nu);
    const auto f = phi.on_atoms(nu);
    double mean = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mean += x.mass(i) * f[i];
    CHECK(mean <= 1e-9 * std::max(1.0, x.diameter()));
    std::vector<TreePoint> pts;
    for (int k = 0; k < 10; ++k) pts.push_back(random_tree_point(t, rng));
    for (const auto& p : pts)
      for (const auto& q : pts) CHECK(std::abs(phi(p) - phi(q)) <= t.distance(p, q) + 1e-9);
  }
}
