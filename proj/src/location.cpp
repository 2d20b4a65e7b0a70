// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/location.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace treeconc {
namespace {

struct Split {
  std::vector<double> weighted_dist;  // sum of m_w d(z, w) per direction
  std::vector<double> open_mass;      // mass strictly inside each direction
  double at_z = 0.0;
  double total_weighted = 0.0;
};

Split split_at(const Tree& t, const TreeMeasure& nu, TreePoint z) {
  Split s;
  const std::size_t k = t.directions(z).size();
  s.weighted_dist.assign(k, 0.0);
  s.open_mass.assign(k, 0.0);
  for (const auto& a : nu.atoms()) {
    const double d = t.distance(z, a.point);
    const std::size_t dir = d <= kGeomTol ? npos : t.direction_index(z, a.point);
    if (dir == npos) {
      s.at_z += a.mass;
      continue;
    }
    s.weighted_dist[dir] += a.mass * d;
    s.open_mass[dir] += a.mass;
    s.total_weighted += a.mass * d;
  }
  return s;
}

double support_diameter(const Tree& t, const TreeMeasure& nu) {
  double diam = 0.0;
  const auto atoms = nu.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      diam = std::max(diam, t.distance(atoms[i].point, atoms[j].point));
  return diam;
}

// Offset of z on edge e, given that z lies on the closed edge.
double offset_of(const Tree& t, TreePoint z, EdgeId e) {
  if (!z.is_vertex()) return z.offset();
  return t.edge(e).a == z.vertex() ? 0.0 : t.edge(e).length;
}

// Distance from z along direction d to the next atom strictly inside the edge or the far end.
double next_event(const Tree& t, const TreeMeasure& nu, TreePoint z, Direction d) {
  const double t0 = offset_of(t, z, d.edge);
  const double end = d.toward_b ? t.edge(d.edge).length : 0.0;
  double best = std::abs(end - t0);
  for (const auto& a : nu.atoms()) {
    if (a.point.is_vertex() || a.point.edge() != d.edge) continue;
    const double s = d.toward_b ? a.point.offset() - t0 : t0 - a.point.offset();
    if (s > kGeomTol) best = std::min(best, s);
  }
  return best;
}

TreePoint step(const Tree& t, TreePoint z, Direction d, double s) {
  const double t0 = offset_of(t, z, d.edge);
  return t.at(d.edge, d.toward_b ? t0 + s : t0 - s);
}

double mass_in(const Tree& t, const TreeMeasure& nu, const Subtree& part) {
  double m = 0.0;
  for (const auto& a : nu.atoms())
    if (part.contains(t, a.point)) m += a.mass;
  return m;
}

}  // namespace

std::vector<double> directional_imbalances(const Tree& t, const TreeMeasure& nu, TreePoint z) {
  z = t.canonical(z);
  const Split s = split_at(t, nu, z);
  std::vector<double> out(s.weighted_dist.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = 2.0 * s.weighted_dist[k] - s.total_weighted;
  return out;
}

double directional_imbalance(const Tree& t, const TreeMeasure& nu, TreePoint z,
                             const Subtree& component) {
  z = t.canonical(z);
  const auto comps = t.components_at(z);
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (comps[k].approx_equal(component)) return directional_imbalances(t, nu, z)[k];
  throw InputError("subtree is not a component at the given point");
}

double frechet_objective(const Tree& t, const TreeMeasure& nu, TreePoint x) {
  x = t.canonical(x);
  double f = 0.0;
  for (const auto& a : nu.atoms()) {
    const double d = t.distance(x, a.point);
    f += a.mass * d * d;
  }
  return f;
}

double verify_sturm(const Tree& t, const TreeMeasure& nu, TreePoint z) {
  const auto imb = directional_imbalances(t, nu, z);
  double worst = 0.0;
  for (double c : imb) worst = std::max(worst, c);
  return worst;
}

BarycenterResult tree_barycenter(const Tree& t, const TreeMeasure& nu) {
  if (nu.size() == 0) throw InputError("barycenter of an empty measure");
  const double m = nu.total_mass();
  const double scale = m * support_diameter(t, nu);
  BarycenterResult res;
  res.tolerance = 1e-9 * scale;
  TreePoint z = nu.atoms().front().point;
  const std::size_t cap = 4 * (t.vertex_count() + nu.size()) + 16;
  // Between events F' is linear with slope 2m, so the walk either lands on
  // the zero of F' or reaches the next atom or vertex.
  for (; res.steps < cap; ++res.steps) {
    const auto imb = directional_imbalances(t, nu, z);
    if (imb.empty()) break;
    const auto it = std::max_element(imb.begin(), imb.end());
    if (*it <= 1e-12 * scale) break;
    const Direction d = t.directions(z)[static_cast<std::size_t>(it - imb.begin())];
    const double s_event = next_event(t, nu, z, d);
    const double s_star = *it / m;
    z = step(t, z, d, s_star < s_event - kGeomTol ? s_star : s_event);
  }
  res.point = z;
  res.objective = frechet_objective(t, nu, z);
  res.max_violation = verify_sturm(t, nu, z);
  return res;
}

std::vector<double> real_barycenter(const LineMeasure& nu) {
  std::vector<double> c(nu.dim(), 0.0);
  for (std::size_t i = 0; i < nu.size(); ++i)
    for (std::size_t k = 0; k < nu.dim(); ++k) c[k] += nu.mass(i) * nu.position(i)[k];
  for (double& x : c) x /= nu.total_mass();
  return c;
}

MedianResult tree_median(const Tree& t, const TreeMeasure& nu) {
  if (nu.size() == 0) throw InputError("median of an empty measure");
  const double m = nu.total_mass();
  const double thr = m / 3.0 - mass_slack(m);
  TreePoint z = nu.atoms().front().point;
  const std::size_t cap = 4 * (t.vertex_count() + nu.size()) + 16;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    const Split s = split_at(t, nu, z);
    const std::size_t k = s.open_mass.size();
    std::vector<std::size_t> big;
    for (std::size_t j = 0; j < k; ++j)
      if (s.at_z + s.open_mass[j] >= thr) big.push_back(j);
    const double open_total = std::accumulate(s.open_mass.begin(), s.open_mass.end(), 0.0);

    std::vector<char> in_a(k, 0);
    bool decided = true;
    if (big.size() >= 2) {
      in_a[big[0]] = 1;
    } else if (big.empty()) {
      std::vector<std::size_t> order(k);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return s.open_mass[x] > s.open_mass[y]; });
      double acc = s.at_z;
      for (std::size_t j : order) {
        if (acc >= thr) break;
        in_a[j] = 1;
        acc += s.open_mass[j];
      }
    } else if (s.at_z + open_total - s.open_mass[big[0]] >= thr) {
      in_a[big[0]] = 1;
    } else {
      decided = false;
    }

    if (decided) {
      const auto comps = t.components_at(z);
      std::vector<Subtree> side_a, side_b;
      for (std::size_t j = 0; j < k; ++j) (in_a[j] ? side_a : side_b).push_back(comps[j]);
      MedianResult res;
      res.point = z;
      res.part_a = side_a.empty() ? Subtree::point(t, z) : subtree_union(t, side_a);
      res.part_b = side_b.empty() ? Subtree::point(t, z) : subtree_union(t, side_b);
      res.mass_a = mass_in(t, nu, res.part_a);
      res.mass_b = mass_in(t, nu, res.part_b);
      return res;
    }
    const Direction d = t.directions(z)[big[0]];
    z = step(t, z, d, next_event(t, nu, z, d));
  }
  throw std::logic_error("median walk did not settle");
}

// ---------------------------------------------------------------- signed distance

SignedDistance::SignedDistance(const Tree& t, TreePoint center, std::size_t direction,
                               bool median_at_center)
    : tree_(&t),
      center_(t.canonical(center)),
      direction_(direction),
      median_at_center_(median_at_center) {}

double SignedDistance::operator()(TreePoint w) const {
  w = tree_->canonical(w);
  const double d = tree_->distance(center_, w);
  if (d <= kGeomTol) return 0.0;
  return tree_->direction_index(center_, w) == direction_ ? d : -d;
}

LipschitzFunction SignedDistance::on_atoms(const TreeMeasure& nu) const {
  std::vector<double> values;
  for (const auto& a : nu.atoms()) values.push_back((*this)(a.point));
  return LipschitzFunction::validated(atom_space(*tree_, nu), std::move(values));
}

SignedDistance phi_nu(const Tree& t, const TreeMeasure& nu, const MedianResult& median,
                      const BarycenterResult& barycenter,
                      std::optional<std::size_t> forced_direction) {
  const TreePoint c = t.canonical(barycenter.point);
  const std::size_t k = t.directions(c).size();
  if (k == 0) return SignedDistance(t, c, npos, true);
  if (t.distance(c, median.point) > kGeomTol)
    return SignedDistance(t, c, t.direction_index(c, median.point), false);
  if (forced_direction) {
    if (*forced_direction >= k) throw InputError("forced direction out of range");
    return SignedDistance(t, c, *forced_direction, true);
  }
  const Split s = split_at(t, nu, c);
  const auto heaviest = std::max_element(s.open_mass.begin(), s.open_mass.end());
  return SignedDistance(t, c, static_cast<std::size_t>(heaviest - s.open_mass.begin()), true);
}

}  // namespace treeconc
