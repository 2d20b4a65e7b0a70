// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Barycenters and medians of tree measures, and the signed distance that
// folds a tree measure onto the line.
#pragma once

#include <optional>
#include <vector>

#include "treeconc/measures.hpp"

namespace treeconc {

struct BarycenterResult {
  TreePoint point;
  double objective = 0.0;      // sum of m_i d(point, y_i)^2
  double max_violation = 0.0;  // largest directional imbalance at `point`
  double tolerance = 0.0;      // 1e-9 * m * diam(support)
  std::size_t steps = 0;
};

struct MedianResult {
  TreePoint point;
  Subtree part_a;
  Subtree part_b;
  double mass_a = 0.0;
  double mass_b = 0.0;
};

/// Imbalance of every direction at z, aligned with t.directions(z).
std::vector<double> directional_imbalances(const Tree& t, const TreeMeasure& nu, TreePoint z);
/// Imbalance toward `component`, which must be one of components_at(z).
double directional_imbalance(const Tree& t, const TreeMeasure& nu, TreePoint z,
                             const Subtree& component);
double frechet_objective(const Tree& t, const TreeMeasure& nu, TreePoint x);
/// Largest directional imbalance at z (0 when z has no directions).
double verify_sturm(const Tree& t, const TreeMeasure& nu, TreePoint z);
BarycenterResult tree_barycenter(const Tree& t, const TreeMeasure& nu);
std::vector<double> real_barycenter(const LineMeasure& nu);
MedianResult tree_median(const Tree& t, const TreeMeasure& nu);

/// phi(w) = +d(c, w) on the closed component at c holding the median, -d(c, w) elsewhere.
class SignedDistance {
 public:
  SignedDistance(const Tree& t, TreePoint center, std::size_t direction, bool median_at_center);

  double operator()(TreePoint w) const;
  TreePoint center() const { return center_; }
  /// Index into t.directions(center); npos for a one-point tree.
  std::size_t direction() const { return direction_; }
  bool median_at_center() const { return median_at_center_; }
  /// Values on the atoms of nu, as a function on atom_space(t, nu).
  LipschitzFunction on_atoms(const TreeMeasure& nu) const;

 private:
  const Tree* tree_;
  TreePoint center_;
  std::size_t direction_;
  bool median_at_center_;
};

/// When the median coincides with the barycenter the heaviest component is
/// used unless `forced_direction` picks another.
SignedDistance phi_nu(const Tree& t, const TreeMeasure& nu, const MedianResult& median,
                      const BarycenterResult& barycenter,
                      std::optional<std::size_t> forced_direction = std::nullopt);

}  // namespace treeconc
