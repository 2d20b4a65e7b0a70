// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Finite measures on trees, on R^d and on abstract metric spaces, plus the
// concentration functionals evaluated on them.
//
// Mass-threshold arguments named `kappa` are the mass one may discard:
// partial_diameter(nu, kappa) is the smallest diameter of a set carrying at
// least m - kappa, central_radius likewise. separation takes the two masses
// each side must carry.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treeconc/rtree.hpp"

namespace treeconc {

/// Absolute slack used against mass thresholds for a space of total mass m.
inline double mass_slack(double m) { return kMassTol * (m > 1.0 ? m : 1.0); }

class MMSpace {
 public:
  enum class Check { full, basic };

  MMSpace() = default;
  /// Row-major n-by-n distances. `full` also checks the triangle inequality.
  MMSpace(std::vector<double> dist, std::vector<double> mass, Check check = Check::full);
  static MMSpace from_rows(const std::vector<std::vector<double>>& rows, std::vector<double> mass,
                           Check check = Check::full);

  std::size_t size() const { return mass_.size(); }
  double d(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  std::span<const double> row(std::size_t i) const {
    return {dist_.data() + i * size(), size()};
  }
  std::span<const double> dist() const { return dist_; }
  double mass(std::size_t i) const { return mass_[i]; }
  std::span<const double> masses() const { return mass_; }
  double total_mass() const { return total_; }
  double diameter() const;
  double min_positive_distance() const;
  MMSpace restrict_to(std::span<const std::size_t> idx) const;

 private:
  std::vector<double> dist_;
  std::vector<double> mass_;
  double total_ = 0.0;
};

struct TreeAtom {
  TreePoint point;
  double mass;
};

class TreeMeasure {
 public:
  TreeMeasure() = default;
  /// Canonicalizes points; rejects duplicates and non-positive masses.
  TreeMeasure(const Tree& t, std::vector<TreeAtom> atoms);
  /// Like the constructor but sums atoms that land on the same point.
  static TreeMeasure merged(const Tree& t, std::vector<TreeAtom> atoms);

  std::span<const TreeAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const { return total_; }
  std::vector<TreePoint> points() const;
  std::vector<double> masses() const;

 private:
  std::vector<TreeAtom> atoms_;
  double total_ = 0.0;
};

class LineMeasure {
 public:
  LineMeasure() = default;
  /// `positions` holds size*dim coordinates, atom-major.
  LineMeasure(std::size_t dim, std::vector<double> positions, std::vector<double> masses);
  static LineMeasure merged(std::size_t dim, std::vector<double> positions,
                            std::vector<double> masses);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return mass_.size(); }
  std::span<const double> position(std::size_t i) const { return {pos_.data() + i * dim_, dim_}; }
  /// Coordinates of a one-dimensional measure.
  std::span<const double> coords() const { return pos_; }
  std::span<const double> masses() const { return mass_; }
  double mass(std::size_t i) const { return mass_[i]; }
  double total_mass() const { return total_; }

 private:
  std::size_t dim_ = 1;
  std::vector<double> pos_;
  std::vector<double> mass_;
  double total_ = 0.0;
};

/// 1-Lipschitz real function on the points of an MMSpace.
class LipschitzFunction {
 public:
  static LipschitzFunction validated(const MMSpace& x, std::vector<double> values,
                                     double tol = kLipschitzTol);
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// 1-Lipschitz map from the points of an MMSpace into a tree.
class LipschitzTreeMap {
 public:
  static LipschitzTreeMap validated(const MMSpace& x, const Tree& t, std::vector<TreePoint> images,
                                    double tol = kLipschitzTol);
  std::span<const TreePoint> images() const { return images_; }
  std::size_t size() const { return images_.size(); }

 private:
  std::vector<TreePoint> images_;
};

/// Distances between atoms, with the atom masses.
MMSpace atom_space(const Tree& t, const TreeMeasure& nu);
MMSpace atom_space(const LineMeasure& nu);

double vp(const MMSpace& x, double p);
double vp(const Tree& t, const TreeMeasure& nu, double p);
double vp(const LineMeasure& nu, double p);
/// V_p of f_* mu without building the pushforward.
double vp(const MMSpace& x, const LipschitzFunction& f, double p);

/// Needs a tree metric (any subset of an R-tree, including the line).
double partial_diameter_tree_metric(const MMSpace& atoms, double kappa);
/// Subset enumeration for arbitrary metrics; at most 20 points.
double partial_diameter_exhaustive(const MMSpace& atoms, double kappa);
double partial_diameter(const Tree& t, const TreeMeasure& nu, double kappa);
double partial_diameter(const LineMeasure& nu, double kappa);
/// Partial diameter of the pushforward of the space's mass by `values`.
double partial_diameter_of_values(std::span<const double> values, std::span<const double> mass,
                                  double kappa);

struct SeparationResult {
  double value = 0.0;
  std::vector<std::size_t> a;  // carries at least kappa1
  std::vector<std::size_t> b;  // carries at least kappa2
  bool exact = true;
};

struct SeparationOptions {
  /// Above this many points the result is a lower bound from ball-shaped sets.
  std::size_t max_exact_points = 20;
};

SeparationResult separation(const MMSpace& x, double kappa1, double kappa2,
                            const SeparationOptions& opts = {});
SeparationResult separation(const Tree& t, const TreeMeasure& nu, double kappa1, double kappa2,
                            const SeparationOptions& opts = {});
SeparationResult separation(const LineMeasure& nu, double kappa1, double kappa2,
                            const SeparationOptions& opts = {});
/// Separation of A and the points at distance >= t from A, maximized over t.
double separation_from_set(const MMSpace& x, std::span<const std::size_t> a, double kappa2);

double central_radius(const Tree& t, const TreeMeasure& nu, double kappa, TreePoint center);
double central_radius(const LineMeasure& nu, double kappa, std::span<const double> center);
/// Central radius of the pushforward by `values`, about `center`.
double central_radius_of_values(std::span<const double> values, std::span<const double> mass,
                                double kappa, double center);
double ball_mass(const Tree& t, const TreeMeasure& nu, TreePoint center, double radius);

LineMeasure pushforward(const MMSpace& x, const LipschitzFunction& f);
TreeMeasure pushforward(const MMSpace& x, const Tree& t, const LipschitzTreeMap& f);
/// Greedy eps-net in atom order; each atom's mass moves to a net point within eps.
TreeMeasure coarsen(const Tree& t, const TreeMeasure& nu, double eps);

}  // namespace treeconc
