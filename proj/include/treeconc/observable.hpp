// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Two-sided estimates of the observable invariants of an mm-space X, which
// are suprema over all 1-Lipschitz f: X -> R of a functional of f_* mu.
// Lower bounds come from explicit witnesses; upper bounds are proven
// inequalities evaluated exactly.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treeconc/measures.hpp"

namespace treeconc {

struct BoundEstimate {
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> witness;  // 1-Lipschitz values attaining `lower`
  std::string lower_source;
  std::string upper_source;
};

struct WitnessOptions {
  std::size_t mcshane_sets = 64;
  std::size_t restarts = 16;
  std::size_t max_sweeps = 40;
  /// Coordinate ascent is skipped on larger spaces.
  std::size_t ascent_max_points = 512;
  /// Distance-to-a-point witnesses use at most this many base points.
  std::size_t max_base_points = 256;
  /// Spaces up to this size get the exact obsdiam value.
  std::size_t exact_max_points = 6;
  std::uint64_t seed = 0;
};

/// Separation of the space being estimated, for spaces with a faster exact rule.
using SeparationFn = std::function<SeparationResult(double, double)>;

BoundEstimate obsdiam_R(const MMSpace& x, double kappa, const WitnessOptions& opts = {},
                        const SeparationFn& sep = {});
BoundEstimate obscrad_R(const MMSpace& x, double kappa, const WitnessOptions& opts = {});
BoundEstimate obslpvar_R(const MMSpace& x, double p, const WitnessOptions& opts = {});

struct ExactObsDiam {
  double value = 0.0;
  std::vector<double> witness;
};

/// Exact ObsDiam on the line by a linear program per ordering of the
/// points' images. At most 8 points.
ExactObsDiam obsdiam_exact(const MMSpace& x, double kappa);

/// f(x) = min over a in A of values[a] + d(x, a). Throws if `values` is not
/// 1-Lipschitz on A.
LipschitzFunction mcshane_extension(const MMSpace& x, std::span<const std::size_t> a,
                                    std::span<const double> values);

TreePoint random_tree_point(const Tree& t, Rng& rng);

/// Places points one at a time at the projection of a random target onto
/// the intersection of the balls allowed by the points already placed.
LipschitzTreeMap sample_lipschitz_tree_map(const MMSpace& x, const Tree& t, Rng& rng);

/// Dense simplex for max c.x subject to A x <= b, x >= 0 with b >= 0.
/// Returns the optimum and fills `solution`; infinity when unbounded.
double solve_lp(const std::vector<std::vector<double>>& a, std::span<const double> b,
                std::span<const double> c, std::vector<double>& solution);

}  // namespace treeconc
