// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace treeconc {

/// Raised for malformed or out-of-contract inputs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Absolute snapping tolerance for tree positions.
inline constexpr double kGeomTol = 1e-12;
/// Slack on mass thresholds, relative to total mass. Breakpoints resolve to ">=".
inline constexpr double kMassTol = 1e-12;
/// Allowed excess over the Lipschitz constant when validating maps.
inline constexpr double kLipschitzTol = 1e-9;

using Rng = std::mt19937_64;

}  // namespace treeconc
