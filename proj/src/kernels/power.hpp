// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#pragma once

#include <cmath>

namespace treeconc::kernels::detail {

/// 0 for non-integral p or p outside 1..4, otherwise p.
inline int small_integer_power(double p) {
  if (p == 1.0) return 1;
  if (p == 2.0) return 2;
  if (p == 3.0) return 3;
  if (p == 4.0) return 4;
  return 0;
}

/// |x|^p for x >= 0.
inline double nonneg_pow(double x, double p, int ip) {
  switch (ip) {
    case 1: return x;
    case 2: return x * x;
    case 3: return x * x * x;
    case 4: {
      const double s = x * x;
      return s * s;
    }
    default: return std::pow(x, p);
  }
}

}  // namespace treeconc::kernels::detail
