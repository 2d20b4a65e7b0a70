// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <algorithm>
#include <cmath>
#include <limits>

#include "power.hpp"
#include "treeconc/kernels.hpp"

namespace treeconc::kernels::scalar {
namespace {

using detail::nonneg_pow;
using detail::small_integer_power;

double pair_power_sum(std::span<const double> w, std::span<const double> dist, double p) {
  const std::size_t n = w.size();
  const int ip = small_integer_power(p);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = dist.data() + i * n;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += w[j] * nonneg_pow(row[j], p, ip);
    total += w[i] * acc;
  }
  return total;
}

double weighted_abs_power(std::span<const double> w, std::span<const double> v, double x,
                          double p) {
  const int ip = small_integer_power(p);
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * nonneg_pow(std::abs(x - v[j]), p, ip);
  return acc;
}

double abs_diff_power_sum(std::span<const double> w, std::span<const double> x, double p) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * weighted_abs_power(w, x, x[i], p);
  return total;
}

double lipschitz_excess(std::span<const double> f, std::span<const double> dist) {
  const std::size_t n = f.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = dist.data() + i * n;
    for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(f[i] - f[j]) - row[j]);
  }
  return worst;
}

void min_plus_accumulate(std::span<double> out, std::span<const double> row, double offset) {
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = std::min(out[x], offset + row[x]);
}

std::pair<double, double> lipschitz_interval(std::span<const double> f,
                                             std::span<const double> row, std::size_t skip) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j == skip) continue;
    lo = std::max(lo, f[j] - row[j]);
    hi = std::min(hi, f[j] + row[j]);
  }
  return {lo, hi};
}

constexpr Table kTable{pair_power_sum,   abs_diff_power_sum,  weighted_abs_power,
                       lipschitz_excess, min_plus_accumulate, lipschitz_interval};

}  // namespace

const Table& table() { return kTable; }

}  // namespace treeconc::kernels::scalar
