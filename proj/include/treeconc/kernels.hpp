// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Dense numeric loops shared by the functionals. Every kernel has a scalar
// reference and, on x86-64, an AVX2 variant picked at first use. Setting
// TREECONC_SIMD=scalar in the environment forces the reference path.
#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

namespace treeconc::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
/// Throws InputError when `b` is not supported on this CPU or build.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

/// Sum over i, j of w[i] w[j] dist[i*n+j]^p for a row-major n-by-n matrix.
double pair_power_sum(std::span<const double> w, std::span<const double> dist, double p);

/// Sum over i, j of w[i] w[j] |x[i] - x[j]|^p.
double abs_diff_power_sum(std::span<const double> w, std::span<const double> x, double p);

/// Sum over j of w[j] |x - v[j]|^p.
double weighted_abs_power(std::span<const double> w, std::span<const double> v, double x,
                          double p);

/// Largest |f[i] - f[j]| - dist[i*n+j], floored at 0.
double lipschitz_excess(std::span<const double> f, std::span<const double> dist);

/// out[x] = min(out[x], offset + row[x]).
void min_plus_accumulate(std::span<double> out, std::span<const double> row, double offset);

/// (max_j f[j] - row[j], min_j f[j] + row[j]) over j != skip.
std::pair<double, double> lipschitz_interval(std::span<const double> f,
                                             std::span<const double> row, std::size_t skip);

struct Table {
  double (*pair_power_sum)(std::span<const double>, std::span<const double>, double);
  double (*abs_diff_power_sum)(std::span<const double>, std::span<const double>, double);
  double (*weighted_abs_power)(std::span<const double>, std::span<const double>, double, double);
  double (*lipschitz_excess)(std::span<const double>, std::span<const double>);
  void (*min_plus_accumulate)(std::span<double>, std::span<const double>, double);
  std::pair<double, double> (*lipschitz_interval)(std::span<const double>,
                                                  std::span<const double>, std::size_t);
};

/// Direct access to one backend's table, for equivalence tests.
const Table& table(Backend b);

namespace scalar {
const Table& table();
}
namespace avx2 {
const Table* table();  // nullptr when the build has no AVX2 unit
}

}  // namespace treeconc::kernels
