// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "power.hpp"
#include "treeconc/kernels.hpp"

namespace treeconc::kernels::avx2 {
namespace {

using detail::nonneg_pow;
using detail::small_integer_power;

inline __m256d vpow(__m256d x, int ip) {
  switch (ip) {
    case 1: return x;
    case 2: return _mm256_mul_pd(x, x);
    case 3: return _mm256_mul_pd(_mm256_mul_pd(x, x), x);
    default: {
      const __m256d s = _mm256_mul_pd(x, x);
      return _mm256_mul_pd(s, s);
    }
  }
}

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

double weighted_row_power(const double* w, const double* row, std::size_t n, double p, int ip) {
  std::size_t j = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; j + 4 <= n; j += 4) {
    const __m256d d = vpow(_mm256_loadu_pd(row + j), ip);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + j), d, acc);
  }
  double tail = 0.0;
  for (; j < n; ++j) tail += w[j] * nonneg_pow(row[j], p, ip);
  return hsum(acc) + tail;
}

double pair_power_sum(std::span<const double> w, std::span<const double> dist, double p) {
  const int ip = small_integer_power(p);
  if (ip == 0) return scalar::table().pair_power_sum(w, dist, p);
  const std::size_t n = w.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    total += w[i] * weighted_row_power(w.data(), dist.data() + i * n, n, p, ip);
  return total;
}

double weighted_abs_power(std::span<const double> w, std::span<const double> v, double x,
                          double p) {
  const int ip = small_integer_power(p);
  if (ip == 0) return scalar::table().weighted_abs_power(w, v, x, p);
  const std::size_t n = w.size();
  const __m256d vx = _mm256_set1_pd(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = vpow(vabs(_mm256_sub_pd(vx, _mm256_loadu_pd(v.data() + j))), ip);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + j), d, acc);
  }
  double tail = 0.0;
  for (; j < n; ++j) tail += w[j] * nonneg_pow(std::abs(x - v[j]), p, ip);
  return hsum(acc) + tail;
}

double abs_diff_power_sum(std::span<const double> w, std::span<const double> x, double p) {
  if (small_integer_power(p) == 0) return scalar::table().abs_diff_power_sum(w, x, p);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * weighted_abs_power(w, x, x[i], p);
  return total;
}

double lipschitz_excess(std::span<const double> f, std::span<const double> dist) {
  const std::size_t n = f.size();
  __m256d worst = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = dist.data() + i * n;
    const __m256d fi = _mm256_set1_pd(f[i]);
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const __m256d diff = vabs(_mm256_sub_pd(fi, _mm256_loadu_pd(f.data() + j)));
      worst = _mm256_max_pd(worst, _mm256_sub_pd(diff, _mm256_loadu_pd(row + j)));
    }
    for (; j < n; ++j) tail = std::max(tail, std::abs(f[i] - f[j]) - row[j]);
  }
  return std::max(hmax(worst), tail);
}

void min_plus_accumulate(std::span<double> out, std::span<const double> row, double offset) {
  const std::size_t n = out.size();
  const __m256d off = _mm256_set1_pd(offset);
  std::size_t x = 0;
  for (; x + 4 <= n; x += 4) {
    const __m256d cand = _mm256_add_pd(off, _mm256_loadu_pd(row.data() + x));
    _mm256_storeu_pd(out.data() + x, _mm256_min_pd(_mm256_loadu_pd(out.data() + x), cand));
  }
  for (; x < n; ++x) out[x] = std::min(out[x], offset + row[x]);
}

void interval_range(const double* f, const double* row, std::size_t begin, std::size_t end,
                    double& lo, double& hi) {
  __m256d vlo = _mm256_set1_pd(lo);
  __m256d vhi = _mm256_set1_pd(hi);
  std::size_t j = begin;
  for (; j + 4 <= end; j += 4) {
    const __m256d fj = _mm256_loadu_pd(f + j);
    const __m256d r = _mm256_loadu_pd(row + j);
    vlo = _mm256_max_pd(vlo, _mm256_sub_pd(fj, r));
    vhi = _mm256_min_pd(vhi, _mm256_add_pd(fj, r));
  }
  lo = hmax(vlo);
  hi = hmin(vhi);
  for (; j < end; ++j) {
    lo = std::max(lo, f[j] - row[j]);
    hi = std::min(hi, f[j] + row[j]);
  }
}

std::pair<double, double> lipschitz_interval(std::span<const double> f,
                                             std::span<const double> row, std::size_t skip) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const std::size_t n = f.size();
  const std::size_t cut = std::min(skip, n);
  interval_range(f.data(), row.data(), 0, cut, lo, hi);
  if (cut < n) interval_range(f.data(), row.data(), cut + 1, n, lo, hi);
  return {lo, hi};
}

constexpr Table kTable{pair_power_sum,   abs_diff_power_sum,  weighted_abs_power,
                       lipschitz_excess, min_plus_accumulate, lipschitz_interval};

}  // namespace

const Table* table() { return &kTable; }

}  // namespace treeconc::kernels::avx2
