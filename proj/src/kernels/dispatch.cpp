// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <atomic>
#include <cstdlib>
#include <string>

#include "treeconc/common.hpp"
#include "treeconc/kernels.hpp"

namespace treeconc::kernels {

#ifndef TREECONC_HAVE_AVX2_UNIT
namespace avx2 {
const Table* table() { return nullptr; }
}  // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("TREECONC_SIMD"); env && std::string(env) == "scalar")
    return Backend::scalar;
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

const Table& active() { return table(current().load(std::memory_order_relaxed)); }

}  // namespace

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return avx2::table() != nullptr && cpu_has_avx2();
}

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw InputError("kernel backend not available on this machine");
  current().store(b);
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

const Table& table(Backend b) {
  if (b == Backend::avx2 && backend_available(b)) return *avx2::table();
  return scalar::table();
}

double pair_power_sum(std::span<const double> w, std::span<const double> dist, double p) {
  return active().pair_power_sum(w, dist, p);
}
double abs_diff_power_sum(std::span<const double> w, std::span<const double> x, double p) {
  return active().abs_diff_power_sum(w, x, p);
}
double weighted_abs_power(std::span<const double> w, std::span<const double> v, double x,
                          double p) {
  return active().weighted_abs_power(w, v, x, p);
}
double lipschitz_excess(std::span<const double> f, std::span<const double> dist) {
  return active().lipschitz_excess(f, dist);
}
void min_plus_accumulate(std::span<double> out, std::span<const double> row, double offset) {
  active().min_plus_accumulate(out, row, offset);
}
std::pair<double, double> lipschitz_interval(std::span<const double> f,
                                             std::span<const double> row, std::size_t skip) {
  return active().lipschitz_interval(f, row, skip);
}

}  // namespace treeconc::kernels
