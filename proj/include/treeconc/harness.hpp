// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Instance generators, the inequality checks run over them, and the
// family report used to watch concentration as a space grows.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "treeconc/location.hpp"
#include "treeconc/observable.hpp"

namespace treeconc {

// ---------------------------------------------------------------- generators

struct InstanceSpec {
  std::string generator;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::string name() const;
  double param(const std::string& key, double fallback) const;
};

struct Instance {
  std::string name;
  MMSpace space;
  std::optional<Tree> tree;
  std::optional<TreeMeasure> measure;  // only for "tree"; space is then its atom space
  int hypercube_dim = 0;               // > 0 when the space is a hypercube indexed by bitmask
  bool hypercube_normalized = false;
};

/// Generators: hypercube(n, normalized), two-point(n), path(k), cloud(d, k),
/// graph(k, wmax), tree(edges, atoms). Same spec, same instance.
Instance generate(const InstanceSpec& spec);

/// Exact separation for the instance's space, using the hypercube rule when it applies.
SeparationFn separation_for(const Instance& inst);

/// Exact Sep on {0,1}^n with uniform mass: initial segments of the simplicial
/// order minimize every neighbourhood size for their cardinality.
SeparationResult hypercube_separation(int n, bool normalized, double kappa1, double kappa2);
MMSpace hypercube_space(int n, bool normalized);

Tree random_tree(Rng& rng, std::size_t edges, double min_len = 0.2, double max_len = 2.0);
TreeMeasure random_tree_measure(const Tree& t, Rng& rng, std::size_t atoms);
/// Shortest-path metric of a random connected graph with integer weights in [1, wmax].
MMSpace random_graph_metric(Rng& rng, std::size_t k, int wmax);

// ---------------------------------------------------------------- checks

struct CheckRecord {
  std::string instance;
  std::string inequality;
  std::string anchor;  // the inequality written out
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
};

/// Side-by-side values of two upper bounds for the same quantity; data only.
struct BoundComparison {
  std::string instance;
  double kappa = 0.0;
  double median_bound = 0.0;  // 2 Sep(X; m/3, kappa/2)
  double line_bound = 0.0;    // 2 Sep(X; kappa/3, kappa/3) + 4 ObsDiam_R(X; -kappa)
};

struct CheckReport {
  std::vector<CheckRecord> records;
  std::vector<BoundComparison> comparisons;
  double seconds = 0.0;
  std::uint64_t seed = 0;

  bool all_pass() const;
  std::size_t failures() const;
  void append(CheckReport&& other);
};

struct CheckOptions {
  std::vector<double> kappa_fractions{0.05, 0.1, 0.2, 1.0 / 3.0, 0.45};
  std::vector<double> p_grid{1.0, 2.0, 3.0};
  double rel_tol = 1e-9;
  WitnessOptions witness;
};

/// Location and concentration inequalities for one tree measure.
void check_measure_inequalities(const Tree& t, const TreeMeasure& nu, const std::string& instance,
                                const CheckOptions& opts, CheckReport& out);

/// Per-space bounds shared by every map checked against that space.
struct SpaceBounds {
  double mass = 0.0;
  std::vector<double> kappas;
  std::vector<double> sep_median;    // Sep(X; m/3, kappa/2)
  std::vector<double> sep_third;     // Sep(X; kappa/3, kappa/3)
  std::vector<double> sep_heavy;     // Sep(X; m-kappa, m-kappa)
  std::vector<double> obsdiam_upper;
  std::vector<double> obscrad_upper;
  std::vector<double> p_grid;
  std::vector<double> obslpvar_upper;
};

SpaceBounds space_bounds(const MMSpace& x, const SeparationFn& sep, const CheckOptions& opts);

/// Tree-valued observable inequalities for maps X -> T.
void check_map_inequalities(const MMSpace& x, const Tree& t, std::span<const LipschitzTreeMap> maps,
                            const std::string& instance, const SpaceBounds& bounds,
                            const CheckOptions& opts, CheckReport& out);

std::string report_csv(const CheckReport& r);

// ---------------------------------------------------------------- family report

struct LevyRow {
  std::string instance;
  std::size_t points = 0;
  double sep = 0.0;
  bool sep_exact = true;
  BoundEstimate obsdiam;
  BoundEstimate obscrad;
  BoundEstimate obslpvar;
};

std::vector<LevyRow> levy_report(const std::vector<InstanceSpec>& family, double kappa, double p,
                                 const WitnessOptions& opts);
std::string levy_csv(const std::vector<LevyRow>& rows);
/// Line chart of Sep and the ObsDiam bounds against the row index.
std::string levy_svg(const std::vector<LevyRow>& rows, const std::string& title);

// ---------------------------------------------------------------- parallelism

/// Seed for the i-th task of a run seeded with `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i);

/// Runs body(i) for i in [0, n) on a small thread pool. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace treeconc
