// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Wasserstein-1 distances. All three entry points return the transport cost
// for the given masses (m times the distance between the normalized
// measures); the two measures must carry the same total mass.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treeconc/measures.hpp"

namespace treeconc {

/// Edge-cut formula on the tree refined at every atom.
double w1_tree(const Tree& t, const TreeMeasure& mu, const TreeMeasure& nu);
/// CDF formula; one-dimensional measures only.
double w1_line(const LineMeasure& mu, const LineMeasure& nu);

struct TransportEntry {
  std::size_t from;
  std::size_t to;
  double mass;
};

struct TransportPlan {
  double cost = 0.0;
  std::vector<TransportEntry> entries;
};

/// Exact transportation simplex with Bland's rule on a rows-by-cols cost
/// matrix. Up to 64 atoms per side.
TransportPlan w1_oracle(std::span<const double> cost, std::span<const double> supply,
                        std::span<const double> demand);
/// Oracle on tree measures using tree distances as costs.
TransportPlan w1_oracle(const Tree& t, const TreeMeasure& mu, const TreeMeasure& nu);

}  // namespace treeconc
