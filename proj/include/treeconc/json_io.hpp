// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// JSON forms used by the CLI:
//   tree     {"vertices": [id...], "edges": [[u, v, length]...]}
//   point    "v:<id>" or {"edge": [u, v], "offset": t}, t measured from u
//   measure  {"atoms": [[point, mass]...]}
//   space    {"dist": [[...]...], "mass": [...]}
// Vertex ids may be strings or integers; they are kept as strings.
#pragma once

#include <json.hpp>

#include "treeconc/harness.hpp"
#include "treeconc/location.hpp"
#include "treeconc/observable.hpp"

namespace treeconc::io {

using nlohmann::json;

Tree tree_from_json(const json& j);
json to_json(const Tree& t);

TreePoint point_from_json(const Tree& t, const json& j);
json point_to_json(const Tree& t, TreePoint p);

TreeMeasure tree_measure_from_json(const Tree& t, const json& j);
json to_json(const Tree& t, const TreeMeasure& nu);

/// Atoms are numbers or coordinate arrays of a common length.
LineMeasure line_measure_from_json(const json& j);

MMSpace space_from_json(const json& j);
json to_json(const MMSpace& x);

json to_json(const Tree& t, const Subtree& s);
json to_json(const BoundEstimate& b);
json to_json(const CheckReport& r);
json to_json(const std::vector<LevyRow>& rows);

}  // namespace treeconc::io
