// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Finite simplicial trees viewed as R-trees: points may sit anywhere on an
// edge, distances are geodesic.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeconc/common.hpp"

namespace treeconc {

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Edge {
  VertexId a;
  VertexId b;
  double length;
};

/// A vertex, or a position on an edge measured from its `a` endpoint.
/// Canonical points on an edge have offset strictly inside (0, length).
class TreePoint {
 public:
  TreePoint() = default;
  static TreePoint at_vertex(VertexId v) { return TreePoint(v, 0.0, false); }
  static TreePoint on_edge(EdgeId e, double offset) { return TreePoint(e, offset, true); }

  bool is_vertex() const { return !on_edge_; }
  VertexId vertex() const { return index_; }
  EdgeId edge() const { return index_; }
  double offset() const { return offset_; }

  friend bool operator==(const TreePoint&, const TreePoint&) = default;

 private:
  TreePoint(std::size_t index, double offset, bool on_edge)
      : index_(index), offset_(offset), on_edge_(on_edge) {}
  std::size_t index_ = 0;
  double offset_ = 0.0;
  bool on_edge_ = false;
};

/// A stretch of one edge walked from offset `from` to offset `to`.
struct GeodesicPiece {
  EdgeId edge;
  double from;
  double to;
};

/// Leaving a point along `edge`, toward its `b` end when `toward_b`.
struct Direction {
  EdgeId edge;
  bool toward_b;
  friend bool operator==(const Direction&, const Direction&) = default;
};

struct Interval {
  double lo;
  double hi;
};

class Tree;

/// Closed convex subset: per-edge closed intervals plus vertex membership.
class Subtree {
 public:
  Subtree() = default;
  /// Empty subset sized for `t`.
  explicit Subtree(const Tree& t);
  static Subtree whole(const Tree& t);
  static Subtree point(const Tree& t, TreePoint p);

  bool empty() const;
  bool contains(const Tree& t, TreePoint p, double tol = kGeomTol) const;
  bool contains_vertex(VertexId v) const { return v < vertices_.size() && vertices_[v]; }
  std::optional<Interval> edge_interval(EdgeId e) const;
  std::optional<TreePoint> any_point(const Tree& t) const;
  double length(const Tree& t) const;
  bool approx_equal(const Subtree& other, double tol = 1e-9) const;

  void include_vertex(VertexId v);
  /// Extends the part on `e` to the hull of what is there and `iv`.
  void include_interval(EdgeId e, Interval iv);
  /// Snaps near-endpoint intervals onto vertices and fills edges whose ends are both inside.
  void normalize(const Tree& t, double tol = kGeomTol);

  friend std::optional<Subtree> subtree_intersection(const Tree&, const Subtree&, const Subtree&);

 private:
  std::vector<std::optional<Interval>> edges_;
  std::vector<char> vertices_;
};

class Tree {
 public:
  /// Single vertex labelled "0".
  Tree();
  Tree(std::vector<std::string> labels, std::vector<Edge> edges);
  /// Vertices 0..k along a path with the given edge lengths.
  static Tree path(std::span<const double> lengths);
  /// Center 0 joined to leaves 1..k.
  static Tree star(std::span<const double> lengths);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::optional<VertexId> find_vertex(const std::string& label) const;
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;
  std::span<const EdgeId> incident(VertexId v) const { return adj_.at(v); }
  VertexId other_end(EdgeId e, VertexId v) const;
  double total_length() const;

  /// Throws InputError on a point that does not belong to this tree.
  void validate(TreePoint p) const;
  /// Validates and snaps offsets within `tol` of an endpoint onto that vertex.
  TreePoint canonical(TreePoint p, double tol = kGeomTol) const;
  bool same_point(TreePoint p, TreePoint q, double tol = kGeomTol) const;

  double vertex_distance(VertexId u, VertexId v) const;
  double distance(TreePoint p, TreePoint q) const;
  std::vector<double> distances_from(TreePoint p) const;
  std::vector<GeodesicPiece> geodesic(TreePoint p, TreePoint q) const;
  /// Point at distance `s` from p along the geodesic to q, clamped to [0, d(p, q)].
  TreePoint point_along(TreePoint p, TreePoint q, double s) const;
  TreePoint at(EdgeId e, double offset) const { return canonical(TreePoint::on_edge(e, offset)); }
  TreePoint point_on_piece(const GeodesicPiece& piece, double offset) const;

  std::vector<Direction> directions(TreePoint z) const;
  /// Index into directions(z) of the first step from z toward w; npos when w is z.
  std::size_t direction_index(TreePoint z, TreePoint w) const;
  /// Closures of the components of T \ {z}, aligned with directions(z).
  std::vector<Subtree> components_at(TreePoint z) const;

 private:
  struct Anchor {
    VertexId v;
    double d;
  };
  std::vector<Anchor> anchors(TreePoint p) const;
  /// Offset of p on edge e if p lies on the closed edge, else nullopt.
  std::optional<double> offset_on(TreePoint p, EdgeId e) const;
  std::optional<EdgeId> shared_edge(TreePoint p, TreePoint q) const;
  /// Edges of the vertex path u -> v in walking order.
  std::vector<EdgeId> vertex_path(VertexId u, VertexId v) const;
  void collect_side(VertexId start, EdgeId banned, Subtree& out) const;

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::size_t> level_;
};

double tree_distance(const Tree& t, TreePoint p, TreePoint q);
std::vector<Subtree> components_at(const Tree& t, TreePoint z);
TreePoint metric_projection(const Tree& t, const Subtree& s, TreePoint p);
Subtree ball_subtree(const Tree& t, TreePoint center, double radius);
std::optional<Subtree> subtree_intersection(const Tree& t, const Subtree& a, const Subtree& b);
/// Smallest subtree holding all points; throws on an empty list.
Subtree spanning_subtree(const Tree& t, std::span<const TreePoint> points);
/// Union of convex pieces that pairwise touch or share a point; used for median parts.
Subtree subtree_union(const Tree& t, std::span<const Subtree> parts);

}  // namespace treeconc
