// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/rtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace treeconc {

// ---------------------------------------------------------------- Subtree

Subtree::Subtree(const Tree& t)
    : edges_(t.edge_count()), vertices_(t.vertex_count(), 0) {}

Subtree Subtree::whole(const Tree& t) {
  Subtree s(t);
  for (EdgeId e = 0; e < t.edge_count(); ++e) s.edges_[e] = Interval{0.0, t.edge(e).length};
  std::fill(s.vertices_.begin(), s.vertices_.end(), 1);
  return s;
}

Subtree Subtree::point(const Tree& t, TreePoint p) {
  p = t.canonical(p);
  Subtree s(t);
  if (p.is_vertex()) {
    s.include_vertex(p.vertex());
  } else {
    s.include_interval(p.edge(), {p.offset(), p.offset()});
  }
  return s;
}

bool Subtree::empty() const {
  return std::none_of(vertices_.begin(), vertices_.end(), [](char c) { return c != 0; }) &&
         std::none_of(edges_.begin(), edges_.end(), [](const auto& iv) { return iv.has_value(); });
}

bool Subtree::contains(const Tree& t, TreePoint p, double tol) const {
  if (p.is_vertex()) return contains_vertex(p.vertex());
  const EdgeId e = p.edge();
  if (e >= edges_.size()) return false;
  const Edge& ed = t.edge(e);
  const double x = p.offset();
  if (edges_[e] && x >= edges_[e]->lo - tol && x <= edges_[e]->hi + tol) return true;
  if (x <= tol && contains_vertex(ed.a)) return true;
  if (x >= ed.length - tol && contains_vertex(ed.b)) return true;
  return false;
}

std::optional<Interval> Subtree::edge_interval(EdgeId e) const {
  return e < edges_.size() ? edges_[e] : std::nullopt;
}

std::optional<TreePoint> Subtree::any_point(const Tree& t) const {
  for (VertexId v = 0; v < vertices_.size(); ++v)
    if (vertices_[v]) return TreePoint::at_vertex(v);
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e]) return t.at(e, edges_[e]->lo);
  return std::nullopt;
}

double Subtree::length(const Tree&) const {
  double total = 0.0;
  for (const auto& iv : edges_)
    if (iv) total += iv->hi - iv->lo;
  return total;
}

bool Subtree::approx_equal(const Subtree& other, double tol) const {
  if (vertices_ != other.vertices_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& x = edges_[e];
    const auto& y = other.edges_[e];
    if (x.has_value() != y.has_value()) return false;
    if (x && (std::abs(x->lo - y->lo) > tol || std::abs(x->hi - y->hi) > tol)) return false;
  }
  return true;
}

void Subtree::include_vertex(VertexId v) { vertices_.at(v) = 1; }

void Subtree::include_interval(EdgeId e, Interval iv) {
  auto& slot = edges_.at(e);
  if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
  if (slot) {
    slot->lo = std::min(slot->lo, iv.lo);
    slot->hi = std::max(slot->hi, iv.hi);
  } else {
    slot = iv;
  }
}

void Subtree::normalize(const Tree& t, double tol) {
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = t.edge(e);
    auto& slot = edges_[e];
    if (slot) {
      slot->lo = std::clamp(slot->lo, 0.0, ed.length);
      slot->hi = std::clamp(slot->hi, 0.0, ed.length);
      if (slot->lo <= tol) {
        slot->lo = 0.0;
        vertices_[ed.a] = 1;
      }
      if (slot->hi >= ed.length - tol) {
        slot->hi = ed.length;
        vertices_[ed.b] = 1;
      }
      if (slot->hi - slot->lo <= tol && (slot->lo == 0.0 || slot->hi == ed.length)) slot.reset();
    }
  }
  // Convexity: an edge whose two ends are inside is inside.
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = t.edge(e);
    if (vertices_[ed.a] && vertices_[ed.b]) edges_[e] = Interval{0.0, ed.length};
  }
}

// ---------------------------------------------------------------- Tree

Tree::Tree() : Tree({"0"}, {}) {}

Tree::Tree(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InputError("tree needs at least one vertex");
  if (edges_.size() != n - 1) throw InputError("tree with n vertices needs n-1 edges");
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second) throw InputError("duplicate vertex label: " + l);
  }
  adj_.assign(n, {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.a >= n || ed.b >= n) throw InputError("edge endpoint out of range");
    if (ed.a == ed.b) throw InputError("self-loop edge");
    if (!std::isfinite(ed.length) || ed.length <= 0.0)
      throw InputError("edge lengths must be finite and positive");
    adj_[ed.a].push_back(e);
    adj_[ed.b].push_back(e);
  }
  parent_.assign(n, npos);
  parent_edge_.assign(n, npos);
  level_.assign(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : adj_[v]) {
      const VertexId u = other_end(e, v);
      if (seen[u]) continue;
      seen[u] = 1;
      ++reached;
      parent_[u] = v;
      parent_edge_[u] = e;
      level_[u] = level_[v] + 1;
      stack.push_back(u);
    }
  }
  if (reached != n) throw InputError("tree is disconnected or has a cycle");
}

Tree Tree::path(std::span<const double> lengths) {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i <= lengths.size(); ++i) labels.push_back(std::to_string(i));
  for (std::size_t i = 0; i < lengths.size(); ++i) edges.push_back({i, i + 1, lengths[i]});
  return Tree(std::move(labels), std::move(edges));
}

Tree Tree::star(std::span<const double> lengths) {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i <= lengths.size(); ++i) labels.push_back(std::to_string(i));
  for (std::size_t i = 0; i < lengths.size(); ++i) edges.push_back({0, i + 1, lengths[i]});
  return Tree(std::move(labels), std::move(edges));
}

std::optional<VertexId> Tree::find_vertex(const std::string& label) const {
  for (VertexId v = 0; v < labels_.size(); ++v)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

std::optional<EdgeId> Tree::find_edge(VertexId u, VertexId v) const {
  if (u >= vertex_count()) return std::nullopt;
  for (EdgeId e : adj_[u])
    if (other_end(e, u) == v) return e;
  return std::nullopt;
}

VertexId Tree::other_end(EdgeId e, VertexId v) const {
  const Edge& ed = edges_[e];
  return ed.a == v ? ed.b : ed.a;
}

double Tree::total_length() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.length;
  return s;
}

void Tree::validate(TreePoint p) const {
  if (p.is_vertex()) {
    if (p.vertex() >= vertex_count()) throw InputError("tree point names an unknown vertex");
    return;
  }
  if (p.edge() >= edge_count()) throw InputError("tree point names an unknown edge");
  const double len = edges_[p.edge()].length;
  if (!std::isfinite(p.offset()) || p.offset() < -kGeomTol || p.offset() > len + kGeomTol)
    throw InputError("edge offset outside [0, length]");
}

TreePoint Tree::canonical(TreePoint p, double tol) const {
  validate(p);
  if (p.is_vertex()) return p;
  const Edge& ed = edges_[p.edge()];
  if (p.offset() <= tol) return TreePoint::at_vertex(ed.a);
  if (p.offset() >= ed.length - tol) return TreePoint::at_vertex(ed.b);
  return p;
}

bool Tree::same_point(TreePoint p, TreePoint q, double tol) const {
  return distance(p, q) <= tol;
}

std::vector<EdgeId> Tree::vertex_path(VertexId u, VertexId v) const {
  std::vector<EdgeId> up, down;
  while (level_[u] > level_[v]) {
    up.push_back(parent_edge_[u]);
    u = parent_[u];
  }
  while (level_[v] > level_[u]) {
    down.push_back(parent_edge_[v]);
    v = parent_[v];
  }
  while (u != v) {
    up.push_back(parent_edge_[u]);
    u = parent_[u];
    down.push_back(parent_edge_[v]);
    v = parent_[v];
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

double Tree::vertex_distance(VertexId u, VertexId v) const {
  double du = 0.0, dv = 0.0;
  while (level_[u] > level_[v]) {
    du += edges_[parent_edge_[u]].length;
    u = parent_[u];
  }
  while (level_[v] > level_[u]) {
    dv += edges_[parent_edge_[v]].length;
    v = parent_[v];
  }
  while (u != v) {
    du += edges_[parent_edge_[u]].length;
    u = parent_[u];
    dv += edges_[parent_edge_[v]].length;
    v = parent_[v];
  }
  return du + dv;
}

std::vector<Tree::Anchor> Tree::anchors(TreePoint p) const {
  if (p.is_vertex()) return {{p.vertex(), 0.0}};
  const Edge& ed = edges_[p.edge()];
  return {{ed.a, p.offset()}, {ed.b, ed.length - p.offset()}};
}

std::optional<double> Tree::offset_on(TreePoint p, EdgeId e) const {
  const Edge& ed = edges_[e];
  if (p.is_vertex()) {
    if (p.vertex() == ed.a) return 0.0;
    if (p.vertex() == ed.b) return ed.length;
    return std::nullopt;
  }
  if (p.edge() == e) return p.offset();
  return std::nullopt;
}

std::optional<EdgeId> Tree::shared_edge(TreePoint p, TreePoint q) const {
  if (!p.is_vertex() && offset_on(q, p.edge())) return p.edge();
  if (!q.is_vertex() && offset_on(p, q.edge())) return q.edge();
  return std::nullopt;
}

double Tree::distance(TreePoint p, TreePoint q) const {
  if (p.is_vertex() && q.is_vertex()) return vertex_distance(p.vertex(), q.vertex());
  if (auto e = shared_edge(p, q)) return std::abs(*offset_on(p, *e) - *offset_on(q, *e));
  double best = std::numeric_limits<double>::infinity();
  for (const Anchor& x : anchors(p))
    for (const Anchor& y : anchors(q))
      best = std::min(best, x.d + vertex_distance(x.v, y.v) + y.d);
  return best;
}

std::vector<double> Tree::distances_from(TreePoint p) const {
  std::vector<double> dist(vertex_count(), std::numeric_limits<double>::infinity());
  const EdgeId banned = p.is_vertex() ? npos : p.edge();
  std::vector<VertexId> stack;
  for (const Anchor& a : anchors(p)) {
    dist[a.v] = a.d;
    stack.push_back(a.v);
  }
  std::vector<char> done(vertex_count(), 0);
  for (VertexId v : stack) done[v] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : adj_[v]) {
      if (e == banned) continue;
      const VertexId u = other_end(e, v);
      if (done[u]) continue;
      done[u] = 1;
      dist[u] = dist[v] + edges_[e].length;
      stack.push_back(u);
    }
  }
  return dist;
}

std::vector<GeodesicPiece> Tree::geodesic(TreePoint p, TreePoint q) const {
  if (p == q) return {};
  if (auto e = shared_edge(p, q)) {
    const double a = *offset_on(p, *e);
    const double b = *offset_on(q, *e);
    if (a == b) return {};
    return {{*e, a, b}};
  }
  Anchor bx{}, by{};
  double best = std::numeric_limits<double>::infinity();
  for (const Anchor& x : anchors(p))
    for (const Anchor& y : anchors(q)) {
      const double d = x.d + vertex_distance(x.v, y.v) + y.d;
      if (d < best) {
        best = d;
        bx = x;
        by = y;
      }
    }
  std::vector<GeodesicPiece> out;
  if (!p.is_vertex()) out.push_back({p.edge(), p.offset(), *offset_on(TreePoint::at_vertex(bx.v), p.edge())});
  VertexId cur = bx.v;
  for (EdgeId e : vertex_path(bx.v, by.v)) {
    const VertexId next = other_end(e, cur);
    out.push_back({e, *offset_on(TreePoint::at_vertex(cur), e), *offset_on(TreePoint::at_vertex(next), e)});
    cur = next;
  }
  if (!q.is_vertex()) out.push_back({q.edge(), *offset_on(TreePoint::at_vertex(by.v), q.edge()), q.offset()});
  return out;
}

TreePoint Tree::point_on_piece(const GeodesicPiece& piece, double offset) const {
  const double len = edges_[piece.edge].length;
  return canonical(TreePoint::on_edge(piece.edge, std::clamp(offset, 0.0, len)));
}

TreePoint Tree::point_along(TreePoint p, TreePoint q, double s) const {
  if (s <= 0.0) return p;
  double remaining = s;
  for (const GeodesicPiece& piece : geodesic(p, q)) {
    const double len = std::abs(piece.to - piece.from);
    if (remaining <= len) {
      const double sign = piece.to > piece.from ? 1.0 : -1.0;
      return point_on_piece(piece, piece.from + sign * remaining);
    }
    remaining -= len;
  }
  return q;
}

std::vector<Direction> Tree::directions(TreePoint z) const {
  std::vector<Direction> out;
  if (z.is_vertex()) {
    for (EdgeId e : adj_[z.vertex()]) out.push_back({e, edges_[e].a == z.vertex()});
  } else {
    out.push_back({z.edge(), false});
    out.push_back({z.edge(), true});
  }
  return out;
}

std::size_t Tree::direction_index(TreePoint z, TreePoint w) const {
  const auto pieces = geodesic(z, w);
  if (pieces.empty()) return npos;
  const Direction first{pieces.front().edge, pieces.front().to > pieces.front().from};
  const auto dirs = directions(z);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (dirs[i] == first) return i;
  throw std::logic_error("geodesic does not leave through a direction of its start");
}

void Tree::collect_side(VertexId start, EdgeId banned, Subtree& out) const {
  std::vector<VertexId> stack{start};
  std::vector<char> seen(vertex_count(), 0);
  seen[start] = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    out.include_vertex(v);
    for (EdgeId e : adj_[v]) {
      if (e == banned) continue;
      const VertexId u = other_end(e, v);
      if (seen[u]) continue;
      seen[u] = 1;
      out.include_interval(e, {0.0, edges_[e].length});
      stack.push_back(u);
    }
  }
}

std::vector<Subtree> Tree::components_at(TreePoint z) const {
  z = canonical(z);
  std::vector<Subtree> out;
  if (z.is_vertex()) {
    for (EdgeId e : adj_[z.vertex()]) {
      Subtree s(*this);
      s.include_vertex(z.vertex());
      s.include_interval(e, {0.0, edges_[e].length});
      collect_side(other_end(e, z.vertex()), e, s);
      s.normalize(*this);
      out.push_back(std::move(s));
    }
    return out;
  }
  const Edge& ed = edges_[z.edge()];
  Subtree toward_a(*this), toward_b(*this);
  toward_a.include_interval(z.edge(), {0.0, z.offset()});
  collect_side(ed.a, z.edge(), toward_a);
  toward_b.include_interval(z.edge(), {z.offset(), ed.length});
  collect_side(ed.b, z.edge(), toward_b);
  toward_a.normalize(*this);
  toward_b.normalize(*this);
  out.push_back(std::move(toward_a));
  out.push_back(std::move(toward_b));
  return out;
}

// ---------------------------------------------------------------- free functions

double tree_distance(const Tree& t, TreePoint p, TreePoint q) {
  return t.distance(t.canonical(p), t.canonical(q));
}

std::vector<Subtree> components_at(const Tree& t, TreePoint z) { return t.components_at(z); }

Subtree ball_subtree(const Tree& t, TreePoint center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be >= 0");
  center = t.canonical(center);
  const auto dv = t.distances_from(center);
  Subtree s(t);
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (dv[v] <= radius + kGeomTol) s.include_vertex(v);
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const Edge& ed = t.edge(e);
    if (!center.is_vertex() && center.edge() == e) {
      s.include_interval(e, {std::max(0.0, center.offset() - radius),
                             std::min(ed.length, center.offset() + radius)});
      continue;
    }
    const double da = dv[ed.a];
    const double db = dv[ed.b];
    if (da <= db) {
      if (radius >= da) s.include_interval(e, {0.0, std::min(ed.length, radius - da)});
    } else {
      if (radius >= db) s.include_interval(e, {std::max(0.0, ed.length - (radius - db)), ed.length});
    }
  }
  s.normalize(t);
  return s;
}

TreePoint metric_projection(const Tree& t, const Subtree& s, TreePoint p) {
  p = t.canonical(p);
  const auto anchor = s.any_point(t);
  if (!anchor) throw InputError("projection onto an empty subtree");
  if (s.contains(t, p)) return p;
  for (const GeodesicPiece& piece : t.geodesic(p, *anchor)) {
    const Edge& ed = t.edge(piece.edge);
    const double len = std::abs(piece.to - piece.from);
    const double sign = piece.to > piece.from ? 1.0 : -1.0;
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](double offset) {
      const double u = sign * (offset - piece.from);
      if (u >= -kGeomTol && u <= len + kGeomTol) best = std::min(best, std::max(0.0, u));
    };
    if (auto iv = s.edge_interval(piece.edge)) {
      // Closest point of [lo, hi] to `from`, measured along the walk.
      double lo_u = sign > 0 ? iv->lo - piece.from : piece.from - iv->hi;
      double hi_u = sign > 0 ? iv->hi - piece.from : piece.from - iv->lo;
      lo_u = std::max(lo_u, 0.0);
      if (lo_u <= std::min(hi_u, len) + kGeomTol) best = std::min(best, lo_u);
    }
    if (s.contains_vertex(ed.a)) consider(0.0);
    if (s.contains_vertex(ed.b)) consider(ed.length);
    if (std::isfinite(best)) return t.point_on_piece(piece, piece.from + sign * std::min(best, len));
  }
  return *anchor;
}

std::optional<Subtree> subtree_intersection(const Tree& t, const Subtree& a, const Subtree& b) {
  Subtree out(t);
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (a.contains_vertex(v) && b.contains_vertex(v)) out.include_vertex(v);
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const auto x = a.edge_interval(e);
    const auto y = b.edge_interval(e);
    if (!x || !y) continue;
    const double lo = std::max(x->lo, y->lo);
    const double hi = std::min(x->hi, y->hi);
    if (hi >= lo - kGeomTol) out.include_interval(e, {lo, std::max(lo, hi)});
  }
  out.normalize(t);
  if (out.empty()) return std::nullopt;
  return out;
}

Subtree spanning_subtree(const Tree& t, std::span<const TreePoint> points) {
  if (points.empty()) throw InputError("spanning subtree of an empty point list");
  Subtree s = Subtree::point(t, points.front());
  const TreePoint p0 = t.canonical(points.front());
  for (const TreePoint& raw : points) {
    const TreePoint q = t.canonical(raw);
    if (q.is_vertex()) s.include_vertex(q.vertex());
    else s.include_interval(q.edge(), {q.offset(), q.offset()});
    for (const GeodesicPiece& piece : t.geodesic(p0, q)) s.include_interval(piece.edge, {piece.from, piece.to});
  }
  s.normalize(t);
  return s;
}

Subtree subtree_union(const Tree& t, std::span<const Subtree> parts) {
  Subtree out(t);
  for (const Subtree& part : parts) {
    for (VertexId v = 0; v < t.vertex_count(); ++v)
      if (part.contains_vertex(v)) out.include_vertex(v);
    for (EdgeId e = 0; e < t.edge_count(); ++e)
      if (auto iv = part.edge_interval(e)) out.include_interval(e, *iv);
  }
  out.normalize(t);
  return out;
}

}  // namespace treeconc
