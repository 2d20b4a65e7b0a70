// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/json_io.hpp"

#include <cmath>

namespace treeconc::io {
namespace {

std::string vertex_id(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("vertex ids must be strings or integers");
}

VertexId lookup(const Tree& t, const json& j) {
  const auto id = vertex_id(j);
  const auto v = t.find_vertex(id);
  if (!v) throw InputError("unknown vertex '" + id + "'");
  return *v;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

Tree tree_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw InputError("tree JSON needs \"vertices\" and \"edges\"");
  std::vector<std::string> labels;
  for (const auto& v : j.at("vertices")) labels.push_back(vertex_id(v));
  auto index = [&](const json& v) -> VertexId {
    const auto id = vertex_id(v);
    const auto it = std::find(labels.begin(), labels.end(), id);
    if (it == labels.end()) throw InputError("edge endpoint '" + id + "' is not a vertex");
    return static_cast<VertexId>(it - labels.begin());
  };
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw InputError("edges are [u, v, length]");
    edges.push_back({index(e[0]), index(e[1]), number(e[2], "edge length")});
  }
  return Tree(std::move(labels), std::move(edges));
}

json to_json(const Tree& t) {
  json j;
  j["vertices"] = json::array();
  for (VertexId v = 0; v < t.vertex_count(); ++v) j["vertices"].push_back(t.label(v));
  j["edges"] = json::array();
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const Edge& ed = t.edge(e);
    j["edges"].push_back({t.label(ed.a), t.label(ed.b), ed.length});
  }
  return j;
}

TreePoint point_from_json(const Tree& t, const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.rfind("v:", 0) != 0) throw InputError("vertex points are written \"v:<id>\"");
    return TreePoint::at_vertex(lookup(t, json(s.substr(2))));
  }
  if (!j.is_object() || !j.contains("edge") || !j.contains("offset"))
    throw InputError("edge points are {\"edge\": [u, v], \"offset\": t}");
  const auto& uv = j.at("edge");
  if (!uv.is_array() || uv.size() != 2) throw InputError("\"edge\" must be [u, v]");
  const VertexId u = lookup(t, uv[0]), v = lookup(t, uv[1]);
  const auto e = t.find_edge(u, v);
  if (!e) throw InputError("no edge between the given vertices");
  const double len = t.edge(*e).length;
  const double off = number(j.at("offset"), "offset");
  if (!(off >= -kGeomTol && off <= len + kGeomTol)) throw InputError("offset outside the edge");
  const double from_a = t.edge(*e).a == u ? off : len - off;
  return t.at(*e, std::clamp(from_a, 0.0, len));
}

json point_to_json(const Tree& t, TreePoint p) {
  p = t.canonical(p);
  if (p.is_vertex()) return "v:" + t.label(p.vertex());
  const Edge& ed = t.edge(p.edge());
  return {{"edge", {t.label(ed.a), t.label(ed.b)}}, {"offset", p.offset()}};
}

TreeMeasure tree_measure_from_json(const Tree& t, const json& j) {
  if (!j.is_object() || !j.contains("atoms")) throw InputError("measure JSON needs \"atoms\"");
  std::vector<TreeAtom> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2) throw InputError("atoms are [point, mass]");
    atoms.push_back({point_from_json(t, a[0]), number(a[1], "mass")});
  }
  return TreeMeasure(t, std::move(atoms));
}

json to_json(const Tree& t, const TreeMeasure& nu) {
  json atoms = json::array();
  for (const auto& a : nu.atoms()) atoms.push_back({point_to_json(t, a.point), a.mass});
  return {{"atoms", atoms}};
}

LineMeasure line_measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms")) throw InputError("measure JSON needs \"atoms\"");
  std::size_t dim = 0;
  std::vector<double> pos, mass;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2) throw InputError("atoms are [position, mass]");
    std::vector<double> x;
    if (a[0].is_array())
      for (const auto& c : a[0]) x.push_back(number(c, "coordinate"));
    else
      x.push_back(number(a[0], "position"));
    if (dim == 0) dim = x.size();
    if (x.size() != dim || dim == 0) throw InputError("atoms must share one positive dimension");
    pos.insert(pos.end(), x.begin(), x.end());
    mass.push_back(number(a[1], "mass"));
  }
  return LineMeasure(dim == 0 ? 1 : dim, std::move(pos), std::move(mass));
}

MMSpace space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dist") || !j.contains("mass"))
    throw InputError("space JSON needs \"dist\" and \"mass\"");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j.at("dist")) {
    if (!r.is_array()) throw InputError("\"dist\" must be a matrix");
    std::vector<double> row;
    for (const auto& v : r) row.push_back(number(v, "distance"));
    rows.push_back(std::move(row));
  }
  std::vector<double> mass;
  for (const auto& v : j.at("mass")) mass.push_back(number(v, "mass"));
  return MMSpace::from_rows(rows, std::move(mass));
}

json to_json(const MMSpace& x) {
  json rows = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = x.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  const auto m = x.masses();
  return {{"dist", rows}, {"mass", std::vector<double>(m.begin(), m.end())}};
}

json to_json(const Tree& t, const Subtree& s) {
  json verts = json::array(), pieces = json::array();
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (s.contains_vertex(v)) verts.push_back(t.label(v));
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (const auto iv = s.edge_interval(e)) {
      const Edge& ed = t.edge(e);
      pieces.push_back({t.label(ed.a), t.label(ed.b), iv->lo, iv->hi});
    }
  return {{"vertices", verts}, {"edges", pieces}};
}

json to_json(const BoundEstimate& b) {
  return {{"lower", b.lower},
          {"upper", finite_or_null(b.upper)},
          {"witness", b.witness},
          {"lower_source", b.lower_source},
          {"upper_source", b.upper_source}};
}

json to_json(const CheckReport& r) {
  json recs = json::array();
  for (const auto& c : r.records)
    recs.push_back({{"instance", c.instance},
                    {"inequality", c.inequality},
                    {"anchor", c.anchor},
                    {"lhs", finite_or_null(c.lhs)},
                    {"rhs", finite_or_null(c.rhs)},
                    {"margin", finite_or_null(c.margin)},
                    {"pass", c.pass}});
  json cmps = json::array();
  for (const auto& c : r.comparisons)
    cmps.push_back({{"instance", c.instance},
                    {"kappa", c.kappa},
                    {"median_bound", c.median_bound},
                    {"line_bound", finite_or_null(c.line_bound)}});
  return {{"seed", r.seed},
          {"seconds", r.seconds},
          {"checks", r.records.size()},
          {"failures", r.failures()},
          {"records", recs},
          {"bound_comparisons", cmps}};
}

json to_json(const std::vector<LevyRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"instance", r.instance},
                   {"points", r.points},
                   {"sep", r.sep},
                   {"sep_exact", r.sep_exact},
                   {"obsdiam", {{"lower", r.obsdiam.lower}, {"upper", finite_or_null(r.obsdiam.upper)}}},
                   {"obscrad", {{"lower", r.obscrad.lower}, {"upper", finite_or_null(r.obscrad.upper)}}},
                   {"obslpvar", {{"lower", r.obslpvar.lower}, {"upper", finite_or_null(r.obslpvar.upper)}}}});
  return out;
}

}  // namespace treeconc::io
