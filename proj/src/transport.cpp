// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace treeconc {
namespace {

void check_equal_mass(double a, double b) {
  if (std::abs(a - b) > 1e-12 * std::max({1.0, a, b}))
    throw InputError("transport needs measures of equal total mass");
}

}  // namespace

double w1_tree(const Tree& t, const TreeMeasure& mu, const TreeMeasure& nu) {
  check_equal_mass(mu.total_mass(), nu.total_mass());
  const std::size_t n = t.vertex_count();
  std::vector<double> net(n, 0.0);
  std::vector<std::vector<std::pair<double, double>>> on_edge(t.edge_count());
  auto add = [&](const TreeMeasure& m, double sign) {
    for (const auto& a : m.atoms()) {
      if (a.point.is_vertex()) net[a.point.vertex()] += sign * a.mass;
      else on_edge[a.point.edge()].push_back({a.point.offset(), sign * a.mass});
    }
  };
  add(mu, 1.0);
  add(nu, -1.0);

  // Root at vertex 0 and sweep leaves-first; each edge carries the surplus of the side below it.
  std::vector<VertexId> order{0};
  std::vector<EdgeId> up(n, npos);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (EdgeId e : t.incident(order[k])) {
      const VertexId u = t.other_end(e, order[k]);
      if (seen[u]) continue;
      seen[u] = 1;
      up[u] = e;
      order.push_back(u);
    }
  double cost = 0.0;
  for (std::size_t k = order.size(); k-- > 1;) {
    const VertexId v = order[k];
    const EdgeId e = up[v];
    const Edge& ed = t.edge(e);
    const bool v_is_a = ed.a == v;
    auto& cuts = on_edge[e];
    for (auto& c : cuts) c.first = v_is_a ? c.first : ed.length - c.first;
    std::sort(cuts.begin(), cuts.end());
    double running = net[v];
    double prev = 0.0;
    for (const auto& [s, w] : cuts) {
      cost += std::abs(running) * (s - prev);
      running += w;
      prev = s;
    }
    cost += std::abs(running) * (ed.length - prev);
    net[t.other_end(e, v)] += running;
  }
  return cost;
}

double w1_line(const LineMeasure& mu, const LineMeasure& nu) {
  if (mu.dim() != 1 || nu.dim() != 1) throw InputError("w1_line needs one-dimensional measures");
  check_equal_mass(mu.total_mass(), nu.total_mass());
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < mu.size(); ++i) pts.push_back({mu.coords()[i], mu.mass(i)});
  for (std::size_t i = 0; i < nu.size(); ++i) pts.push_back({nu.coords()[i], -nu.mass(i)});
  std::sort(pts.begin(), pts.end());
  double cdf = 0.0, cost = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    cdf += pts[k].second;
    cost += std::abs(cdf) * (pts[k + 1].first - pts[k].first);
  }
  return cost;
}

TransportPlan w1_oracle(std::span<const double> cost, std::span<const double> supply,
                        std::span<const double> demand) {
  const std::size_t r = supply.size(), c = demand.size();
  if (r == 0 || c == 0) throw InputError("transport needs non-empty measures");
  if (r > 64 || c > 64) throw InputError("transport oracle is limited to 64 atoms per side");
  if (cost.size() != r * c) throw InputError("cost matrix must be rows-by-cols");
  for (double w : supply)
    if (!(w > 0.0)) throw InputError("atom masses must be positive");
  for (double w : demand)
    if (!(w > 0.0)) throw InputError("atom masses must be positive");
  const double total = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double dtotal = std::accumulate(demand.begin(), demand.end(), 0.0);
  check_equal_mass(total, dtotal);

  std::vector<double> s(supply.begin(), supply.end());
  std::vector<double> d(demand.begin(), demand.end());
  for (double& x : d) x *= total / dtotal;
  std::vector<double> x(r * c, 0.0);
  std::vector<char> basic(r * c, 0);

  // North-west corner start; exactly r + c - 1 basic cells forming a spanning tree.
  for (std::size_t i = 0, j = 0;;) {
    const double q = std::min(s[i], d[j]);
    x[i * c + j] = q;
    basic[i * c + j] = 1;
    s[i] -= q;
    d[j] -= q;
    if (i == r - 1 && j == c - 1) break;
    if (i == r - 1) ++j;
    else if (j == c - 1) ++i;
    else if (s[i] <= d[j]) ++i;
    else ++j;
  }

  const double max_cost = cost.empty() ? 0.0 : *std::max_element(cost.begin(), cost.end());
  const double eps = 1e-12 * std::max(1.0, max_cost);
  const std::size_t nodes = r + c;
  std::vector<double> pot(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<std::vector<std::size_t>> adj(nodes);

  for (std::size_t iter = 0;; ++iter) {
    if (iter > 200000) throw std::logic_error("transportation simplex did not converge");
    for (auto& a : adj) a.clear();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (basic[i * c + j]) {
          adj[i].push_back(r + j);
          adj[r + j].push_back(i);
        }
    // Potentials u_i + v_j = cost_ij on the basis tree.
    std::vector<char> known(nodes, 0);
    std::queue<std::size_t> bfs;
    pot[0] = 0.0;
    known[0] = 1;
    bfs.push(0);
    while (!bfs.empty()) {
      const std::size_t a = bfs.front();
      bfs.pop();
      for (std::size_t b : adj[a]) {
        if (known[b]) continue;
        const std::size_t i = a < r ? a : b, j = (a < r ? b : a) - r;
        pot[b] = cost[i * c + j] - pot[a];
        known[b] = 1;
        bfs.push(b);
      }
    }
    std::size_t enter = npos;
    for (std::size_t k = 0; k < r * c && enter == npos; ++k)
      if (!basic[k] && cost[k] - pot[k / c] - pot[r + k % c] < -eps) enter = k;
    if (enter == npos) break;

    const std::size_t ei = enter / c, ej = enter % c;
    // Tree path from column ej back to row ei.
    std::fill(parent.begin(), parent.end(), npos);
    parent[r + ej] = r + ej;
    std::queue<std::size_t> q;
    q.push(r + ej);
    while (!q.empty() && parent[ei] == npos) {
      const std::size_t a = q.front();
      q.pop();
      for (std::size_t b : adj[a])
        if (parent[b] == npos) {
          parent[b] = a;
          q.push(b);
        }
    }
    std::vector<std::size_t> cells;  // alternating -, +, -, ... from column ej
    for (std::size_t node = ei; node != r + ej; node = parent[node]) {
      const std::size_t nxt = parent[node];
      const std::size_t i = node < r ? node : nxt, j = (node < r ? nxt : node) - r;
      cells.push_back(i * c + j);
    }
    std::reverse(cells.begin(), cells.end());
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = npos;
    for (std::size_t k = 0; k < cells.size(); k += 2) {
      const std::size_t cell = cells[k];
      if (x[cell] < theta || (x[cell] == theta && cell < leave)) {
        theta = x[cell];
        leave = cell;
      }
    }
    if (leave == npos) throw std::logic_error("transportation simplex: empty pivot cycle");
    theta = std::max(theta, 0.0);
    for (std::size_t k = 0; k < cells.size(); ++k) x[cells[k]] += (k % 2 == 0 ? -theta : theta);
    x[enter] = theta;
    basic[enter] = 1;
    basic[leave] = 0;
    x[leave] = 0.0;
  }

  TransportPlan plan;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      const double f = x[i * c + j];
      if (f > 0.0) {
        plan.entries.push_back({i, j, f});
        plan.cost += f * cost[i * c + j];
      }
    }
  return plan;
}

TransportPlan w1_oracle(const Tree& t, const TreeMeasure& mu, const TreeMeasure& nu) {
  std::vector<double> cost;
  for (const auto& a : mu.atoms())
    for (const auto& b : nu.atoms()) cost.push_back(t.distance(a.point, b.point));
  return w1_oracle(cost, mu.masses(), nu.masses());
}

}  // namespace treeconc
