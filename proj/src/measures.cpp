// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "treeconc/kernels.hpp"

namespace treeconc {
namespace {

void check_masses(std::span<const double> mass) {
  for (double w : mass)
    if (!std::isfinite(w) || w <= 0.0) throw InputError("atom masses must be finite and positive");
}

void check_kappa(double kappa) {
  if (!std::isfinite(kappa) || kappa < 0.0) throw InputError("kappa must be finite and >= 0");
}

void check_p(double p) {
  if (!std::isfinite(p) || p <= 0.0) throw InputError("p must be finite and positive");
}

// Sort key placing coincident canonical points next to each other.
auto point_key(const TreePoint& p) {
  return std::make_tuple(p.is_vertex() ? 0 : 1, p.is_vertex() ? p.vertex() : p.edge(),
                         p.is_vertex() ? 0.0 : p.offset());
}

bool same_canonical(const TreePoint& p, const TreePoint& q) {
  if (p.is_vertex() != q.is_vertex()) return false;
  if (p.is_vertex()) return p.vertex() == q.vertex();
  return p.edge() == q.edge() && std::abs(p.offset() - q.offset()) <= kGeomTol;
}

std::vector<TreeAtom> sorted_canonical(const Tree& t, std::vector<TreeAtom> atoms) {
  for (auto& a : atoms) {
    a.point = t.canonical(a.point);
    if (!std::isfinite(a.mass) || a.mass <= 0.0)
      throw InputError("atom masses must be finite and positive");
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const TreeAtom& x, const TreeAtom& y) {
    return point_key(x.point) < point_key(y.point);
  });
  return atoms;
}

}  // namespace

// ---------------------------------------------------------------- MMSpace

MMSpace::MMSpace(std::vector<double> dist, std::vector<double> mass, Check check)
    : dist_(std::move(dist)), mass_(std::move(mass)) {
  const std::size_t n = mass_.size();
  if (n == 0) throw InputError("mm-space needs at least one point");
  if (dist_.size() != n * n) throw InputError("distance matrix must be n-by-n");
  check_masses(mass_);
  total_ = std::accumulate(mass_.begin(), mass_.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw InputError("distance matrix must have a zero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double x = d(i, j);
      if (!std::isfinite(x) || x <= 0.0) throw InputError("off-diagonal distances must be positive");
      if (x != d(j, i)) throw InputError("distance matrix must be symmetric");
    }
  }
  if (check == Check::full) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (d(i, j) > d(i, k) + d(k, j) + 1e-12 * std::max(1.0, d(i, j)))
            throw InputError("distance matrix violates the triangle inequality");
  }
}

MMSpace MMSpace::from_rows(const std::vector<std::vector<double>>& rows, std::vector<double> mass,
                           Check check) {
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw InputError("distance matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return MMSpace(std::move(flat), std::move(mass), check);
}

double MMSpace::diameter() const { return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end()); }

double MMSpace::min_positive_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (double x : dist_)
    if (x > 0.0) best = std::min(best, x);
  return std::isfinite(best) ? best : 0.0;
}

MMSpace MMSpace::restrict_to(std::span<const std::size_t> idx) const {
  std::vector<double> dist(idx.size() * idx.size());
  std::vector<double> mass(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    mass[i] = mass_.at(idx[i]);
    for (std::size_t j = 0; j < idx.size(); ++j) dist[i * idx.size() + j] = d(idx[i], idx[j]);
  }
  return MMSpace(std::move(dist), std::move(mass), Check::basic);
}

// ---------------------------------------------------------------- measures

TreeMeasure::TreeMeasure(const Tree& t, std::vector<TreeAtom> atoms) {
  if (atoms.empty()) throw InputError("measure needs at least one atom");
  auto sorted = sorted_canonical(t, atoms);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (same_canonical(sorted[i - 1].point, sorted[i].point))
      throw InputError("measure has two atoms at the same point");
  atoms_ = std::move(atoms);
  for (auto& a : atoms_) a.point = t.canonical(a.point);
  for (const auto& a : atoms_) total_ += a.mass;
}

TreeMeasure TreeMeasure::merged(const Tree& t, std::vector<TreeAtom> atoms) {
  if (atoms.empty()) throw InputError("measure needs at least one atom");
  auto sorted = sorted_canonical(t, std::move(atoms));
  std::vector<TreeAtom> out;
  for (const auto& a : sorted) {
    if (!out.empty() && same_canonical(out.back().point, a.point)) out.back().mass += a.mass;
    else out.push_back(a);
  }
  return TreeMeasure(t, std::move(out));
}

std::vector<TreePoint> TreeMeasure::points() const {
  std::vector<TreePoint> out;
  for (const auto& a : atoms_) out.push_back(a.point);
  return out;
}

std::vector<double> TreeMeasure::masses() const {
  std::vector<double> out;
  for (const auto& a : atoms_) out.push_back(a.mass);
  return out;
}

LineMeasure::LineMeasure(std::size_t dim, std::vector<double> positions, std::vector<double> masses)
    : dim_(dim), pos_(std::move(positions)), mass_(std::move(masses)) {
  if (dim_ == 0) throw InputError("line measure dimension must be positive");
  if (mass_.empty()) throw InputError("measure needs at least one atom");
  if (pos_.size() != mass_.size() * dim_) throw InputError("positions do not match atom count");
  check_masses(mass_);
  for (double x : pos_)
    if (!std::isfinite(x)) throw InputError("positions must be finite");
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t i, std::size_t j) {
    return std::lexicographical_compare(position(i).begin(), position(i).end(),
                                        position(j).begin(), position(j).end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t k = 1; k < order.size(); ++k)
    if (std::equal(position(order[k - 1]).begin(), position(order[k - 1]).end(),
                   position(order[k]).begin()))
      throw InputError("measure has two atoms at the same point");
  total_ = std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

LineMeasure LineMeasure::merged(std::size_t dim, std::vector<double> positions,
                                std::vector<double> masses) {
  if (dim == 0 || positions.size() != masses.size() * dim)
    throw InputError("positions do not match atom count");
  const std::size_t n = masses.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](std::size_t i) { return positions.begin() + static_cast<std::ptrdiff_t>(i * dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::lexicographical_compare(at(i), at(i) + dim, at(j), at(j) + dim);
  });
  std::vector<double> pos, mass;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (!mass.empty() && std::equal(at(i), at(i) + dim, pos.end() - static_cast<std::ptrdiff_t>(dim))) {
      mass.back() += masses[i];
    } else {
      pos.insert(pos.end(), at(i), at(i) + dim);
      mass.push_back(masses[i]);
    }
  }
  return LineMeasure(dim, std::move(pos), std::move(mass));
}

LipschitzFunction LipschitzFunction::validated(const MMSpace& x, std::vector<double> values,
                                               double tol) {
  if (values.size() != x.size()) throw InputError("function size does not match the space");
  for (double v : values)
    if (!std::isfinite(v)) throw InputError("function values must be finite");
  if (kernels::lipschitz_excess(values, x.dist()) > tol)
    throw InputError("function is not 1-Lipschitz");
  LipschitzFunction f;
  f.values_ = std::move(values);
  return f;
}

LipschitzTreeMap LipschitzTreeMap::validated(const MMSpace& x, const Tree& t,
                                             std::vector<TreePoint> images, double tol) {
  if (images.size() != x.size()) throw InputError("map size does not match the space");
  for (auto& p : images) p = t.canonical(p);
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (t.distance(images[i], images[j]) > x.d(i, j) + tol)
        throw InputError("tree map is not 1-Lipschitz");
  LipschitzTreeMap f;
  f.images_ = std::move(images);
  return f;
}

// ---------------------------------------------------------------- functionals

MMSpace atom_space(const Tree& t, const TreeMeasure& nu) {
  const std::size_t n = nu.size();
  std::vector<double> dist(n * n, 0.0);
  const auto atoms = nu.atoms();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dist[i * n + j] = dist[j * n + i] = t.distance(atoms[i].point, atoms[j].point);
  return MMSpace(std::move(dist), nu.masses(), MMSpace::Check::basic);
}

MMSpace atom_space(const LineMeasure& nu) {
  const std::size_t n = nu.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < nu.dim(); ++k) {
        const double diff = nu.position(i)[k] - nu.position(j)[k];
        s += diff * diff;
      }
      dist[i * n + j] = dist[j * n + i] = std::sqrt(s);
    }
  return MMSpace(std::move(dist), std::vector<double>(nu.masses().begin(), nu.masses().end()),
                 MMSpace::Check::basic);
}

double vp(const MMSpace& x, double p) {
  check_p(p);
  return std::pow(kernels::pair_power_sum(x.masses(), x.dist(), p), 1.0 / p);
}

double vp(const Tree& t, const TreeMeasure& nu, double p) { return vp(atom_space(t, nu), p); }

double vp(const LineMeasure& nu, double p) {
  check_p(p);
  if (nu.dim() == 1)
    return std::pow(kernels::abs_diff_power_sum(nu.masses(), nu.coords(), p), 1.0 / p);
  return vp(atom_space(nu), p);
}

double vp(const MMSpace& x, const LipschitzFunction& f, double p) {
  check_p(p);
  if (f.size() != x.size()) throw InputError("function size does not match the space");
  return std::pow(kernels::abs_diff_power_sum(x.masses(), f.values(), p), 1.0 / p);
}

double partial_diameter_tree_metric(const MMSpace& atoms, double kappa) {
  check_kappa(kappa);
  const std::size_t n = atoms.size();
  const double need = atoms.total_mass() - kappa - mass_slack(atoms.total_mass());
  if (need <= 0.0) return 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (atoms.mass(i) >= need) return 0.0;
  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({atoms.d(i, j), {i, j}});
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [dij, ij] : pairs) {
    const auto [i, j] = ij;
    const double half = dij / 2.0;
    const double tol = 1e-12 * std::max(1.0, dij);
    double mass = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      // In a tree the foot of l on [i, j] sits s from i, with l hanging h above it.
      const double s = (atoms.d(i, l) + dij - atoms.d(j, l)) / 2.0;
      const double h = atoms.d(i, l) - s;
      if (std::abs(s - half) + h <= half + tol) mass += atoms.mass(l);
    }
    if (mass >= need) return dij;
  }
  return atoms.diameter();
}

double partial_diameter_exhaustive(const MMSpace& atoms, double kappa) {
  check_kappa(kappa);
  const std::size_t n = atoms.size();
  if (n > 20) throw InputError("exhaustive partial diameter is limited to 20 points");
  const double need = atoms.total_mass() - kappa - mass_slack(atoms.total_mass());
  if (need <= 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> chosen;
  // Include/exclude search; a branch stops once its diameter cannot beat `best`.
  auto rec = [&](auto&& self, std::size_t pos, double mass, double diam) -> void {
    if (diam >= best) return;
    if (mass >= need) {
      best = diam;
      return;
    }
    if (pos == n) return;
    double grow = diam;
    for (std::size_t c : chosen) grow = std::max(grow, atoms.d(c, pos));
    chosen.push_back(pos);
    self(self, pos + 1, mass + atoms.mass(pos), grow);
    chosen.pop_back();
    self(self, pos + 1, mass, diam);
  };
  rec(rec, 0, 0.0, 0.0);
  return best;
}

double partial_diameter_of_values(std::span<const double> values, std::span<const double> mass,
                                  double kappa) {
  check_kappa(kappa);
  const std::size_t n = values.size();
  const double m = std::accumulate(mass.begin(), mass.end(), 0.0);
  const double need = m - kappa - mass_slack(m);
  if (need <= 0.0) return 0.0;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  double best = std::numeric_limits<double>::infinity();
  double window = 0.0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < n; ++hi) {
    window += mass[order[hi]];
    while (lo < hi && window - mass[order[lo]] >= need) window -= mass[order[lo++]];
    if (window >= need) best = std::min(best, values[order[hi]] - values[order[lo]]);
  }
  return best;
}

double partial_diameter(const Tree& t, const TreeMeasure& nu, double kappa) {
  return partial_diameter_tree_metric(atom_space(t, nu), kappa);
}

double partial_diameter(const LineMeasure& nu, double kappa) {
  if (nu.dim() == 1) return partial_diameter_of_values(nu.coords(), nu.masses(), kappa);
  return partial_diameter_exhaustive(atom_space(nu), kappa);
}

double central_radius_of_values(std::span<const double> values, std::span<const double> mass,
                                double kappa, double center) {
  check_kappa(kappa);
  const double m = std::accumulate(mass.begin(), mass.end(), 0.0);
  const double need = m - kappa - mass_slack(m);
  if (need <= 0.0) return 0.0;
  std::vector<std::pair<double, double>> dm;
  for (std::size_t i = 0; i < values.size(); ++i) dm.push_back({std::abs(values[i] - center), mass[i]});
  std::sort(dm.begin(), dm.end());
  double acc = 0.0;
  for (const auto& [d, w] : dm) {
    acc += w;
    if (acc >= need) return d;
  }
  return dm.back().first;
}

double central_radius(const Tree& t, const TreeMeasure& nu, double kappa, TreePoint center) {
  center = t.canonical(center);
  std::vector<double> d;
  for (const auto& a : nu.atoms()) d.push_back(t.distance(center, a.point));
  const auto w = nu.masses();
  return central_radius_of_values(d, w, kappa, 0.0);
}

double central_radius(const LineMeasure& nu, double kappa, std::span<const double> center) {
  if (center.size() != nu.dim()) throw InputError("center dimension mismatch");
  std::vector<double> d;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < nu.dim(); ++k) s += std::pow(nu.position(i)[k] - center[k], 2);
    d.push_back(std::sqrt(s));
  }
  return central_radius_of_values(d, nu.masses(), kappa, 0.0);
}

double ball_mass(const Tree& t, const TreeMeasure& nu, TreePoint center, double radius) {
  center = t.canonical(center);
  const double tol = kGeomTol * std::max(1.0, radius);
  double m = 0.0;
  for (const auto& a : nu.atoms())
    if (t.distance(center, a.point) <= radius + tol) m += a.mass;
  return m;
}

LineMeasure pushforward(const MMSpace& x, const LipschitzFunction& f) {
  if (f.size() != x.size()) throw InputError("function size does not match the space");
  return LineMeasure::merged(1, std::vector<double>(f.values().begin(), f.values().end()),
                             std::vector<double>(x.masses().begin(), x.masses().end()));
}

TreeMeasure pushforward(const MMSpace& x, const Tree& t, const LipschitzTreeMap& f) {
  if (f.size() != x.size()) throw InputError("map size does not match the space");
  std::vector<TreeAtom> atoms;
  for (std::size_t i = 0; i < x.size(); ++i) atoms.push_back({f.images()[i], x.mass(i)});
  return TreeMeasure::merged(t, std::move(atoms));
}

TreeMeasure coarsen(const Tree& t, const TreeMeasure& nu, double eps) {
  if (!std::isfinite(eps) || eps < 0.0) throw InputError("eps must be finite and >= 0");
  std::vector<TreeAtom> net;
  for (const auto& a : nu.atoms()) {
    std::size_t best = npos;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < net.size(); ++k) {
      const double d = t.distance(net[k].point, a.point);
      if (d <= eps && d < best_d) {
        best = k;
        best_d = d;
      }
    }
    if (best == npos) net.push_back(a);
    else net[best].mass += a.mass;
  }
  return TreeMeasure(t, std::move(net));
}

}  // namespace treeconc
