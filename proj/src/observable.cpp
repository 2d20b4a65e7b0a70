// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/observable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "treeconc/kernels.hpp"

namespace treeconc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// All three functionals are invariant under f -> -f and f -> f + c, so the
// witness family only needs one sign of each distance function.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual double value(std::span<const double> f) const = 0;
  virtual double value_if(std::vector<double>& f, std::size_t k, double x, double current) const {
    (void)current;
    const double old = f[k];
    f[k] = x;
    const double v = value(f);
    f[k] = old;
    return v;
  }
};

class DiamObjective : public Objective {
 public:
  DiamObjective(std::span<const double> mass, double kappa) : mass_(mass), kappa_(kappa) {}
  double value(std::span<const double> f) const override {
    return partial_diameter_of_values(f, mass_, kappa_);
  }

 private:
  std::span<const double> mass_;
  double kappa_;
};

class CradObjective : public Objective {
 public:
  CradObjective(std::span<const double> mass, double kappa)
      : mass_(mass), kappa_(kappa), total_(std::accumulate(mass.begin(), mass.end(), 0.0)) {}
  double value(std::span<const double> f) const override {
    double mean = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) mean += mass_[i] * f[i];
    return central_radius_of_values(f, mass_, kappa_, mean / total_);
  }

 private:
  std::span<const double> mass_;
  double kappa_;
  double total_;
};

// Works with the raw double sum, which is monotone in V_p.
class VpObjective : public Objective {
 public:
  VpObjective(std::span<const double> mass, double p) : mass_(mass), p_(p) {}
  double value(std::span<const double> f) const override {
    return kernels::abs_diff_power_sum(mass_, f, p_);
  }
  double value_if(std::vector<double>& f, std::size_t k, double x, double current) const override {
    const double old = f[k];
    const double self = mass_[k] * std::pow(std::abs(x - old), p_);
    const double delta = kernels::weighted_abs_power(mass_, f, x, p_) -
                         kernels::weighted_abs_power(mass_, f, old, p_) - self;
    return current + 2.0 * mass_[k] * delta;
  }

 private:
  std::span<const double> mass_;
  double p_;
};

std::vector<double> distance_to_set(const MMSpace& x, std::span<const std::size_t> a) {
  std::vector<double> f(x.size(), kInf);
  for (std::size_t i : a) kernels::min_plus_accumulate(f, x.row(i), 0.0);
  return f;
}

std::vector<std::vector<double>> witness_family(const MMSpace& x, const WitnessOptions& o, Rng& rng) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (n > o.max_base_points) {
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(o.max_base_points);
  }
  for (std::size_t x0 : idx) out.emplace_back(x.row(x0).begin(), x.row(x0).end());

  const double diam = x.diameter();
  std::uniform_int_distribution<std::size_t> size_dist(1, std::min<std::size_t>(n, 8));
  std::uniform_real_distribution<double> value_dist(-diam / 2, diam / 2);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t s = 0; s < o.mcshane_sets; ++s) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> a(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size_dist(rng)));
    std::vector<double> vals(a.size(), 0.0);
    if (s % 2 == 1) {
      std::vector<double> raw(a.size());
      for (double& v : raw) v = value_dist(rng);
      // Lower envelope of the raw data is 1-Lipschitz on A.
      for (std::size_t i = 0; i < a.size(); ++i) {
        vals[i] = kInf;
        for (std::size_t j = 0; j < a.size(); ++j) vals[i] = std::min(vals[i], raw[j] + x.d(a[i], a[j]));
      }
    }
    const auto f = mcshane_extension(x, a, vals);
    out.emplace_back(f.values().begin(), f.values().end());
  }
  return out;
}

std::vector<double> ascend(const MMSpace& x, const Objective& obj, std::vector<double> f,
                           std::size_t max_sweeps, Rng& rng) {
  const std::size_t n = x.size();
  double val = obj.value(f);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    bool improved = false;
    for (std::size_t k : order) {
      const auto [lo, hi] = kernels::lipschitz_interval(f, x.row(k), k);
      for (double cand : {lo, hi}) {
        if (!std::isfinite(cand) || cand == f[k]) continue;
        const double v = obj.value_if(f, k, cand, val);
        if (v > val + 1e-12 * std::max(1.0, std::abs(val))) {
          f[k] = cand;
          val = v;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return f;
}

struct Best {
  double value = -kInf;
  std::vector<double> witness;
};

// Scores the family, then climbs from the best member and from random ones.
Best search(const MMSpace& x, const Objective& obj, std::vector<std::vector<double>> family,
            const WitnessOptions& o, Rng& rng) {
  Best best;
  std::vector<double> scores;
  for (const auto& f : family) {
    const double v = obj.value(f);
    scores.push_back(v);
    if (v > best.value) {
      best.value = v;
      best.witness = f;
    }
  }
  if (x.size() > o.ascent_max_points || x.size() < 2 || family.empty()) return best;
  std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
  const std::vector<double> start0 = best.witness;
  for (std::size_t r = 0; r < o.restarts; ++r) {
    const auto f = ascend(x, obj, r == 0 ? start0 : family[pick(rng)], o.max_sweeps, rng);
    const double v = obj.value(f);
    if (v > best.value) {
      best.value = v;
      best.witness = f;
    }
  }
  return best;
}

void finish_witness(const MMSpace& x, BoundEstimate& est) {
  // Re-validate so the witness that leaves this module is certified 1-Lipschitz.
  const auto f = LipschitzFunction::validated(x, est.witness);
  est.witness.assign(f.values().begin(), f.values().end());
}

}  // namespace

double solve_lp(const std::vector<std::vector<double>>& a, std::span<const double> b,
                std::span<const double> c, std::vector<double>& solution) {
  const std::size_t m = a.size(), n = c.size();
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n || b[i] < 0.0) throw InputError("lp rows must match c and have b >= 0");
    std::copy(a[i].begin(), a[i].end(), t[i].begin());
    t[i][n + i] = 1.0;
    t[i][cols - 1] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];
  constexpr double eps = 1e-12;
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    std::size_t enter = npos;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (t[m][j] < -eps) {
        enter = j;
        break;
      }
    if (enter == npos) {
      solution.assign(n, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) solution[basis[i]] = t[i][cols - 1];
      return t[m][cols - 1];
    }
    std::size_t leave = npos;
    double ratio = kInf;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= eps) continue;
      const double r = t[i][cols - 1] / t[i][enter];
      if (r < ratio - eps || (r <= ratio + eps && leave != npos && basis[i] < basis[leave])) {
        ratio = std::min(ratio, r);
        leave = i;
      }
    }
    if (leave == npos) return kInf;
    const double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0.0) continue;
      const double factor = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }
  throw std::logic_error("simplex did not terminate");
}

ExactObsDiam obsdiam_exact(const MMSpace& x, double kappa) {
  const std::size_t n = x.size();
  if (n > 8) throw InputError("exact obsdiam is limited to 8 points");
  if (!std::isfinite(kappa) || kappa < 0.0) throw InputError("kappa must be finite and >= 0");
  const double m = x.total_mass();
  const double need = m - kappa - mass_slack(m);
  ExactObsDiam best;
  best.witness.assign(n, 0.0);
  if (need <= 0.0 || n < 2) return best;
  for (std::size_t i = 0; i < n; ++i)
    if (x.mass(i) >= need) return best;

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm.front() > perm.back()) continue;  // the reversed order gives the same value
    // Minimal windows [i, j] of the ordering that carry the required mass.
    std::vector<std::pair<std::size_t, std::size_t>> windows;
    double cap = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = i; j < n; ++j) {
        acc += x.mass(perm[j]);
        if (acc >= need) {
          windows.push_back({i, j});
          cap = std::min(cap, x.d(perm[i], perm[j]));
          break;
        }
      }
    }
    if (cap <= best.value) continue;
    // Variables: gaps g_0..g_{n-2} between consecutive images, then t.
    const std::size_t nv = n;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const auto& [i, j] : windows) {
      std::vector<double> row(nv, 0.0);
      row[nv - 1] = 1.0;
      for (std::size_t k = i; k < j; ++k) row[k] = -1.0;
      a.push_back(row);
      b.push_back(0.0);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<double> row(nv, 0.0);
        for (std::size_t k = i; k < j; ++k) row[k] = 1.0;
        a.push_back(row);
        b.push_back(x.d(perm[i], perm[j]));
      }
    std::vector<double> c(nv, 0.0);
    c[nv - 1] = 1.0;
    std::vector<double> sol;
    const double v = solve_lp(a, b, c, sol);
    if (v > best.value) {
      best.value = v;
      double pos = 0.0;
      best.witness[perm[0]] = 0.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        pos += sol[k];
        best.witness[perm[k + 1]] = pos;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

LipschitzFunction mcshane_extension(const MMSpace& x, std::span<const std::size_t> a,
                                    std::span<const double> values) {
  if (a.empty() || a.size() != values.size()) throw InputError("extension needs matching data");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= x.size()) throw InputError("extension point out of range");
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (std::abs(values[i] - values[j]) > x.d(a[i], a[j]) + kLipschitzTol)
        throw InputError("extension data is not 1-Lipschitz");
  }
  std::vector<double> f(x.size(), kInf);
  for (std::size_t i = 0; i < a.size(); ++i) kernels::min_plus_accumulate(f, x.row(a[i]), values[i]);
  return LipschitzFunction::validated(x, std::move(f));
}

BoundEstimate obsdiam_R(const MMSpace& x, double kappa, const WitnessOptions& o,
                        const SeparationFn& sep) {
  if (!std::isfinite(kappa) || kappa < 0.0) throw InputError("kappa must be finite and >= 0");
  Rng rng(o.seed);
  const auto separate = [&](double k1, double k2) {
    return sep ? sep(k1, k2) : separation(x, k1, k2);
  };
  const DiamObjective obj(x.masses(), kappa);
  auto family = witness_family(x, o, rng);
  // Sets realizing Sep(kappa'', kappa'') for kappa'' just above kappa give
  // witnesses d(., A) whose partial diameter is at least that separation.
  const double above = kappa + 4.0 * mass_slack(x.total_mass());
  const auto s = separate(above, above);
  if (!s.a.empty()) family.push_back(distance_to_set(x, s.a));
  if (!s.b.empty()) family.push_back(distance_to_set(x, s.b));

  BoundEstimate est;
  const Best best = search(x, obj, std::move(family), o, rng);
  est.lower = best.value;
  est.witness = best.witness;
  est.lower_source = "witness";
  if (x.size() <= o.exact_max_points) {
    const auto exact = obsdiam_exact(x, kappa);
    const double v = obj.value(exact.witness);
    if (v >= est.lower) {
      est.lower = v;
      est.witness = exact.witness;
      est.lower_source = "exact";
    }
    est.upper = std::max(exact.value, est.lower);
    est.upper_source = "exact";
  } else {
    const auto half = separate(kappa / 2.0, kappa / 2.0);
    est.upper = half.exact ? half.value : kInf;
    est.upper_source = "separation";
    if (x.diameter() < est.upper) {
      est.upper = x.diameter();
      est.upper_source = "diameter";
    }
  }
  finish_witness(x, est);
  est.lower = obj.value(est.witness);
  return est;
}

BoundEstimate obscrad_R(const MMSpace& x, double kappa, const WitnessOptions& o) {
  if (!std::isfinite(kappa) || kappa < 0.0) throw InputError("kappa must be finite and >= 0");
  Rng rng(o.seed);
  const CradObjective obj(x.masses(), kappa);
  BoundEstimate est;
  const Best best = search(x, obj, witness_family(x, o, rng), o, rng);
  est.witness = best.witness;
  est.lower_source = "witness";
  const double m = x.total_mass();
  est.upper = x.diameter();
  est.upper_source = "diameter";
  if (kappa > 0.0) {
    const double by_l1 = vp(x, 1.0) / (m * kappa);
    const double by_l2 = vp(x, 2.0) / std::sqrt(2.0 * m * kappa);
    if (by_l1 < est.upper) {
      est.upper = by_l1;
      est.upper_source = "l1-variance";
    }
    if (by_l2 < est.upper) {
      est.upper = by_l2;
      est.upper_source = "l2-variance";
    }
  }
  finish_witness(x, est);
  est.lower = obj.value(est.witness);
  return est;
}

BoundEstimate obslpvar_R(const MMSpace& x, double p, const WitnessOptions& o) {
  if (!std::isfinite(p) || p <= 0.0) throw InputError("p must be finite and positive");
  Rng rng(o.seed);
  const VpObjective obj(x.masses(), p);
  BoundEstimate est;
  const Best best = search(x, obj, witness_family(x, o, rng), o, rng);
  est.witness = best.witness;
  est.lower_source = "witness";
  est.upper = vp(x, p);
  est.upper_source = "pairwise";
  finish_witness(x, est);
  est.lower = std::pow(obj.value(est.witness), 1.0 / p);
  return est;
}

TreePoint random_tree_point(const Tree& t, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (t.edge_count() == 0 || unit(rng) < 0.25) {
    std::uniform_int_distribution<std::size_t> v(0, t.vertex_count() - 1);
    return TreePoint::at_vertex(v(rng));
  }
  double r = unit(rng) * t.total_length();
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const double len = t.edge(e).length;
    if (r <= len || e + 1 == t.edge_count()) return t.at(e, std::min(r, len));
    r -= len;
  }
  return TreePoint::at_vertex(0);
}

LipschitzTreeMap sample_lipschitz_tree_map(const MMSpace& x, const Tree& t, Rng& rng) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<TreePoint> images(n);
  std::vector<std::size_t> placed;
  for (std::size_t k : order) {
    Subtree feasible = Subtree::whole(t);
    for (std::size_t j : placed) {
      // Slightly widened balls keep tangent intersections non-empty under rounding.
      const double r = x.d(k, j) * (1.0 + 1e-12) + 1e-12;
      auto next = subtree_intersection(t, feasible, ball_subtree(t, images[j], r));
      if (!next) throw std::logic_error("ball intersection unexpectedly empty");
      feasible = std::move(*next);
    }
    images[k] = metric_projection(t, feasible, random_tree_point(t, rng));
    placed.push_back(k);
  }
  return LipschitzTreeMap::validated(x, t, std::move(images));
}

}  // namespace treeconc
