// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// Sep(kappa1, kappa2) = sup d(A, B) over A, B of masses >= kappa1, kappa2.
//
// For a fixed A the best B is everything at distance >= t from A, so the
// value is the largest t whose far region still carries kappa2. That only
// shrinks as A grows, which makes minimal A the only ones worth visiting and
// gives a cheap bound for pruning. Both sets are taken non-empty.
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "treeconc/measures.hpp"

namespace treeconc {
namespace {

// Largest t with mass{x : dist_to_a[x] >= t} >= need.
double far_quantile(std::span<const double> dist_to_a, std::span<const double> mass, double need,
                    std::vector<std::size_t>& scratch) {
  const std::size_t n = dist_to_a.size();
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), 0);
  std::sort(scratch.begin(), scratch.end(),
            [&](std::size_t i, std::size_t j) { return dist_to_a[i] > dist_to_a[j]; });
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += mass[scratch[k]];
    if (acc >= need) return dist_to_a[scratch[k]];
  }
  return -1.0;  // the whole space is too light
}

struct Search {
  const MMSpace& x;
  double need_small;
  double need_large;
  std::vector<std::size_t> order;  // heaviest first
  std::vector<double> suffix_mass;
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> best_set;
  std::vector<std::size_t> scratch;
  double best = -1.0;

  void run(std::size_t pos, double mass, const std::vector<double>& dist_to_s) {
    if (!chosen.empty()) {
      const double t = far_quantile(dist_to_s, x.masses(), need_large, scratch);
      if (t <= best) return;  // supersets only pull the far region closer
      if (mass >= need_small) {
        best = t;
        best_set = chosen;
        return;
      }
    }
    if (pos == order.size() || mass + suffix_mass[pos] < need_small) return;
    const std::size_t i = order[pos];
    std::vector<double> next(dist_to_s);
    const auto row = x.row(i);
    for (std::size_t k = 0; k < next.size(); ++k) next[k] = std::min(next[k], row[k]);
    chosen.push_back(i);
    run(pos + 1, mass + x.mass(i), next);
    chosen.pop_back();
    run(pos + 1, mass, dist_to_s);
  }
};

std::vector<std::size_t> far_set(const MMSpace& x, std::span<const std::size_t> a, double t) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i : a) d = std::min(d, x.d(i, k));
    if (d >= t) out.push_back(k);
  }
  return out;
}

// Ball-shaped candidates around each (or a sample of) centre.
SeparationResult ball_lower_bound(const MMSpace& x, double need_small, double need_large) {
  const std::size_t n = x.size();
  const std::size_t stride = n > 512 ? n / 64 : 1;
  std::vector<std::size_t> scratch, by_dist(n);
  SeparationResult res;
  res.value = -1.0;
  res.exact = false;
  std::vector<double> dist_to_s(n);
  for (std::size_t c = 0; c < n; c += stride) {
    std::iota(by_dist.begin(), by_dist.end(), 0);
    const auto row = x.row(c);
    std::sort(by_dist.begin(), by_dist.end(), [&](std::size_t i, std::size_t j) { return row[i] < row[j]; });
    std::fill(dist_to_s.begin(), dist_to_s.end(), std::numeric_limits<double>::infinity());
    std::vector<std::size_t> s;
    double mass = 0.0;
    for (std::size_t i : by_dist) {
      s.push_back(i);
      mass += x.mass(i);
      const auto ri = x.row(i);
      for (std::size_t k = 0; k < n; ++k) dist_to_s[k] = std::min(dist_to_s[k], ri[k]);
      if (mass >= need_small) break;
    }
    const double t = far_quantile(dist_to_s, x.masses(), need_large, scratch);
    if (t > res.value) {
      res.value = t;
      res.a = s;
    }
  }
  return res;
}

}  // namespace

SeparationResult separation(const MMSpace& x, double kappa1, double kappa2,
                            const SeparationOptions& opts) {
  if (!std::isfinite(kappa1) || !std::isfinite(kappa2) || kappa1 < 0.0 || kappa2 < 0.0)
    throw InputError("separation masses must be finite and >= 0");
  const double m = x.total_mass();
  const double slack = mass_slack(m);
  if (kappa1 > m + slack || kappa2 > m + slack) return {};
  const bool swapped = kappa1 > kappa2;
  const double need_small = (swapped ? kappa2 : kappa1) - slack;
  const double need_large = (swapped ? kappa1 : kappa2) - slack;

  SeparationResult res;
  if (x.size() > opts.max_exact_points) {
    res = ball_lower_bound(x, need_small, need_large);
  } else {
    Search s{x, need_small, need_large, {}, {}, {}, {}, {}, -1.0};
    s.order.resize(x.size());
    std::iota(s.order.begin(), s.order.end(), 0);
    std::stable_sort(s.order.begin(), s.order.end(),
                     [&](std::size_t i, std::size_t j) { return x.mass(i) > x.mass(j); });
    s.suffix_mass.assign(x.size() + 1, 0.0);
    for (std::size_t k = x.size(); k-- > 0;) s.suffix_mass[k] = s.suffix_mass[k + 1] + x.mass(s.order[k]);
    s.run(0, 0.0, std::vector<double>(x.size(), std::numeric_limits<double>::infinity()));
    res.value = s.best;
    res.a = s.best_set;
    res.exact = true;
  }
  res.value = std::max(res.value, 0.0);
  std::sort(res.a.begin(), res.a.end());
  res.b = far_set(x, res.a, res.value);
  if (swapped) std::swap(res.a, res.b);
  return res;
}

SeparationResult separation(const Tree& t, const TreeMeasure& nu, double kappa1, double kappa2,
                            const SeparationOptions& opts) {
  return separation(atom_space(t, nu), kappa1, kappa2, opts);
}

SeparationResult separation(const LineMeasure& nu, double kappa1, double kappa2,
                            const SeparationOptions& opts) {
  return separation(atom_space(nu), kappa1, kappa2, opts);
}

double separation_from_set(const MMSpace& x, std::span<const std::size_t> a, double kappa2) {
  if (a.empty()) throw InputError("separation_from_set needs a non-empty set");
  std::vector<double> dist(x.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i : a) {
    const auto row = x.row(i);
    for (std::size_t k = 0; k < x.size(); ++k) dist[k] = std::min(dist[k], row[k]);
  }
  std::vector<std::size_t> scratch;
  return std::max(0.0, far_quantile(dist, x.masses(), kappa2 - mass_slack(x.total_mass()), scratch));
}

}  // namespace treeconc
