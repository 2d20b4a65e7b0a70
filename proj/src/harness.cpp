// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include "treeconc/harness.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

namespace treeconc {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::size_t count_param(const InstanceSpec& s, const std::string& key, double fallback,
                        double lo, double hi) {
  const double v = s.param(key, fallback);
  if (!(v >= lo && v <= hi) || v != std::floor(v))
    throw InputError(s.generator + ": parameter " + key + " must be an integer in [" +
                     short_num(lo) + ", " + short_num(hi) + "]");
  return static_cast<std::size_t>(v);
}

std::vector<double> random_masses(Rng& rng, std::size_t k, bool normalize) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(k);
  for (double& x : w) x = u(rng);
  if (normalize) {
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= s;
  }
  return w;
}

bool simplicial_less(std::uint32_t x, std::uint32_t y) {
  const int px = std::popcount(x), py = std::popcount(y);
  if (px != py) return px < py;
  if (x == y) return false;
  const std::uint32_t low = (x ^ y) & (~(x ^ y) + 1);
  return (x & low) != 0;
}

/// Points within Hamming distance r of `set`, by multi-source BFS.
std::vector<int> hamming_distance_to(int n, std::span<const std::uint32_t> set) {
  std::vector<int> dist(std::size_t{1} << n, -1);
  std::deque<std::uint32_t> q;
  for (auto v : set) {
    dist[v] = 0;
    q.push_back(v);
  }
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    for (int b = 0; b < n; ++b) {
      const auto u = v ^ (std::uint32_t{1} << b);
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
    }
  }
  return dist;
}

/// Smallest number of uniform atoms of mass `unit` carrying at least kappa.
std::size_t atoms_needed(double kappa, double unit, double total) {
  const double slack = mass_slack(total);
  const double k = std::ceil((kappa - slack) / unit - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, k));
}

struct Recorder {
  CheckReport& out;
  const std::string& instance;
  double rel_tol;

  void add(const std::string& name, const std::string& anchor, double lhs, double rhs,
           double abs_tol = -1.0) {
    const double tol =
        abs_tol >= 0.0 ? abs_tol : rel_tol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    CheckRecord r;
    r.instance = instance;
    r.inequality = name;
    r.anchor = anchor;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.pass = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + tol;
    out.records.push_back(std::move(r));
  }
};

std::string tag(const std::string& base, double kappa) { return base + "[k=" + short_num(kappa) + "]"; }
std::string tag(const std::string& base, double kappa, double p) {
  return base + "[k=" + short_num(kappa) + ",p=" + short_num(p) + "]";
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- generators

std::string InstanceSpec::name() const {
  std::string s = generator + "(";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) s += ",";
    s += k + "=" + short_num(v);
    first = false;
  }
  return s + ")#" + std::to_string(seed);
}

double InstanceSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

MMSpace hypercube_space(int n, bool normalized) {
  if (n < 1 || n > 16) throw InputError("hypercube dimension must be in [1, 16]");
  const std::size_t size = std::size_t{1} << n;
  const double scale = normalized ? 1.0 / n : 1.0;
  std::vector<double> dist(size * size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      dist[i * size + j] = std::popcount(static_cast<std::uint32_t>(i ^ j)) * scale;
  return MMSpace(std::move(dist), std::vector<double>(size, 1.0 / static_cast<double>(size)),
                 MMSpace::Check::basic);
}

SeparationResult hypercube_separation(int n, bool normalized, double kappa1, double kappa2) {
  if (n < 1 || n > 16) throw InputError("hypercube dimension must be in [1, 16]");
  const std::size_t size = std::size_t{1} << n;
  const double unit = 1.0 / static_cast<double>(size);
  const std::size_t k1 = atoms_needed(kappa1, unit, 1.0);
  const std::size_t k2 = atoms_needed(kappa2, unit, 1.0);
  if (!(kappa1 >= 0.0) || !(kappa2 >= 0.0)) throw InputError("separation masses must be >= 0");
  if (k1 > size || k2 > size) return {};

  // Harper: initial segments of the simplicial order have the smallest
  // r-neighbourhoods, for every r, among sets of their size.
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), simplicial_less);
  const std::size_t small = std::min(k1, k2), large = std::max(k1, k2);
  const std::span<const std::uint32_t> seg(order.data(), small);
  const auto dist = hamming_distance_to(n, seg);
  // Count points by distance from the segment; Sep = largest t with at least
  // `large` points at distance >= t.
  std::vector<std::size_t> at(n + 1, 0);
  for (int d : dist) ++at[d];
  int t = 0;
  std::size_t far = 0;
  for (int r = n; r >= 1; --r) {
    far += at[r];
    if (far >= large) {
      t = r;
      break;
    }
  }
  SeparationResult res;
  res.value = normalized ? static_cast<double>(t) / n : static_cast<double>(t);
  std::vector<std::size_t> a(seg.begin(), seg.end()), b;
  for (std::size_t v = 0; v < size; ++v)
    if (dist[v] >= t) b.push_back(v);
  std::sort(a.begin(), a.end());
  if (k1 > k2) std::swap(a, b);
  res.a = std::move(a);
  res.b = std::move(b);
  return res;
}

Tree random_tree(Rng& rng, std::size_t edges, double min_len, double max_len) {
  std::uniform_real_distribution<double> len(min_len, max_len);
  std::vector<std::string> labels;
  std::vector<Edge> es;
  labels.push_back("0");
  for (std::size_t v = 1; v <= edges; ++v) {
    labels.push_back(std::to_string(v));
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    const std::size_t p = parent(rng);
    es.push_back({p, v, len(rng)});
  }
  return Tree(std::move(labels), std::move(es));
}

TreeMeasure random_tree_measure(const Tree& t, Rng& rng, std::size_t atoms) {
  if (atoms == 0) throw InputError("a measure needs at least one atom");
  std::vector<TreeAtom> out;
  const auto w = random_masses(rng, atoms, false);
  for (std::size_t i = 0; i < atoms; ++i) out.push_back({random_tree_point(t, rng), w[i]});
  return TreeMeasure::merged(t, std::move(out));
}

MMSpace random_graph_metric(Rng& rng, std::size_t k, int wmax) {
  if (k == 0) throw InputError("graph needs at least one vertex");
  if (wmax < 1) throw InputError("graph weights need wmax >= 1");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::uniform_int_distribution<int> weight(1, wmax);
  std::vector<double> d(k * k, inf);
  for (std::size_t i = 0; i < k; ++i) d[i * k + i] = 0.0;
  auto connect = [&](std::size_t u, std::size_t v) {
    const double w = weight(rng);
    d[u * k + v] = d[v * k + u] = std::min(d[u * k + v], w);
  };
  for (std::size_t v = 1; v < k; ++v) connect(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
  std::uniform_int_distribution<std::size_t> any(0, k - 1);
  for (std::size_t e = 0; e < k / 2; ++e) {
    const std::size_t u = any(rng), v = any(rng);
    if (u != v) connect(u, v);
  }
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) d[i * k + j] = std::min(d[i * k + j], d[i * k + m] + d[m * k + j]);
  return MMSpace(std::move(d), random_masses(rng, k, true));
}

Instance generate(const InstanceSpec& spec) {
  Instance inst;
  inst.name = spec.name();
  Rng rng(spec.seed);
  const std::string& g = spec.generator;
  if (g == "hypercube") {
    const auto n = count_param(spec, "n", 3, 1, 16);
    const double norm = spec.param("normalized", 0.0);
    if (norm != 0.0 && norm != 1.0) throw InputError("hypercube: normalized must be 0 or 1");
    inst.hypercube_dim = static_cast<int>(n);
    inst.hypercube_normalized = norm == 1.0;
    inst.space = hypercube_space(inst.hypercube_dim, inst.hypercube_normalized);
  } else if (g == "two-point") {
    const double n = spec.param("n", 10.0);
    if (!(n > 1.0) || !std::isfinite(n)) throw InputError("two-point: n must be > 1");
    inst.space = MMSpace({0.0, n, n, 0.0}, {1.0 - 1.0 / n, 1.0 / n});
  } else if (g == "path") {
    const auto k = count_param(spec, "k", 5, 1, 100000);
    const std::vector<double> lengths(k - 1, 1.0);
    Tree t = Tree::path(lengths);
    std::vector<TreeAtom> atoms;
    for (std::size_t v = 0; v < k; ++v) atoms.push_back({TreePoint::at_vertex(v), 1.0 / k});
    inst.measure = TreeMeasure(t, std::move(atoms));
    inst.space = atom_space(t, *inst.measure);
    inst.tree = std::move(t);
  } else if (g == "cloud") {
    const auto d = count_param(spec, "d", 2, 1, 64);
    const auto k = count_param(spec, "k", 8, 1, 5000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> pos(d * k);
    for (double& x : pos) x = u(rng);
    const auto w = random_masses(rng, k, true);
    inst.space = atom_space(LineMeasure(d, std::move(pos), w));
  } else if (g == "graph") {
    const auto k = count_param(spec, "k", 6, 1, 2000);
    const auto wmax = count_param(spec, "wmax", 1, 1, 1000000);
    inst.space = random_graph_metric(rng, k, static_cast<int>(wmax));
  } else if (g == "tree") {
    const auto edges = count_param(spec, "edges", 10, 0, 100000);
    const auto atoms = count_param(spec, "atoms", 8, 1, 100000);
    Tree t = random_tree(rng, edges);
    inst.measure = random_tree_measure(t, rng, atoms);
    inst.space = atom_space(t, *inst.measure);
    inst.tree = std::move(t);
  } else {
    throw InputError("unknown generator '" + g + "'");
  }
  return inst;
}

SeparationFn separation_for(const Instance& inst) {
  if (inst.hypercube_dim > 0) {
    const int n = inst.hypercube_dim;
    const bool norm = inst.hypercube_normalized;
    return [n, norm](double k1, double k2) { return hypercube_separation(n, norm, k1, k2); };
  }
  const MMSpace* x = &inst.space;
  return [x](double k1, double k2) { return separation(*x, k1, k2); };
}

// ---------------------------------------------------------------- reports

bool CheckReport::all_pass() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
}

void CheckReport::append(CheckReport&& other) {
  records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                 std::make_move_iterator(other.records.end()));
  comparisons.insert(comparisons.end(), other.comparisons.begin(), other.comparisons.end());
  seconds += other.seconds;
}

std::string report_csv(const CheckReport& r) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream os;
  os << "instance,inequality,anchor,lhs,rhs,margin,pass\n";
  for (const auto& c : r.records)
    os << quote(c.instance) << ',' << quote(c.inequality) << ',' << quote(c.anchor) << ','
       << num(c.lhs) << ',' << num(c.rhs) << ',' << num(c.margin) << ','
       << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

// ---------------------------------------------------------------- measure checks

void check_measure_inequalities(const Tree& t, const TreeMeasure& nu, const std::string& instance,
                                const CheckOptions& opts, CheckReport& out) {
  Recorder rec{out, instance, opts.rel_tol};
  const double m = nu.total_mass();
  const double slack = mass_slack(m);

  const auto bary = tree_barycenter(t, nu);
  rec.add("barycenter-sturm", "max_dir c_{z,T'}(nu) <= 0 at z = c(nu)", bary.max_violation, 0.0,
          bary.tolerance);
  const auto pts = nu.points();
  rec.add("barycenter-in-hull", "c(nu) in span(supp nu)",
          spanning_subtree(t, pts).contains(t, bary.point, 1e-9) ? 0.0 : 1.0, 0.0, 0.0);

  const auto med = tree_median(t, nu);
  auto recount = [&](const Subtree& part) {
    double s = 0.0;
    for (const auto& a : nu.atoms())
      if (part.contains(t, a.point)) s += a.mass;
    return s;
  };
  rec.add("median-part-a", "m/3 <= nu(T_1)", m / 3.0, recount(med.part_a), slack);
  rec.add("median-part-b", "m/3 <= nu(T_2)", m / 3.0, recount(med.part_b), slack);
  {
    const auto meet = subtree_intersection(t, med.part_a, med.part_b);
    const bool single = meet && meet->length(t) <= 1e-9 && meet->contains(t, med.point);
    rec.add("median-parts-meet", "T_1 cap T_2 = {m_nu}", single ? 0.0 : 1.0, 0.0, 0.0);
    const std::vector<Subtree> parts{med.part_a, med.part_b};
    const double covered = subtree_union(t, parts).length(t);
    rec.add("median-parts-cover", "T_1 cup T_2 = T", t.total_length() - covered, 0.0,
            1e-9 * std::max(1.0, t.total_length()));
  }

  const auto phi = phi_nu(t, nu, med, bary);
  const MMSpace atoms = atom_space(t, nu);
  const auto phi_vals = phi.on_atoms(nu);
  const LineMeasure line = pushforward(atoms, phi_vals);
  const double c_phi = real_barycenter(line)[0];
  const double phi_scale = 1e-9 * std::max(1.0, atoms.diameter());
  rec.add("phi-mean-nonpositive", "c(phi_nu* nu) <= 0", c_phi, 0.0, phi_scale);

  for (double frac : opts.kappa_fractions) {
    const double kappa = frac * m;
    const auto sep_nu = separation(t, nu, m / 3.0, kappa / 2.0);
    const double r = sep_nu.value;
    rec.add(tag("median-ball-mass", frac),
            "m - k <= nu(B(m_nu, Sep(nu; m/3, k/2)))", m - kappa,
            ball_mass(t, nu, med.point, r), 1e-9 * std::max(1.0, m));
    const double pd = partial_diameter(t, nu, kappa);
    rec.add(tag("partial-diam-vs-sep", frac), "diam(nu, m-k) <= 2 Sep(nu; m/3, k/2)", pd, 2.0 * r);
    const double crad_tree = central_radius(t, nu, kappa, bary.point);
    rec.add(tag("diam-vs-crad", frac), "diam(nu, m-k) <= 2 CRad(nu, m-k)", pd, 2.0 * crad_tree);

    const double crad_line = central_radius(line, kappa, std::vector<double>{c_phi});
    const double sep_line_med = separation(line, m / 3.0, kappa / 2.0).value;
    const double sep_line_heavy = separation(line, m - kappa, m - kappa).value;
    const double brace = crad_line + sep_line_med + sep_line_heavy;
    rec.add(tag("phi-center-bound", frac),
            "|c(phi nu)| <= CRad(phi nu, m-k) + Sep(phi nu; m/3, k/2) + Sep(phi nu; m-k, m-k)",
            std::abs(c_phi), brace);
    rec.add(tag("crad-transfer", frac),
            "CRad(nu, m-k) <= CRad(phi nu, m-k) + Sep(nu; m/3, k/2) + Sep(phi nu; m/3, k/2) + "
            "Sep(phi nu; m-k, m-k)",
            crad_tree, crad_line + r + sep_line_med + sep_line_heavy);

    for (double p : opts.p_grid) {
      const double vp_tree = vp(t, nu, p);
      const double vp_line = vp(line, p);
      rec.add(tag("vp-transfer", frac, p),
              "V_p(nu) <= 2 m^(2/p) {CRad(phi nu) + Sep(phi nu; m/3, k/2) + Sep(phi nu; m-k, m-k)} "
              "+ 2 V_p(phi nu)",
              vp_tree, 2.0 * std::pow(m, 2.0 / p) * brace + 2.0 * vp_line);
      if (kappa > 0.0) {
        rec.add(tag("crad-vs-vp-tree", frac, p), "CRad(nu, m-k) <= V_p(nu) / (m k)^(1/p)",
                crad_tree, vp_tree / std::pow(m * kappa, 1.0 / p));
        rec.add(tag("crad-vs-vp-line", frac, p), "CRad(phi nu, m-k) <= V_p(phi nu) / (m k)^(1/p)",
                crad_line, vp_line / std::pow(m * kappa, 1.0 / p));
      }
    }
    const double v2_tree = vp(t, nu, 2.0), v2_line = vp(line, 2.0);
    rec.add(tag("v2-transfer", frac),
            "V_2(nu)^2 <= 4 m^2 {CRad(phi nu) + Sep(phi nu; m/3, k/2) + Sep(phi nu; m-k, m-k)}^2 "
            "+ 2 V_2(phi nu)^2",
            v2_tree * v2_tree, 4.0 * m * m * brace * brace + 2.0 * v2_line * v2_line);
    if (kappa > 0.0) {
      rec.add(tag("crad-vs-v2-tree", frac), "CRad(nu, m-k) <= V_2(nu) / sqrt(2 m k)", crad_tree,
              v2_tree / std::sqrt(2.0 * m * kappa));
      rec.add(tag("crad-vs-v2-line", frac), "CRad(phi nu, m-k) <= V_2(phi nu) / sqrt(2 m k)",
              crad_line, v2_line / std::sqrt(2.0 * m * kappa));
    }
  }
}

// ---------------------------------------------------------------- map checks

SpaceBounds space_bounds(const MMSpace& x, const SeparationFn& sep, const CheckOptions& opts) {
  SpaceBounds b;
  b.mass = x.total_mass();
  const double m = b.mass;
  const SeparationFn separate = sep ? sep : SeparationFn([&x](double k1, double k2) {
    return separation(x, k1, k2);
  });
  auto exact = [&](double k1, double k2) {
    const auto s = separate(k1, k2);
    if (!s.exact) throw InputError("map checks need exact separation; the space is too large");
    return s.value;
  };
  for (double frac : opts.kappa_fractions) {
    const double kappa = frac * m;
    b.kappas.push_back(kappa);
    b.sep_median.push_back(exact(m / 3.0, kappa / 2.0));
    b.sep_third.push_back(exact(kappa / 3.0, kappa / 3.0));
    b.sep_heavy.push_back(exact(m - kappa, m - kappa));
    b.obsdiam_upper.push_back(obsdiam_R(x, kappa, opts.witness, separate).upper);
    b.obscrad_upper.push_back(obscrad_R(x, kappa, opts.witness).upper);
  }
  for (double p : opts.p_grid) {
    b.p_grid.push_back(p);
    b.obslpvar_upper.push_back(obslpvar_R(x, p, opts.witness).upper);
  }
  if (std::find(b.p_grid.begin(), b.p_grid.end(), 2.0) == b.p_grid.end()) {
    b.p_grid.push_back(2.0);
    b.obslpvar_upper.push_back(obslpvar_R(x, 2.0, opts.witness).upper);
  }
  return b;
}

void check_map_inequalities(const MMSpace& x, const Tree& t, std::span<const LipschitzTreeMap> maps,
                            const std::string& instance, const SpaceBounds& b,
                            const CheckOptions& opts, CheckReport& out) {
  const double m = b.mass;
  for (std::size_t k = 0; k < b.kappas.size(); ++k) {
    BoundComparison cmp;
    cmp.instance = instance;
    cmp.kappa = b.kappas[k];
    cmp.median_bound = 2.0 * b.sep_median[k];
    cmp.line_bound = 2.0 * b.sep_third[k] + 4.0 * b.obsdiam_upper[k];
    out.comparisons.push_back(cmp);
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string name = instance + "/map" + std::to_string(i);
    Recorder rec{out, name, opts.rel_tol};
    const TreeMeasure push = pushforward(x, t, maps[i]);
    const auto bary = tree_barycenter(t, push);
    for (std::size_t k = 0; k < b.kappas.size(); ++k) {
      const double kappa = b.kappas[k];
      const double frac = kappa / m;
      const double pd = partial_diameter(t, push, kappa);
      rec.add(tag("tree-obsdiam-median", frac), "diam(f mu, m-k) <= 2 Sep(X; m/3, k/2)", pd,
              2.0 * b.sep_median[k]);
      rec.add(tag("tree-obsdiam-line", frac),
              "diam(f mu, m-k) <= 2 Sep(X; k/3, k/3) + 4 ObsDiam_R(X; -k)", pd,
              2.0 * b.sep_third[k] + 4.0 * b.obsdiam_upper[k]);
      const double crad = central_radius(t, push, kappa, bary.point);
      rec.add(tag("tree-obscrad", frac),
              "CRad(f mu, m-k) <= ObsCRad_R(X; -k) + 2 Sep(X; m/3, k/2) + Sep(X; m-k, m-k)", crad,
              b.obscrad_upper[k] + 2.0 * b.sep_median[k] + b.sep_heavy[k]);
      const auto sep_push = separation(t, push, m / 3.0, kappa / 2.0);
      if (sep_push.exact)
        rec.add(tag("sep-pushforward", frac), "Sep(f mu; m/3, k/2) <= Sep(X; m/3, k/2)",
                sep_push.value, b.sep_median[k]);
    }
    for (std::size_t j = 0; j < b.p_grid.size(); ++j) {
      const double p = b.p_grid[j];
      const double c = std::pow(2.0, 1.0 / p);
      const double constant = 2.0 * (c * (1.0 + 2.0 * c) + 1.0);
      const double v = vp(t, push, p);
      rec.add("tree-vp[p=" + short_num(p) + "]",
              "V_p(f mu) <= 2{2^(1/p)(1 + 2 2^(1/p)) + 1} ObsLpVar_R(X)", v,
              constant * b.obslpvar_upper[j]);
      if (p == 2.0)
        rec.add("tree-v2", "V_2(f mu)^2 <= (38 + 16 sqrt 2) ObsL2Var_R(X)^2", v * v,
                (38.0 + 16.0 * std::sqrt(2.0)) * b.obslpvar_upper[j] * b.obslpvar_upper[j]);
    }
  }
}

// ---------------------------------------------------------------- family report

std::vector<LevyRow> levy_report(const std::vector<InstanceSpec>& family, double kappa, double p,
                                 const WitnessOptions& opts) {
  std::vector<LevyRow> rows;
  for (const auto& spec : family) {
    const Instance inst = generate(spec);
    const auto sep = separation_for(inst);
    LevyRow row;
    row.instance = inst.name;
    row.points = inst.space.size();
    const auto s = sep(kappa, kappa);
    row.sep = s.value;
    row.sep_exact = s.exact;
    row.obsdiam = obsdiam_R(inst.space, kappa, opts, sep);
    row.obscrad = obscrad_R(inst.space, kappa, opts);
    row.obslpvar = obslpvar_R(inst.space, p, opts);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string levy_csv(const std::vector<LevyRow>& rows) {
  std::ostringstream os;
  os << "instance,points,sep,sep_exact,obsdiam_lower,obsdiam_upper,obscrad_lower,obscrad_upper,"
        "obslpvar_lower,obslpvar_upper\n";
  for (const auto& r : rows)
    os << '"' << r.instance << "\"," << r.points << ',' << num(r.sep) << ','
       << (r.sep_exact ? "true" : "false") << ',' << num(r.obsdiam.lower) << ','
       << num(r.obsdiam.upper) << ',' << num(r.obscrad.lower) << ',' << num(r.obscrad.upper) << ','
       << num(r.obslpvar.lower) << ',' << num(r.obslpvar.upper) << '\n';
  return os.str();
}

std::string levy_svg(const std::vector<LevyRow>& rows, const std::string& title) {
  constexpr double w = 640, h = 400, left = 60, right = 20, top = 40, bottom = 50;
  double ymax = 0.0;
  for (const auto& r : rows)
    for (double v : {r.sep, r.obsdiam.lower, r.obsdiam.upper})
      if (std::isfinite(v)) ymax = std::max(ymax, v);
  if (ymax <= 0.0) ymax = 1.0;
  const std::size_t n = rows.size();
  auto xpos = [&](std::size_t i) {
    return left + (n <= 1 ? 0.0 : (w - left - right) * static_cast<double>(i) / (n - 1));
  };
  auto ypos = [&](double v) { return top + (h - top - bottom) * (1.0 - v / ymax); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\""
     << h - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = ymax * k / 4.0;
    os << "<text x=\"" << left - 6 << "\" y=\"" << ypos(v) + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << short_num(v)
       << "</text>\n";
  }
  for (std::size_t i = 0; i < n; ++i)
    os << "<text x=\"" << xpos(i) << "\" y=\"" << h - bottom + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << rows[i].points
       << "</text>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">points</text>\n";
  struct Series {
    const char* label;
    const char* color;
    double LevyRow::*plain;
    double BoundEstimate::*bound;
  };
  const Series series[] = {{"Sep(k, k)", "#1f77b4", &LevyRow::sep, nullptr},
                           {"ObsDiam lower", "#2ca02c", nullptr, &BoundEstimate::lower},
                           {"ObsDiam upper", "#d62728", nullptr, &BoundEstimate::upper}};
  int legend = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      const double v = s.plain ? rows[i].*s.plain : rows[i].obsdiam.*s.bound;
      if (!std::isfinite(v)) continue;
      os << xpos(i) << ',' << ypos(v) << ' ';
    }
    os << "\"/>\n";
    const double ly = top + 14.0 * legend++;
    os << "<text x=\"" << w - right - 110 << "\" y=\"" << ly + 4 << "\" fill=\"" << s.color
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace treeconc
