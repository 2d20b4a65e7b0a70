// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
//
// treeconc: command-line front end. Reads JSON, writes JSON or CSV to stdout.
// Exit status: 0 on success (and all checks passing), 1 when a check fails,
// 2 on bad input.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "treeconc/harness.hpp"
#include "treeconc/json_io.hpp"
#include "treeconc/kernels.hpp"
#include "treeconc/transport.hpp"

namespace {

using namespace treeconc;
using io::json;

struct Globals {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out = "json";
  std::string svg;
  std::string simd;
};

json read_input(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("input needs a \"") + key + "\" field");
  return j.at(key);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void require_json(const Globals& g, const char* cmd) {
  if (g.out != "json") throw InputError(std::string(cmd) + " only writes JSON");
}

InstanceSpec parse_spec(const std::string& generator, const std::vector<std::string>& params,
                        std::uint64_t seed) {
  InstanceSpec s;
  s.generator = generator;
  s.seed = seed;
  for (const auto& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("parameters are key=value, got '" + kv + "'");
    try {
      s.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("parameter value is not a number: '" + kv + "'");
    }
  }
  return s;
}

WitnessOptions witness_options(const Globals& g, std::size_t restarts, std::size_t mcshane) {
  WitnessOptions o;
  o.seed = g.seed;
  o.restarts = restarts;
  o.mcshane_sets = mcshane;
  return o;
}

MMSpace space_of(const json& in) {
  if (in.contains("space")) return io::space_from_json(in.at("space"));
  return io::space_from_json(in);
}

int emit_report(const Globals& g, CheckReport& report) {
  if (g.out == "csv") std::cout << report_csv(report);
  else std::cout << io::to_json(report).dump(2) << '\n';
  std::cerr << report.records.size() << " checks, " << report.failures() << " failed\n";
  return report.all_pass() ? 0 : 1;
}

CheckReport run_check(const Globals& g, const std::string& input, std::size_t instances,
                      std::size_t maps, const std::string& suite) {
  const auto start = std::chrono::steady_clock::now();
  CheckOptions opts;
  opts.rel_tol = g.tol;
  opts.witness.seed = g.seed;
  CheckReport report;
  report.seed = g.seed;

  auto map_suite = [&](const MMSpace& x, const Tree& t, const std::string& name, std::uint64_t seed,
                       CheckReport& out) {
    Rng rng(seed);
    std::vector<LipschitzTreeMap> fs;
    for (std::size_t i = 0; i < maps; ++i) fs.push_back(sample_lipschitz_tree_map(x, t, rng));
    const auto bounds = space_bounds(x, {}, opts);
    check_map_inequalities(x, t, fs, name, bounds, opts, out);
  };

  if (!input.empty()) {
    const json in = read_input(input);
    if (in.contains("measure")) {
      const Tree t = io::tree_from_json(field(in, "tree"));
      const TreeMeasure nu = io::tree_measure_from_json(t, in.at("measure"));
      check_measure_inequalities(t, nu, input, opts, report);
    } else {
      const MMSpace x = space_of(in);
      Rng rng(g.seed);
      const Tree t = in.contains("tree") ? io::tree_from_json(in.at("tree")) : random_tree(rng, 10);
      map_suite(x, t, input, derive_seed(g.seed, 0), report);
    }
  } else {
    if (suite != "measure" && suite != "map" && suite != "all")
      throw InputError("--suite is measure, map or all");
    if (suite != "map") {
      std::vector<CheckReport> parts(instances);
      parallel_for(instances, [&](std::size_t i) {
        InstanceSpec spec;
        Rng rng(derive_seed(g.seed, i));
        spec.generator = "tree";
        spec.params["edges"] = std::uniform_int_distribution<int>(1, 20)(rng);
        spec.params["atoms"] = std::uniform_int_distribution<int>(1, 12)(rng);
        spec.seed = derive_seed(g.seed, i);
        const Instance inst = generate(spec);
        check_measure_inequalities(*inst.tree, *inst.measure, inst.name, opts, parts[i]);
      });
      for (auto& p : parts) report.append(std::move(p));
    }
    if (suite != "measure") {
      const std::size_t spaces = std::max<std::size_t>(1, instances / 10);
      std::vector<CheckReport> parts(spaces);
      parallel_for(spaces, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(g.seed ^ 0x5eedull, i);
        Rng rng(seed);
        InstanceSpec spec;
        spec.generator = "graph";
        spec.params["k"] = std::uniform_int_distribution<int>(2, 7)(rng);
        spec.params["wmax"] = 3;
        spec.seed = seed;
        const Instance inst = generate(spec);
        const Tree t = random_tree(rng, 10);
        map_suite(inst.space, t, inst.name, seed + 1, parts[i]);
      });
      for (auto& p : parts) report.append(std::move(p));
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treeconc: medians, barycenters, transport and observable invariants on trees"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for every random choice");
  app.add_option("--tol", g.tol, "relative tolerance for inequality checks");
  app.add_option("--out", g.out, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--svg", g.svg, "write the levy chart to this path");
  app.add_option("--simd", g.simd, "kernel backend")->check(CLI::IsMember({"scalar", "avx2"}));

  std::string input = "-";
  std::string generator;
  std::vector<std::string> params;
  double kappa = 0.1, p = 1.0;
  std::size_t restarts = 16, mcshane = 64, maps = 50, instances = 100;
  bool oracle = false, unnormalized = false;
  std::string suite = "all", family = "hypercube";
  int from = 2, to = 12;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("generator", generator, "hypercube, two-point, path, cloud, graph or tree")->required();
  gen->add_option("--param", params, "generator parameter key=value");

  auto* median = app.add_subcommand("median", "median of a tree measure");
  auto* bary = app.add_subcommand("barycenter", "barycenter of a tree measure");
  auto* w1 = app.add_subcommand("w1", "Wasserstein-1 transport cost between two tree measures");
  w1->add_flag("--oracle", oracle, "cross-check with the transportation simplex");
  auto* obsdiam = app.add_subcommand("obsdiam", "observable diameter bounds");
  auto* obscrad = app.add_subcommand("obscrad", "observable central radius bounds");
  auto* obsvar = app.add_subcommand("obsvar", "observable Lp-variation bounds");
  for (auto* c : {median, bary, w1, obsdiam, obscrad, obsvar})
    c->add_option("input", input, "JSON input file, - for stdin");
  for (auto* c : {obsdiam, obscrad}) c->add_option("--kappa", kappa, "discarded mass");
  obsvar->add_option("--p", p, "exponent");
  for (auto* c : {obsdiam, obscrad, obsvar}) {
    c->add_option("--restarts", restarts, "coordinate-ascent restarts");
    c->add_option("--mcshane", mcshane, "random McShane witness sets");
  }

  std::string check_input;
  auto* check = app.add_subcommand("check", "run the inequality suite");
  check->add_option("input", check_input, "tree+measure or space(+tree) JSON; random suite if absent");
  check->add_option("--instances", instances, "random measures in the suite");
  check->add_option("--maps", maps, "sampled maps per space");
  check->add_option("--suite", suite, "measure, map or all");

  auto* levy = app.add_subcommand("levy", "separation and observable bounds along a family");
  levy->add_option("--family", family, "hypercube or two-point")
      ->check(CLI::IsMember({"hypercube", "two-point"}));
  levy->add_option("--from", from, "first family parameter");
  levy->add_option("--to", to, "last family parameter");
  levy->add_option("--kappa", kappa, "discarded mass");
  levy->add_option("--p", p, "exponent for the variation column");
  levy->add_flag("--unnormalized", unnormalized, "raw Hamming distance instead of distance / n");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!g.simd.empty())
      kernels::set_backend(g.simd == "avx2" ? kernels::Backend::avx2 : kernels::Backend::scalar);

    if (*gen) {
      require_json(g, "gen");
      const Instance inst = generate(parse_spec(generator, params, g.seed));
      json out{{"name", inst.name}, {"space", io::to_json(inst.space)}};
      if (inst.tree) out["tree"] = io::to_json(*inst.tree);
      if (inst.measure) out["measure"] = io::to_json(*inst.tree, *inst.measure);
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*median || *bary) {
      require_json(g, median->parsed() ? "median" : "barycenter");
      const json in = read_input(input);
      const Tree t = io::tree_from_json(field(in, "tree"));
      const TreeMeasure nu = io::tree_measure_from_json(t, field(in, "measure"));
      json out;
      if (*median) {
        const auto r = tree_median(t, nu);
        const double m = nu.total_mass();
        out = {{"point", io::point_to_json(t, r.point)},
               {"parts", {io::to_json(t, r.part_a), io::to_json(t, r.part_b)}},
               {"masses", {r.mass_a, r.mass_b}},
               {"certificate",
                {{"third", m / 3.0}, {"margin", std::min(r.mass_a, r.mass_b) - m / 3.0}}}};
      } else {
        const auto r = tree_barycenter(t, nu);
        out = {{"point", io::point_to_json(t, r.point)},
               {"objective", r.objective},
               {"certificate", {{"max_violation", r.max_violation}, {"tolerance", r.tolerance}}}};
      }
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*w1) {
      require_json(g, "w1");
      const json in = read_input(input);
      const Tree t = io::tree_from_json(field(in, "tree"));
      const TreeMeasure mu = io::tree_measure_from_json(t, field(in, "mu"));
      const TreeMeasure nu = io::tree_measure_from_json(t, field(in, "nu"));
      const double cost = w1_tree(t, mu, nu);
      json out{{"w1", cost}};
      int status = 0;
      if (oracle) {
        const double ref = w1_oracle(t, mu, nu).cost;
        const bool agree = std::abs(cost - ref) <= g.tol * std::max(1.0, std::abs(ref));
        out["oracle"] = ref;
        out["agree"] = agree;
        status = agree ? 0 : 1;
      }
      std::cout << out.dump(2) << '\n';
      return status;
    }
    if (*obsdiam || *obscrad || *obsvar) {
      require_json(g, "observable estimates");
      const MMSpace x = space_of(read_input(input));
      const auto o = witness_options(g, restarts, mcshane);
      const BoundEstimate b = *obsdiam   ? obsdiam_R(x, kappa, o)
                              : *obscrad ? obscrad_R(x, kappa, o)
                                         : obslpvar_R(x, p, o);
      std::cout << io::to_json(b).dump(2) << '\n';
      return 0;
    }
    if (*check) {
      CheckReport report = run_check(g, check_input, instances, maps, suite);
      return emit_report(g, report);
    }
    if (*levy) {
      if (from < 1 || to < from) throw InputError("need 1 <= --from <= --to");
      std::vector<InstanceSpec> specs;
      for (int n = from; n <= to; ++n) {
        InstanceSpec s;
        s.generator = family;
        s.seed = g.seed;
        s.params["n"] = n;
        if (family == "hypercube") s.params["normalized"] = unnormalized ? 0.0 : 1.0;
        specs.push_back(std::move(s));
      }
      WitnessOptions o;
      o.seed = g.seed;
      const auto rows = levy_report(specs, kappa, p, o);
      if (g.out == "csv") std::cout << levy_csv(rows);
      else std::cout << io::to_json(rows).dump(2) << '\n';
      if (!g.svg.empty()) {
        std::ostringstream title;
        title << family << " family, k = " << kappa;
        write_file(g.svg, levy_svg(rows, title.str()));
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
