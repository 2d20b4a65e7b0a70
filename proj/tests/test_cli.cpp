// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The treeconc Authors
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

std::string bin() {
  const char* b = std::getenv("TREECONC_BIN");
  return b ? b : "treeconc";
}

Run run(const std::string& args) {
  Run r;
  const std::string cmd = bin() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("treeconc_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kStar = R"({
  "tree": {"vertices": ["c", "a", "b", "d"], "edges": [["c", "a", 1], ["c", "b", 1], ["c", "d", 1]]},
  "measure": {"atoms": [["v:a", 0.3333333333333333], ["v:b", 0.3333333333333333], ["v:d", 0.3333333333333334]]}
})";

}  // namespace

TEST_CASE("gen writes a parseable instance") {
  const auto r = run("--seed 4 gen two-point --param n=10");
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["space"]["dist"][0][1] == 10.0);
  CHECK(j["space"]["mass"][1].get<double>() == doctest::Approx(0.1));
  const auto a = run("--seed 4 gen tree --param edges=6 --param atoms=4");
  const auto b = run("--seed 4 gen tree --param edges=6 --param atoms=4");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out).contains("measure"));
}

TEST_CASE("median and barycenter of a symmetric star") {
  const auto in = temp_file("star.json", kStar);
  const auto m = run("median " + in);
  REQUIRE(m.status == 0);
  const auto jm = json::parse(m.out);
  CHECK(jm["point"].is_string());
  CHECK(jm["certificate"]["margin"].get<double>() >= -1e-12);
  const auto b = run("barycenter " + in);
  REQUIRE(b.status == 0);
  const auto jb = json::parse(b.out);
  CHECK(jb["certificate"]["max_violation"].get<double>() <= jb["certificate"]["tolerance"].get<double>());
  CHECK(jb["objective"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("w1 agrees with the oracle") {
  const auto in = temp_file("w1.json", R"({
    "tree": {"vertices": ["c", "a", "b", "d"], "edges": [["c", "a", 1], ["c", "b", 1], ["c", "d", 1]]},
    "mu": {"atoms": [["v:c", 1]]},
    "nu": {"atoms": [["v:a", 0.5], [{"edge": ["c", "b"], "offset": 0.5}, 0.5]]}
  })");
  const auto r = run("w1 --oracle " + in);
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["w1"].get<double>() == doctest::Approx(0.75));
  CHECK(j["agree"] == true);
}

TEST_CASE("observable bounds on the two-point space") {
  const auto in = temp_file("two.json", R"({"dist": [[0, 10], [10, 0]], "mass": [0.9, 0.1]})");
  const auto r = run("obsdiam --kappa 0.3 " + in);
  REQUIRE(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["upper"] == 0.0);
  CHECK(run("obscrad --kappa 0.3 " + in).status == 0);
  CHECK(run("obsvar --p 2 " + in).status == 0);
}

TEST_CASE("check exit codes") {
  const auto star = temp_file("star_check.json", kStar);
  CHECK(run("check " + star).status == 0);
  const auto r = run("--out csv check --instances 10 --maps 5 --suite all");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("instance,", 0) == 0);
  // A tolerance of -1 makes every non-strict check fail.
  CHECK(run("--tol -1 check " + star).status == 1);
}

TEST_CASE("levy writes CSV and SVG") {
  const auto svg = (std::filesystem::temp_directory_path() / "treeconc_cli_levy.svg").string();
  std::filesystem::remove(svg);
  const auto r = run("--out csv --svg " + svg + " levy --family two-point --from 2 --to 5 --kappa 0.3");
  REQUIRE(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(std::filesystem::exists(svg));
  CHECK(r.out == run("--out csv levy --family two-point --from 2 --to 5 --kappa 0.3").out);
}

TEST_CASE("bad input exits with status 2") {
  CHECK(run("median /nonexistent/file.json").status == 2);
  CHECK(run("median " + temp_file("garbage.json", "{not json")).status == 2);
  CHECK(run("median " + temp_file("notree.json", R"({"measure": {"atoms": []}})")).status == 2);
  CHECK(run("gen hypercube --param n=0").status == 2);
  CHECK(run("gen cloud --param k=x").status == 2);
  CHECK(run("obsdiam --kappa -1 " + temp_file("two2.json", R"({"dist": [[0, 1], [1, 0]], "mass": [1, 1]})"))
            .status == 2);
  CHECK(run("--out csv median " + temp_file("star2.json", kStar)).status == 2);
}
