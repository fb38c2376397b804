#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "radval/cli.hpp"
#include "radval/io.hpp"

using namespace radval;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& file, const std::string& text) const {
    io::write_file_atomic(path / file, text);
    return (path / file).string();
  }
};

json last_json_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, found;
  while (std::getline(in, line))
    if (!line.empty() && line.front() == '{') found = line;
  return json::parse(found);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = cli::parse_config(json::parse(R"({"grid": {"dimension": 3, "points": 10}, "levels": "0:0.5:2",
                                                  "seed": 5, "trials": 3})"),
                                   ".");
  CHECK(c.dimension == 3);
  CHECK(c.points == 10);
  CHECK(c.levels == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(c.seed == 5u);
  CHECK(c.trials == 3);

  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"gird": {}})"), "."), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"tolerance": 0})"), "."), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"grid": {"dimension": 5}})"), "."), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"levels": [0.5, 1.0]})"), "."), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"valuation": {"family": "nope"}})"), "."), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"valuation": {"family": "kernel_file", "path": "missing.json"}})"), "."),
                  std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_config(json::parse(R"({"trials": "many"})"), "."), std::invalid_argument);
}

TEST_CASE("valuation families") {
  auto c = cli::parse_config(json::parse(R"({"valuation": {"family": "builtin", "name": "hump"}, "grid": {"points": 4}})"), ".");
  const auto grid = build_grid(c.dimension, c.points);
  CHECK(cli::make_valuation(c, grid)->descriptor() == "hump");
  c.valuation = {{"family", "builtin"}, {"name", "missing"}};
  CHECK_THROWS_AS(cli::make_valuation(c, grid), std::invalid_argument);
  c.valuation = {{"family", "min"}};
  CHECK(cli::make_valuation(c, grid)->kernel() == nullptr);
  c.valuation = {{"family", "piecewise"}, {"knots", {{0.0, 0.0}, {1.0, 1.0}}}};
  CHECK(cli::make_valuation(c, grid)->kernel() != nullptr);
}

TEST_CASE("unknown command exits with usage") {
  const auto r = run({"frobnicate"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(last_json_line(r.err)["status"] == "usage_error");
  CHECK(run({}).code == cli::kExitUsage);
}

TEST_CASE("stochastic commands need a seed") {
  const auto r = run({"verify"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(last_json_line(r.err)["message"].get<std::string>().find("seed") != std::string::npos);
}

TEST_CASE("verify passes for a kernel valuation and fails for min") {
  TempDir dir("radval_cli_verify");
  const auto ok = run({"verify", "--seed", "3"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.rfind("pair_id,V_f,V_g,V_join,V_meet,residual\n", 0) == 0);

  const auto cfg = dir.write("min.json", R"({"valuation": {"family": "min"}, "grid": {"points": 4}, "trials": 20})");
  const auto bad = run({"verify", "--config", cfg, "--seed", "1"});
  CHECK(bad.code == cli::kExitCheckFailed);
  const auto diag = last_json_line(bad.err);
  CHECK(diag["invariant"] == "valuation_identity");
  CHECK(diag["inputs"].contains("f"));
}

TEST_CASE("decompose writes its table") {
  TempDir dir("radval_cli_decompose");
  const auto cfg = dir.write("c.json", R"({"valuation": {"family": "bump"}, "grid": {"points": 6}, "trials": 5})");
  const auto r = run({"decompose", "--config", cfg, "--seed", "9", "--out", (dir.path / "o").string()});
  CHECK(r.code == cli::kExitOk);
  const auto text = io::read_file(dir.path / "o" / "decompose.csv");
  CHECK(text.rfind("test_id,V,V_plus,V_minus,residual\n", 0) == 0);
}

TEST_CASE("measures on a positive kernel") {
  TempDir dir("radval_cli_measures");
  const auto cfg = dir.write("c.json", R"({"grid": {"points": 4}, "levels": "0:0.5:2"})");
  const auto r = run({"measures", "--config", cfg, "--lambda", "1", "--set", "0,1"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "lambda,mu,zeta,nu\n1,0.5,0.5,0.5\n");
  CHECK(run({"measures", "--config", cfg, "--lambda", "1", "--set", "0,9"}).code == cli::kExitUsage);
  CHECK(run({"measures", "--config", cfg}).code == cli::kExitUsage);
}

TEST_CASE("extend and extract-kernel") {
  TempDir dir("radval_cli_extend");
  const auto cfg = dir.write("c.json", R"({"grid": {"points": 4}, "valuation": {"family": "bump"}})");
  const auto f = dir.write("f.csv", "0.3,1.25,0.0,2.0\n");
  const auto r = run({"extend", "--config", cfg, "--input", f, "--tol", "1e-12"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("V,V_bar,residual\n", 0) == 0);

  const auto kfile = (dir.path / "k.json").string();
  CHECK(run({"extract-kernel", "--config", cfg, "--levels", "0:0.5:2", "--out", kfile}).code == cli::kExitOk);
  const auto k = json::parse(io::read_file(kfile));
  CHECK(k["levels"].size() == 5);
  CHECK(k["invariant"] == true);
  CHECK(run({"extract-kernel", "--config", cfg, "--budget", "3"}).code == cli::kExitUsage);

  // The extracted kernel can be read back as a valuation.
  const auto cfg2 = dir.write("c2.json", R"({"grid": {"points": 4}, "valuation": {"family": "kernel_file", "path": "k.json"}})");
  CHECK(run({"verify", "--config", cfg2, "--seed", "1"}).code == cli::kExitOk);
}

TEST_CASE("counterexample report") {
  const auto r = run({"counterexample"});
  CHECK(r.code == cli::kExitOk);
  const auto report = json::parse(r.out);
  CHECK(report["identity_residual"] == 1.0);
  CHECK(report["orthogonally_additive"] == true);
  CHECK(report["is_valuation"] == false);
}

TEST_CASE("sweep is deterministic across job counts") {
  TempDir dir("radval_cli_sweep");
  const auto cfg = dir.write("c.json", R"({"grid": {"points": 6}, "trials": 10, "seed": 4,
    "scenarios": [{}, {"valuation": {"family": "bump"}}, {"valuation": {"family": "builtin", "name": "bump_tilt"}},
                  {"grid": {"dimension": 3, "points": 9}}]})");
  const auto a = (dir.path / "a").string();
  const auto b = (dir.path / "b").string();
  CHECK(run({"sweep", "--config", cfg, "--out", a, "--jobs", "1"}).code == cli::kExitOk);
  CHECK(run({"sweep", "--config", cfg, "--out", b, "--jobs", "4"}).code == cli::kExitOk);
  for (const auto& name : {"sweep.csv", "scenario_0.csv", "scenario_3.csv"})
    CHECK(io::read_file(fs::path(a) / name) == io::read_file(fs::path(b) / name));

  const auto bad = dir.write("bad.json", R"({"seed": 1, "scenarios": [{"valuation": {"family": "min"}}]})");
  const auto r = run({"sweep", "--config", bad});
  CHECK(r.code == cli::kExitCheckFailed);
  CHECK(last_json_line(r.err)["invariant"] == "scenario_checks");
}
