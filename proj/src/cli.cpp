#include "radval/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "radval/builtins.hpp"
#include "radval/errors.hpp"
#include "radval/extension.hpp"
#include "radval/io.hpp"
#include "radval/jordan.hpp"
#include "radval/kernel_extract.hpp"
#include "radval/measures.hpp"
#include "radval/random.hpp"

namespace radval::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::set<std::string> kConfigKeys = {"grid",       "valuation", "levels",   "seed",
                                           "trials",     "tolerance", "value_max", "scenarios",
                                           "level_steps", "agreement_tolerance"};

const std::set<std::string> kFamilies = {"poly", "piecewise", "bump", "builtin", "kernel_file", "min", "step"};

std::vector<double> parse_level_text(const std::string& text) {
  std::vector<double> parts;
  std::istringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ':')) {
    try {
      parts.push_back(std::stod(piece));
    } catch (const std::exception&) {
      throw std::invalid_argument("levels: cannot parse '" + piece + "' in '" + text + "'");
    }
  }
  if (parts.size() != 3) throw std::invalid_argument("levels must look like start:step:stop, got '" + text + "'");
  return level_range(parts[0], parts[2], parts[1]);
}

std::vector<double> parse_levels(const json& j) {
  if (j.is_string()) return parse_level_text(j.get<std::string>());
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_object()) return level_range(j.at("start").get<double>(), j.at("stop").get<double>(), j.at("step").get<double>());
  throw std::invalid_argument("levels must be a string, an array or {start, stop, step}");
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(key) + " must be > 0");
}

Anisotropy parse_anisotropy(const json& v) {
  Anisotropy a;
  if (v.contains("anisotropy")) {
    const auto& j = v.at("anisotropy");
    a.base = j.value("base", 1.0);
    a.slope = j.value("slope", 0.0);
    a.axis = j.value("axis", 0);
  }
  return a;
}

fs::path resolve(const ExperimentConfig& c, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : c.base_dir / path;
}

void validate_valuation(const json& v, const ExperimentConfig& c) {
  if (!v.is_object() || !v.contains("family")) throw std::invalid_argument("valuation must be an object with a family");
  const auto family = v.at("family").get<std::string>();
  if (!kFamilies.count(family)) throw std::invalid_argument("valuation: unknown family '" + family + "'");
  if (family == "poly" && (!v.contains("coefficients") || v.at("coefficients").empty())) {
    throw std::invalid_argument("valuation: poly needs non-empty coefficients");
  }
  if (family == "piecewise" && (!v.contains("knots") || v.at("knots").empty())) {
    throw std::invalid_argument("valuation: piecewise needs knots");
  }
  if (family == "builtin" && !v.contains("name")) throw std::invalid_argument("valuation: builtin needs a name");
  if (family == "kernel_file") {
    const auto path = resolve(c, v.at("path").get<std::string>());
    if (!fs::exists(path)) throw std::invalid_argument("valuation: kernel file " + path.string() + " does not exist");
  }
}

// ---------------------------------------------------------------------------
// Output helpers

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

class Reporter {
 public:
  Reporter(const CommonOptions& opts, std::ostream& out, std::ostream& err) : opts_(opts), out_(out), err_(err) {}

  void emit(const std::string& filename, const std::string& content) {
    if (opts_.out_dir.empty()) {
      out_ << content;
      return;
    }
    fs::create_directories(opts_.out_dir);
    io::write_file_atomic(fs::path(opts_.out_dir) / filename, content);
  }

  int fail(const std::string& command, const std::string& invariant, double tolerance, double observed, json inputs) {
    json d{{"status", "check_failed"},
           {"command", command},
           {"invariant", invariant},
           {"tolerance", tolerance},
           {"observed", observed},
           {"inputs", std::move(inputs)}};
    err_ << d.dump() << '\n';
    return kExitCheckFailed;
  }

  std::ostream& out() { return out_; }

 private:
  const CommonOptions& opts_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  row += '\n';
  return row;
}

std::string num(double x) { return io::format_double(x); }

json values_of(const RadialFunction& f) { return std::vector<double>(f.values().begin(), f.values().end()); }

struct Setup {
  ExperimentConfig config;
  GridPtr grid;
  ValuationPtr valuation;
  double value_max;
};

ExperimentConfig load_config(const CommonOptions& opts) {
  if (opts.config_path.empty()) return parse_config(json::object(), ".");
  json j;
  try {
    j = json::parse(io::read_file(opts.config_path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + opts.config_path + " is not valid JSON: " + e.what());
  }
  return parse_config(j, fs::path(opts.config_path).parent_path());
}

Setup make_setup(ExperimentConfig config) {
  Setup s;
  s.grid = build_grid(config.dimension, config.points);
  s.valuation = make_valuation(config, s.grid);
  if (config.value_max > 0.0) {
    s.value_max = config.value_max;
  } else if (const Kernel* k = s.valuation->kernel()) {
    s.value_max = k->max_level();
  } else {
    s.value_max = config.levels.back();
  }
  if (const Kernel* k = s.valuation->kernel(); k && s.value_max > k->max_level()) {
    throw std::invalid_argument("value_max exceeds the kernel level range");
  }
  s.config = std::move(config);
  return s;
}

std::uint64_t require_seed(const CommonOptions& opts, const ExperimentConfig& config, const std::string& command) {
  if (opts.seed) return *opts.seed;
  if (config.seed) return *config.seed;
  throw std::invalid_argument(command + " is stochastic: pass --seed or set \"seed\" in the config");
}

// ---------------------------------------------------------------------------
// Commands

int cmd_verify(const CommonOptions& opts, Reporter& rep) {
  const auto s = make_setup(load_config(opts));
  Rng rng(require_seed(opts, s.config, "verify"));
  const auto& V = *s.valuation;

  std::string csv = "pair_id,V_f,V_g,V_join,V_meet,residual\n";
  double worst = 0.0;
  json worst_inputs;
  for (int p = 0; p < s.config.trials; ++p) {
    const auto f = random_radial(s.grid, rng, s.value_max);
    const auto g = random_radial(s.grid, rng, s.value_max);
    const double vf = V(f), vg = V(g), vj = V(join(f, g)), vm = V(meet(f, g));
    const double residual = std::abs(vj + vm - vf - vg);
    csv += csv_row({std::to_string(p), num(vf), num(vg), num(vj), num(vm), num(residual)});
    if (residual > worst || worst_inputs.is_null()) {
      worst = std::max(worst, residual);
      worst_inputs = {{"pair_id", p}, {"f", values_of(f)}, {"g", values_of(g)}};
    }
  }
  rep.emit("verify.csv", csv);
  if (worst > s.config.tolerance) {
    return rep.fail("verify", "valuation_identity", s.config.tolerance, worst, worst_inputs);
  }
  return kExitOk;
}

int cmd_decompose(const CommonOptions& opts, Reporter& rep) {
  const auto s = make_setup(load_config(opts));
  Rng rng(require_seed(opts, s.config, "decompose"));
  const auto V = center(s.valuation, s.grid);

  std::vector<RadialFunction> suite;
  for (int t = 0; t < s.config.trials; ++t) suite.push_back(random_radial(s.grid, rng, s.value_max));
  SearchOptions search;
  search.seed = rng.next();
  const int steps = s.config.valuation.value("level_steps", 8);
  const auto parts = decompose(V, suite, steps, search);

  std::string csv = "test_id,V,V_plus,V_minus,residual\n";
  double worst = 0.0, lowest = 0.0;
  int worst_id = -1, lowest_id = -1;
  for (std::size_t t = 0; t < suite.size(); ++t) {
    const double v = (*V)(suite[t]), p = (*parts.plus)(suite[t]), m = (*parts.minus)(suite[t]);
    const double residual = std::abs(v - (p - m));
    csv += csv_row({std::to_string(t), num(v), num(p), num(m), num(residual)});
    if (residual > worst) worst = residual, worst_id = static_cast<int>(t);
    if (std::min(p, m) < lowest) lowest = std::min(p, m), lowest_id = static_cast<int>(t);
  }
  rep.emit("decompose.csv", csv);

  const auto zero = RadialFunction::zero(s.grid);
  const double at_zero = std::max(std::abs((*parts.plus)(zero)), std::abs((*parts.minus)(zero)));
  if (worst > s.config.tolerance) {
    return rep.fail("decompose", "jordan_residual", s.config.tolerance, worst,
                    {{"test_id", worst_id}, {"f", values_of(suite[static_cast<std::size_t>(worst_id)])}});
  }
  if (lowest < -s.config.tolerance) {
    return rep.fail("decompose", "parts_nonnegative", s.config.tolerance, lowest,
                    {{"test_id", lowest_id}, {"f", values_of(suite[static_cast<std::size_t>(lowest_id)])}});
  }
  if (at_zero > 1e-12) return rep.fail("decompose", "parts_vanish_at_zero", 1e-12, at_zero, json::object());
  return kExitOk;
}

GridSubset parse_set(const std::string& text, const GridPtr& grid) {
  if (text == "all") return GridSubset::full(grid);
  std::vector<std::size_t> idx;
  std::istringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    if (piece.empty()) continue;
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--set: cannot parse '" + piece + "'");
    }
    if (used != piece.size() || v < 0) throw std::invalid_argument("--set: bad index '" + piece + "'");
    idx.push_back(static_cast<std::size_t>(v));
  }
  return GridSubset::of(grid, idx);
}

int cmd_measures(const CommonOptions& opts, double lambda, const std::string& set_text, Reporter& rep) {
  const auto s = make_setup(load_config(opts));
  if (s.valuation->kernel() == nullptr) throw std::invalid_argument("measures needs a kernel valuation");
  const auto A = parse_set(set_text, s.grid);
  const auto V = center(s.valuation, s.grid);

  double mu = 0.0, zeta = 0.0;
  json mu_json;
  if (V->is_positive()) {
    const auto m = control_measure(*V, lambda);
    mu = m(A);
    zeta = content(*V, lambda, A);
    mu_json = io::to_json(m);
  } else {
    const auto parts = decompose(V, {});
    const auto m1 = control_measure(*parts.plus, lambda);
    const auto m2 = control_measure(*parts.minus, lambda);
    std::vector<double> d(m1.density());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += m2.density()[i];
    const GridMeasure m(s.grid, std::move(d), lambda);
    mu = m(A);
    zeta = content(*parts.plus, lambda, A) - content(*parts.minus, lambda, A);
    mu_json = io::to_json(m);
  }
  const auto nu_measure = representing_measure(V, s.grid, lambda);
  const double nu = nu_measure(A);

  rep.emit("measures.csv", "lambda,mu,zeta,nu\n" + csv_row({num(lambda), num(mu), num(zeta), num(nu)}));
  if (!opts.out_dir.empty()) {
    rep.emit("mu.json", mu_json.dump(2) + "\n");
    rep.emit("nu.json", io::to_json(nu_measure).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_extend(const CommonOptions& opts, const std::string& input, double tol, Reporter& rep) {
  const auto s = make_setup(load_config(opts));
  require_positive(tol, "--tol");
  const auto f = io::radial_from_csv(io::read_file(input), s.grid);
  const double v = (*s.valuation)(f);
  const double vbar = extend_bounded(s.valuation, f, tol);
  const double residual = std::abs(vbar - v);
  rep.emit("extend.csv", "V,V_bar,residual\n" + csv_row({num(v), num(vbar), num(residual)}));
  const double limit = s.config.valuation.value("agreement_tolerance", 1e-9);
  if (residual > limit) {
    return rep.fail("extend", "extension_agreement", limit, residual, {{"f", values_of(f)}, {"tol", tol}});
  }
  return kExitOk;
}

int cmd_extract(const CommonOptions& opts, const std::string& levels_text, const std::string& out_file,
                std::optional<std::size_t> budget, Reporter& rep) {
  const auto s = make_setup(load_config(opts));
  const auto levels = levels_text.empty() ? s.config.levels : parse_level_text(levels_text);
  ExtractOptions eo;
  eo.budget = budget;
  const auto k = extract_kernel(s.valuation, s.grid, levels, eo);
  const auto text = io::to_json(k).dump(2) + "\n";
  if (out_file.empty()) {
    rep.out() << text;
  } else {
    io::write_file_atomic(out_file, text);
  }
  return kExitOk;
}

/// f = chi of every direction but index 1, g = chi of index 1.
std::pair<RadialFunction, RadialFunction> canonical_pair(const GridPtr& grid) {
  std::vector<double> f(grid->size(), 1.0), g(grid->size(), 0.0);
  f[1] = 0.0;
  g[1] = 1.0;
  return {RadialFunction(grid, f), RadialFunction(grid, g)};
}

int cmd_counterexample(const CommonOptions& opts, Reporter& rep) {
  const auto config = load_config(opts);
  const auto grid = build_grid(config.dimension, config.points);
  const auto phi = min_functional();
  const auto [f, g] = canonical_pair(grid);
  const double identity = check_valuation_identity(*phi, f, g);

  // Every admissible triple on a 3-direction grid with values {0, 1, 2}
  // whose members share a zero.
  const auto small = build_grid(2, 3);
  std::size_t triples = 0;
  double additive = 0.0;
  std::vector<double> a(3), b(3), c(3);
  for (int code = 0; code < 19683; ++code) {
    int x = code;
    for (int i = 0; i < 3; ++i) a[static_cast<std::size_t>(i)] = x % 3, x /= 3;
    for (int i = 0; i < 3; ++i) b[static_cast<std::size_t>(i)] = x % 3, x /= 3;
    for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = x % 3, x /= 3;
    bool disjoint = true, common_zero = false;
    for (std::size_t i = 0; i < 3; ++i) {
      disjoint = disjoint && std::min(a[i], b[i]) == 0.0;
      common_zero = common_zero || (a[i] == 0.0 && b[i] == 0.0 && c[i] == 0.0);
    }
    if (!disjoint || !common_zero) continue;
    ++triples;
    additive = std::max(additive, check_additive(*phi, RadialFunction(small, a), RadialFunction(small, b),
                                                 RadialFunction(small, c)));
  }

  json report{{"functional", phi->descriptor()},
              {"canonical_pair", {{"f", values_of(f)}, {"g", values_of(g)}}},
              {"identity_residual", identity},
              {"additive_triples", triples},
              {"additive_max_residual", additive},
              {"orthogonally_additive", additive <= 1e-12},
              {"is_valuation", identity == 0.0}};
  rep.emit("counterexample.json", report.dump(2) + "\n");
  if (identity != 1.0) return rep.fail("counterexample", "min_functional_identity_residual_is_one", 0.0, identity, report);
  if (additive > 1e-12) return rep.fail("counterexample", "min_functional_orthogonally_additive", 1e-12, additive, report);
  return kExitOk;
}

struct ScenarioResult {
  std::string descriptor;
  double identity = 0.0;
  double decomposition = 0.0;
  double roundtrip = 0.0;
  double kernel_error = 0.0;
  bool passed = false;
  std::string error;
};

ScenarioResult run_scenario(const Setup& s, std::uint64_t master, std::size_t index) {
  ScenarioResult r;
  r.descriptor = s.valuation->descriptor();
  Rng rng(master, index);
  const auto& V = *s.valuation;
  for (int p = 0; p < s.config.trials; ++p) {
    const auto f = random_radial(s.grid, rng, s.value_max);
    const auto g = random_radial(s.grid, rng, s.value_max);
    r.identity = std::max(r.identity, check_valuation_identity(V, f, g));
  }
  const auto centered = center(s.valuation, s.grid);
  std::vector<RadialFunction> suite;
  for (int t = 0; t < s.config.trials; ++t) suite.push_back(random_radial(s.grid, rng, s.value_max));
  SearchOptions search;
  search.seed = rng.next();
  r.decomposition = decompose(centered, suite, s.config.valuation.value("level_steps", 8), search).residual_report;

  const auto k = extract_kernel(s.valuation, s.grid, s.config.levels);
  r.roundtrip = roundtrip_error(s.valuation, k, s.config.trials, rng.next());
  if (const Kernel* src = s.valuation->kernel(); src && src->levels() == k.levels()) {
    const Kernel c = src->centered();
    for (std::size_t i = 0; i < c.values().size(); ++i)
      r.kernel_error = std::max(r.kernel_error, std::abs(c.values()[i] - k.values()[i]));
  }
  const double tol = s.config.tolerance;
  r.passed = r.identity <= tol && r.decomposition <= tol && r.roundtrip <= tol && r.kernel_error <= tol;
  return r;
}

int cmd_sweep(const CommonOptions& opts, Reporter& rep) {
  const auto base = load_config(opts);
  const auto master = require_seed(opts, base, "sweep");
  if (base.scenarios.empty()) throw std::invalid_argument("sweep needs a non-empty \"scenarios\" array");

  std::vector<Setup> setups;
  for (std::size_t i = 0; i < base.scenarios.size(); ++i) {
    const auto& patch = base.scenarios[i];
    if (!patch.is_object()) throw std::invalid_argument("scenario " + std::to_string(i) + " must be an object");
    if (patch.contains("scenarios") || patch.contains("seed")) {
      throw std::invalid_argument("scenario " + std::to_string(i) + " may not set scenarios or seed");
    }
    json merged = json::object();
    merged["grid"] = {{"dimension", base.dimension}, {"points", base.points}};
    merged["valuation"] = base.valuation;
    merged["levels"] = base.levels;
    merged["trials"] = base.trials;
    merged["tolerance"] = base.tolerance;
    if (base.value_max > 0.0) merged["value_max"] = base.value_max;
    merged.merge_patch(patch);
    try {
      setups.push_back(make_setup(parse_config(merged, base.base_dir)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("scenario " + std::to_string(i) + ": " + e.what());
    }
  }

  std::vector<ScenarioResult> results(setups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < setups.size(); i = next++) {
      try {
        results[i] = run_scenario(setups[i], master, i);
      } catch (const std::exception& e) {
        results[i].descriptor = setups[i].valuation->descriptor();
        results[i].error = e.what();
      }
    }
  };
  const int jobs = std::clamp(opts.jobs, 1, static_cast<int>(setups.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string summary = "scenario,descriptor,identity_residual,decomposition_residual,roundtrip_error,kernel_error,passed\n";
  json failures = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const double tol = setups[i].config.tolerance;
    std::string detail = "check,value,tolerance,passed\n";
    detail += csv_row({"identity_residual", num(r.identity), num(tol), r.identity <= tol ? "1" : "0"});
    detail += csv_row({"decomposition_residual", num(r.decomposition), num(tol), r.decomposition <= tol ? "1" : "0"});
    detail += csv_row({"roundtrip_error", num(r.roundtrip), num(tol), r.roundtrip <= tol ? "1" : "0"});
    detail += csv_row({"kernel_error", num(r.kernel_error), num(tol), r.kernel_error <= tol ? "1" : "0"});
    if (!opts.out_dir.empty()) rep.emit("scenario_" + std::to_string(i) + ".csv", detail);
    summary += csv_row({std::to_string(i), r.descriptor, num(r.identity), num(r.decomposition), num(r.roundtrip),
                        num(r.kernel_error), r.passed ? "1" : "0"});
    if (!r.passed) {
      failures.push_back({{"scenario", i}, {"descriptor", r.descriptor}, {"identity_residual", r.identity},
                          {"decomposition_residual", r.decomposition}, {"roundtrip_error", r.roundtrip},
                          {"kernel_error", r.kernel_error}, {"error", r.error}});
    }
  }
  rep.emit("sweep.csv", summary);
  if (!failures.empty()) {
    return rep.fail("sweep", "scenario_checks", base.tolerance, static_cast<double>(failures.size()),
                    {{"failed_scenarios", failures}});
  }
  return kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& opts, bool out_is_dir = true) {
  sub->add_option("--config", opts.config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  if (out_is_dir) sub->add_option("--out", opts.out_dir, "Output directory (stdout when omitted)");
  sub->add_option("--seed", opts.seed, "Master seed (u64)");
  sub->add_option("--jobs", opts.jobs, "Parallel scenarios")->check(CLI::PositiveNumber);
}

}  // namespace

ExperimentConfig parse_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ExperimentConfig c;
  c.base_dir = base_dir.empty() ? fs::path(".") : base_dir;
  try {
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.dimension = g.value("dimension", 2);
      c.points = g.value("points", std::size_t{32});
    }
    if (c.dimension != 2 && c.dimension != 3) throw std::invalid_argument("grid.dimension must be 2 or 3");
    if (c.points < 2) throw std::invalid_argument("grid.points must be >= 2");
    if (j.contains("valuation")) c.valuation = j.at("valuation");
    c.levels = j.contains("levels") ? parse_levels(j.at("levels")) : level_range(0.0, 2.0, 0.1);
    if (c.levels.empty() || c.levels.front() != 0.0) throw std::invalid_argument("levels must start at 0");
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    c.trials = j.value("trials", 100);
    if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
    c.tolerance = j.value("tolerance", 1e-10);
    require_positive(c.tolerance, "tolerance");
    c.value_max = j.value("value_max", 0.0);
    if (j.contains("value_max")) require_positive(c.value_max, "value_max");
    if (j.contains("level_steps")) c.valuation["level_steps"] = j.at("level_steps").get<int>();
    if (j.contains("agreement_tolerance")) {
      const double a = j.at("agreement_tolerance").get<double>();
      require_positive(a, "agreement_tolerance");
      c.valuation["agreement_tolerance"] = a;
    }
    if (j.contains("scenarios")) {
      c.scenarios = j.at("scenarios");
      if (!c.scenarios.is_array()) throw std::invalid_argument("scenarios must be an array");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  validate_valuation(c.valuation, c);
  return c;
}

ValuationPtr make_valuation(const ExperimentConfig& c, const GridPtr& grid) {
  const auto& v = c.valuation;
  const auto family = v.at("family").get<std::string>();
  try {
    if (family == "min") return min_functional();
    if (family == "step") return step_functional(v.value("threshold", 1.0), v.value("height", 1.0));
    if (family == "kernel_file") {
      const auto path = resolve(c, v.at("path").get<std::string>());
      return kernel_valuation(io::kernel_from_json(json::parse(io::read_file(path)), grid), path.filename().string());
    }
    if (family == "builtin") {
      const auto name = v.at("name").get<std::string>();
      for (auto& nk : builtin_kernels(grid, c.levels))
        if (nk.name == name) return kernel_valuation(std::move(nk.kernel), name);
      throw std::invalid_argument("valuation: no builtin kernel named '" + name + "'");
    }
    Theta theta;
    if (family == "poly") {
      theta = poly_theta(v.at("coefficients").get<std::vector<double>>());
    } else if (family == "piecewise") {
      theta = piecewise_theta(v.at("knots").get<std::vector<std::pair<double, double>>>());
    } else {
      theta = bump_theta(v.value("amplitude", 1.0), v.value("width", 1.0));
    }
    return kernel_valuation(sample_kernel(grid, theta, c.levels, parse_anisotropy(v)), family);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("valuation: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"radval: radial continuous valuations on a discretized sphere", "radval"};
  app.require_subcommand(1);

  CommonOptions opts;
  double lambda = 0.0;
  std::string set_text;
  std::string input;
  double tol = 1e-9;
  std::string levels_text;
  std::string kernel_out;
  std::optional<std::size_t> budget;

  auto* verify = app.add_subcommand("verify", "Check the valuation identity on random pairs");
  add_common(verify, opts);
  auto* decomp = app.add_subcommand("decompose", "Jordan decomposition V = V+ - V- on random test functions");
  add_common(decomp, opts);
  auto* measures = app.add_subcommand("measures", "Print mu_lambda(A), zeta_lambda(A), nu_lambda(A)");
  add_common(measures, opts);
  measures->add_option("--lambda", lambda, "Level lambda >= 0")->required()->check(CLI::NonNegativeNumber);
  measures->add_option("--set", set_text, "Comma-separated direction indices, or 'all'");
  auto* extend = app.add_subcommand("extend", "Compare V(f) with the limit extension Vbar(f)");
  add_common(extend, opts);
  extend->add_option("--input", input, "CSV row of radial values")->required()->check(CLI::ExistingFile);
  extend->add_option("--tol", tol, "Stabilization tolerance");
  auto* extract = app.add_subcommand("extract-kernel", "Recover the representing kernel");
  add_common(extract, opts, false);
  extract->add_option("--levels", levels_text, "start:step:stop");
  extract->add_option("--out", kernel_out, "Kernel JSON output file (stdout when omitted)");
  extract->add_option("--budget", budget, "Maximum number of valuation evaluations");
  auto* counter = app.add_subcommand("counterexample", "Min-functional: orthogonally additive, not a valuation");
  add_common(counter, opts);
  auto* sweep = app.add_subcommand("sweep", "Run the scenario battery from the config");
  add_common(sweep, opts);

  std::vector<const char*> argv{"radval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << json{{"status", "usage_error"}, {"message", e.what()}}.dump() << '\n';
    err << app.help();
    return kExitUsage;
  }

  Reporter rep(opts, out, err);
  try {
    if (verify->parsed()) return cmd_verify(opts, rep);
    if (decomp->parsed()) return cmd_decompose(opts, rep);
    if (measures->parsed()) return cmd_measures(opts, lambda, set_text, rep);
    if (extend->parsed()) return cmd_extend(opts, input, tol, rep);
    if (extract->parsed()) return cmd_extract(opts, levels_text, kernel_out, budget, rep);
    if (counter->parsed()) return cmd_counterexample(opts, rep);
    if (sweep->parsed()) return cmd_sweep(opts, rep);
  } catch (const std::exception& e) {
    err << json{{"status", "error"}, {"message", e.what()}}.dump() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace radval::cli
