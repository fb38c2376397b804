// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "radval/builtins.hpp"
#include "radval/errors.hpp"
#include "radval/extension.hpp"
#include "radval/io.hpp"
#include "radval/jordan.hpp"
#include "radval/kernel_extract.hpp"
#include "radval/measures.hpp"
#include "radval/random.hpp"

using namespace radval;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string num(double x) { return io::format_double(x); }

const std::vector<double> kLevels = level_range(0.0, 2.0, 0.1);

std::vector<ValuationPtr> builtin_valuations(const GridPtr& grid, const std::vector<double>& levels = kLevels) {
  std::vector<ValuationPtr> out;
  for (auto& nk : builtin_kernels(grid, levels)) out.push_back(kernel_valuation(std::move(nk.kernel), nk.name));
  return out;
}

double identity_suite(const Valuation& V, const GridPtr& grid, int pairs, std::uint64_t seed, double hi) {
  Rng rng(seed);
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const auto f = random_radial(grid, rng, hi);
    const auto g = random_radial(grid, rng, hi);
    worst = std::max(worst, check_valuation_identity(V, f, g));
  }
  return worst;
}

// 1 ------------------------------------------------------------------------

void valuation_identity(Outcome& o) {
  double worst = 0.0;
  int checked = 0;
  for (std::size_t n : {8u, 32u}) {
    for (int dim : {2, 3}) {
      const auto grid = build_grid(dim, n);
      for (const auto& V : builtin_valuations(grid)) {
        const double r = identity_suite(*V, grid, 500, 1000 + n + static_cast<std::size_t>(dim), 2.0);
        o.require(r <= 1e-10, V->descriptor() + " N=" + std::to_string(n) + " residual " + num(r));
        worst = std::max(worst, r);
        ++checked;
      }
    }
  }
  o.detail << checked << " kernel/grid combinations x 500 pairs, max residual " << num(worst);
}

// 2 ------------------------------------------------------------------------

void jordan_decomposition(Outcome& o) {
  double worst_residual = 0.0, worst_identity = 0.0, lowest = 0.0, at_zero = 0.0;
  for (std::size_t n : {8u, 32u}) {
    const auto grid = build_grid(3, n);
    Rng rng(2000 + n);
    for (const auto& raw : builtin_valuations(grid)) {
      const auto V = center(raw, grid);
      std::vector<RadialFunction> suite;
      for (int t = 0; t < 500; ++t) suite.push_back(random_radial(grid, rng, 2.0));
      const auto parts = decompose(V, suite);
      double residual = 0.0;
      for (const auto& f : suite) {
        const double p = (*parts.plus)(f), m = (*parts.minus)(f);
        residual = std::max(residual, std::abs((*V)(f) - (p - m)));
        lowest = std::min({lowest, p, m});
      }
      o.require(residual <= 1e-10, raw->descriptor() + " residual " + num(residual));
      o.require(std::abs(residual - parts.residual_report) <= 1e-15, raw->descriptor() + " residual report");
      worst_residual = std::max(worst_residual, residual);

      const auto zero = RadialFunction::zero(grid);
      const double z = std::max(std::abs((*parts.plus)(zero)), std::abs((*parts.minus)(zero)));
      o.require(z == 0.0, raw->descriptor() + " parts at origin " + num(z));
      at_zero = std::max(at_zero, z);

      for (const auto* part : {&parts.plus, &parts.minus}) {
        const double r = identity_suite(**part, grid, 500, 2100 + n, 2.0);
        o.require(r <= 1e-10, (*part)->descriptor() + " identity " + num(r));
        worst_identity = std::max(worst_identity, r);
      }
    }
  }
  o.require(lowest >= 0.0, "negative part value " + num(lowest));

  // Brute-force oracle: coarse levels so that every maximizer lies on the lattice.
  const auto coarse = level_range(0.0, 2.0, 0.5);
  Rng rng(2200);
  double worst_brute = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.index(3);
    const auto grid = build_grid(2, n);
    const auto kernels = builtin_kernels(grid, coarse);
    const auto& nk = kernels[rng.index(kernels.size())];
    std::vector<double> v(n);
    for (auto& x : v) x = 0.5 * static_cast<double>(rng.index(4));
    const RadialFunction f(grid, v);
    const auto V = center(kernel_valuation(nk.kernel, nk.name), grid);
    const double gap = std::abs(vplus_kernel(nk.kernel, f) - brute_force_sup(*V, f, 6));
    o.require(gap <= 1e-12, nk.name + " brute force gap " + num(gap));
    worst_brute = std::max(worst_brute, gap);
  }
  o.detail << "max residual " << num(worst_residual) << ", parts identity " << num(worst_identity) << ", min part "
           << num(lowest) << ", brute-force gap " << num(worst_brute);
}

// 3 ------------------------------------------------------------------------

void measure_oracles(Outcome& o) {
  const auto coarse = level_range(0.0, 2.0, 0.5);
  double worst = 0.0;
  std::size_t comparisons = 0;
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto grid = build_grid(2, n);
    const auto subsets = oracle::all_subsets(grid);
    std::vector<ValuationPtr> positives;
    for (const auto& raw : builtin_valuations(grid, coarse)) {
      const auto V = center(raw, grid);
      if (V->is_positive()) {
        positives.push_back(V);
      } else {
        const auto parts = decompose(V, {});
        positives.push_back(parts.plus);
        positives.push_back(parts.minus);
      }
    }
    for (const auto& V : positives) {
      for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
        const auto steps = oracle::steps_to(lambda, 0.5);
        const auto mu = control_measure(*V, lambda);
        const auto nu = representing_measure(V, grid, lambda);
        std::vector<double> zeta;
        for (const auto& C : subsets) zeta.push_back(oracle::content(*V, C, lambda, steps));
        for (std::size_t s = 0; s < subsets.size(); ++s) {
          const auto& A = subsets[s];
          const double e1 = std::abs(mu(A) - oracle::control(*V, A, steps));
          const double e2 = std::abs(content(*V, lambda, A) - zeta[s]);
          const double e3 = std::abs(nu(A) - oracle::representing(subsets, zeta, A));
          const double e = std::max({e1, e2, e3});
          o.require(e <= 1e-12, V->descriptor() + " N=" + std::to_string(n) + " lambda=" + num(lambda) + " gap " + num(e));
          worst = std::max(worst, e);
          comparisons += 3;
        }
      }
    }
  }
  o.detail << comparisons << " comparisons, max gap " << num(worst);
}

// 4 ------------------------------------------------------------------------

void control_property(Outcome& o) {
  const auto grid = build_grid(3, 32);
  Rng rng(4000);
  double worst = -INFINITY;
  int kernels = 0;
  for (const auto& raw : builtin_valuations(grid)) {
    const auto V = center(raw, grid);
    std::vector<ValuationPtr> positives;
    if (V->is_positive()) {
      positives.push_back(V);
    } else {
      const auto parts = decompose(V, {});
      positives = {parts.plus, parts.minus};
    }
    for (const auto& P : positives) {
      ++kernels;
      for (int t = 0; t < 1000; ++t) {
        const auto A = random_subset(grid, rng);
        const double lambda = rng.uniform(0.0, 2.0);
        std::vector<double> v(grid->size(), 0.0);
        for (std::size_t i : A.indices()) v[i] = rng.uniform(0.0, lambda);
        const double excess = (*P)(RadialFunction(grid, v)) - control_measure(*P, lambda)(A);
        o.require(excess <= 1e-12, P->descriptor() + " excess " + num(excess));
        worst = std::max(worst, excess);
      }
    }
  }
  o.detail << kernels << " positive kernels x 1000 (f, A, lambda), max V(f) - mu(A) " << num(worst);
}

// 5 ------------------------------------------------------------------------

void extension_agreement(Outcome& o) {
  const auto grid = build_grid(3, 16);
  Rng rng(5000);
  double worst_ratio = 0.0, worst_bounded = 0.0;
  for (const auto& V : builtin_valuations(grid)) {
    const Extension ext(V, grid);
    const double L = V->kernel()->lipschitz();
    for (int t = 0; t < 100; ++t) {
      const auto f = random_radial(grid, rng, 2.0 - 0.125);
      const double exact = (*V)(f);
      for (int j = 3; j <= 12; ++j) {
        const double delta = std::ldexp(1.0, -j);
        const double err = std::abs(ext.simple(quantize(f, delta)) - exact);
        // 1e-12 absorbs summation round-off when L * delta is tiny or zero.
        o.require(err <= L * delta + 1e-12, V->descriptor() + " delta 2^-" + std::to_string(j) + " error " + num(err));
        if (L > 0.0) worst_ratio = std::max(worst_ratio, err / (L * delta));
      }
      const double level_set = ext.simple(SimpleStarSet::from_radial(f));
      const double bounded = ext.bounded(f, 1e-13);
      const double gap = std::abs(bounded - level_set);
      o.require(gap <= 1e-12, V->descriptor() + " extend_bounded gap " + num(gap));
      worst_bounded = std::max(worst_bounded, gap);
    }
  }
  o.detail << "max error / (L delta) " << num(worst_ratio) << ", max |extend_bounded - level-set extension| "
           << num(worst_bounded);
}

// 6 ------------------------------------------------------------------------

void representation_roundtrip(Outcome& o) {
  const auto grid = build_grid(3, 32);
  double worst_entry = 0.0, worst_roundtrip = 0.0;
  for (const auto& V : builtin_valuations(grid)) {
    const auto k = extract_kernel(V, grid, kLevels);
    const auto src = V->kernel()->centered();
    for (std::size_t e = 0; e < src.values().size(); ++e) {
      const double d = std::abs(k.values()[e] - src.values()[e]);
      worst_entry = std::max(worst_entry, d);
    }
    const double off = std::abs(k.offset() - src.offset());
    worst_entry = std::max(worst_entry, off);
    o.require(worst_entry <= 1e-10, V->descriptor() + " entry error " + num(worst_entry));
    const double r = roundtrip_error(V, k, 200, 6000);
    o.require(r <= 1e-10, V->descriptor() + " roundtrip " + num(r));
    worst_roundtrip = std::max(worst_roundtrip, r);
  }
  o.detail << "N=32, 21 levels: max entry error " << num(worst_entry) << ", max roundtrip error "
           << num(worst_roundtrip);
}

// 7 ------------------------------------------------------------------------

void counterexample(Outcome& o) {
  const auto phi = min_functional();
  const auto grid = build_grid(2, 8);
  Rng rng(7000);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    // Disjoint supports for f1, f2 and a direction where all three vanish.
    const std::size_t zero = rng.index(8);
    std::vector<double> a(8, 0.0), b(8, 0.0), c(8, 0.0);
    for (std::size_t i = 0; i < 8; ++i) {
      if (i == zero) continue;
      (rng.coin() ? a : b)[i] = rng.uniform(0.0, 2.0);
      c[i] = rng.uniform(0.0, 2.0);
    }
    const double r = check_additive(*phi, RadialFunction(grid, a), RadialFunction(grid, b), RadialFunction(grid, c));
    o.require(r <= 1e-12, "additive residual " + num(r));
    worst = std::max(worst, r);
  }
  for (std::size_t n : {2u, 8u, 32u}) {
    const auto g = build_grid(2, n);
    std::vector<double> f(n, 1.0), h(n, 0.0);
    if (n == 2) f = {1.0, 0.0};
    f[1] = 0.0;
    h[1] = 1.0;
    const double r = check_valuation_identity(*phi, RadialFunction(g, f), RadialFunction(g, h));
    o.require(r == 1.0, "identity residual on N=" + std::to_string(n) + " is " + num(r));
  }
  o.detail << "500 admissible triples, max additive residual " << num(worst) << "; identity residual 1 on canonical pairs";
}

// 8 ------------------------------------------------------------------------

GridMeasure control_or_uniform(const ValuationPtr& V, const GridPtr& grid) {
  try {
    return normalized_control(V, 2.0);
  } catch (const DegenerateMeasure&) {
    // Constant kernels have nu = 0; any reference measure gives a zero modulus.
    return GridMeasure(grid, std::vector<double>(grid->weights().begin(), grid->weights().end()));
  }
}

void continuity_moduli(Outcome& o) {
  const auto grid = build_grid(2, 8);
  const auto subsets = oracle::all_subsets(grid);
  double final_nu = 0.0, final_l1 = 0.0;
  for (const auto& V : builtin_valuations(grid)) {
    const Extension ext(V, grid);
    const auto mu = control_or_uniform(V, grid);
    const auto h = density_kernel(V, mu, kLevels);
    for (int b = 0; b <= 15; ++b) {
      const double lambda = 0.1 * b;
      // Monotonicity is pinned at base levels where every catalog kernel is
      // monotone at the dyadic offsets; elsewhere only convergence is checked.
      const bool monotone = b == 6 || b == 12;
      double prev_nu = INFINITY, prev_l1 = INFINITY;
      for (int m = 1; m <= 20; ++m) {
        const double lambda2 = lambda + std::ldexp(1.0, -m);
        const double nu = nu_modulus(V, grid, lambda, lambda2, subsets);
        const double gap = max_subset_gap(GridMeasure(grid, ext.nu_density(lambda)), GridMeasure(grid, ext.nu_density(lambda2)));
        const double l1 = l1_modulus(h, mu, lambda, lambda2);
        o.require(std::abs(nu - gap) <= 1e-15, V->descriptor() + " subset sup mismatch");
        o.require(l1 <= 2.0 * gap + 1e-15, V->descriptor() + " l1 > 2 nu at m=" + std::to_string(m));
        if (monotone) {
          o.require(nu <= prev_nu, V->descriptor() + " nu modulus rises at lambda=" + num(lambda) + " m=" + std::to_string(m));
          o.require(l1 <= prev_l1, V->descriptor() + " l1 modulus rises at lambda=" + num(lambda) + " m=" + std::to_string(m));
        }
        prev_nu = nu;
        prev_l1 = l1;
      }
      o.require(prev_nu < 1e-6 && prev_l1 < 1e-6, V->descriptor() + " final modulus " + num(prev_nu));
      final_nu = std::max(final_nu, prev_nu);
      final_l1 = std::max(final_l1, prev_l1);
    }
  }

  // Step fixture: the kernel jumps at lambda = 1.
  const double height = 0.5;
  const auto step = step_functional(1.0, height);
  const double floor = height * grid->weight(0);
  double lowest = INFINITY;
  for (int m = 1; m <= 20; ++m) {
    const double nu = nu_modulus(step, grid, 1.0, 1.0 + std::ldexp(1.0, -m), subsets);
    lowest = std::min(lowest, nu);
  }
  o.require(lowest >= floor, "step fixture modulus " + num(lowest) + " below " + num(floor));
  o.detail << "final nu modulus " << num(final_nu) << ", final l1 modulus " << num(final_l1)
           << ", step fixture modulus >= " << num(lowest);
}

// 9 ------------------------------------------------------------------------

void rim_decay_check(Outcome& o) {
  const auto grid = build_grid(3, 64);
  Rng rng(9000);
  std::vector<double> omegas;
  for (int k = -1; k <= 10; ++k) omegas.push_back(std::ldexp(1.0, -k));
  int kernels = 0;
  for (const auto& raw : builtin_valuations(grid)) {
    const auto V = center(raw, grid);
    if (!V->is_positive()) continue;
    ++kernels;
    for (int t = 0; t < 10; ++t) {
      GridSubset A = random_subset(grid, rng);
      while (A.is_empty() || A.count() == grid->size()) A = random_subset(grid, rng);
      const auto decay = rim_decay(*V, A, 2.0, omegas);
      for (std::size_t k = 1; k < decay.size(); ++k)
        o.require(decay[k] <= decay[k - 1], V->descriptor() + " rim decay rises at omega=" + num(omegas[k]));
      for (std::size_t k = 0; k < decay.size(); ++k) {
        if (outer_band(A, omegas[k]).is_empty()) o.require(decay[k] == 0.0, V->descriptor() + " nonzero on empty band");
      }
      o.require(outer_band(A, omegas.back()).is_empty(), "smallest band not empty");
    }
  }
  o.detail << kernels << " positive kernels x 10 sets on N=64; sequences non-increasing and 0 on empty bands";
}

// 10 -----------------------------------------------------------------------

struct Proc {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Proc run_cli(const fs::path& work, const std::string& args) {
  const auto out = work / "stdout.txt";
  const auto err = work / "stderr.txt";
  const std::string cmd = std::string("\"") + RADVAL_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

bool has_json_diagnostic(const std::string& err) {
  std::istringstream in(err);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() != '{') continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_discarded() && j.contains("status")) return true;
  }
  return false;
}

void cli_determinism(Outcome& o) {
  const auto work = fs::absolute("acceptance_cli");
  fs::remove_all(work);
  fs::create_directories(work);
  io::write_file_atomic(work / "sweep.json", R"({
  "grid": {"dimension": 2, "points": 16},
  "levels": "0:0.1:2",
  "trials": 50,
  "seed": 20240601,
  "scenarios": [
    {"valuation": {"family": "poly", "coefficients": [0, 1]}},
    {"valuation": {"family": "bump"}},
    {"valuation": {"family": "builtin", "name": "bump_tilt"}},
    {"valuation": {"family": "piecewise", "knots": [[0, 0], [0.5, 1], [2, -1]]}},
    {"grid": {"dimension": 3, "points": 24}, "valuation": {"family": "builtin", "name": "square_tilt"}}
  ]
})");
  const auto cfg = (work / "sweep.json").string();
  const auto a = run_cli(work, "sweep --config \"" + cfg + "\" --out \"" + (work / "a").string() + "\" --jobs 1");
  const auto b = run_cli(work, "sweep --config \"" + cfg + "\" --out \"" + (work / "b").string() + "\" --jobs 4");
  o.require(a.code == 0 && b.code == 0, "sweep exit codes " + std::to_string(a.code) + "/" + std::to_string(b.code));
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(work / "a")) {
    const auto name = e.path().filename();
    o.require(fs::exists(work / "b" / name) && slurp(e.path()) == slurp(work / "b" / name),
              "sweep output differs: " + name.string());
    ++files;
  }
  o.require(files == 6, "expected 6 sweep files, found " + std::to_string(files));
  const auto v1 = run_cli(work, "verify --seed 99");
  const auto v2 = run_cli(work, "verify --seed 99");
  o.require(v1.code == 0 && v1.out == v2.out && !v1.out.empty(), "verify stdout not reproducible");

  io::write_file_atomic(work / "bad.json", "{\"grid\": ");
  io::write_file_atomic(work / "unknown.json", R"({"grid": {"points": 8}, "colour": 1})");
  io::write_file_atomic(work / "min.json", R"({"grid": {"points": 8}, "valuation": {"family": "min"}, "trials": 20})");
  io::write_file_atomic(work / "minsweep.json", R"({"seed": 1, "scenarios": [{"valuation": {"family": "min"}}]})");
  const std::vector<std::pair<std::string, int>> failures{
      {"frobnicate", 1},
      {"", 1},
      {"verify", 1},
      {"verify --seed notanumber", 1},
      {"verify --config \"" + (work / "bad.json").string() + "\" --seed 1", 1},
      {"verify --config \"" + (work / "unknown.json").string() + "\" --seed 1", 1},
      {"verify --config \"" + (work / "missing.json").string() + "\" --seed 1", 1},
      {"measures --lambda -1", 1},
      {"extend --input \"" + (work / "missing.csv").string() + "\"", 1},
      {"extract-kernel --budget 1", 1},
      {"verify --config \"" + (work / "min.json").string() + "\" --seed 1", 2},
      {"sweep --config \"" + (work / "minsweep.json").string() + "\"", 2},
  };
  for (const auto& [args, expected] : failures) {
    const auto r = run_cli(work, args);
    o.require(r.code == expected, "'" + args + "' exited " + std::to_string(r.code));
    o.require(has_json_diagnostic(r.err), "'" + args + "' printed no JSON diagnostic");
  }
  fs::remove_all(work);
  o.detail << "two sweeps (jobs 1 and 4) byte-identical over " << files << " files; " << failures.size()
           << " failure paths exit nonzero with JSON diagnostics";
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 = none
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "valuation identity suite", 10.0, valuation_identity},
      {2, "Jordan decomposition", 60.0, jordan_decomposition},
      {3, "measure oracle equivalence", 120.0, measure_oracles},
      {4, "control property", 0.0, control_property},
      {5, "extension agreement", 0.0, extension_agreement},
      {6, "representation round trip", 30.0, representation_roundtrip},
      {7, "counterexample fidelity", 0.0, counterexample},
      {8, "continuity moduli", 0.0, continuity_moduli},
      {9, "rim decay", 0.0, rim_decay_check},
      {10, "CLI determinism", 0.0, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0) o.require(seconds < c.time_limit, "runtime over " + num(c.time_limit) + " s");
    failed += o.pass ? 0 : 1;
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
