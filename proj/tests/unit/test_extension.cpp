#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "radval/builtins.hpp"
#include "radval/errors.hpp"
#include "radval/extension.hpp"
#include "radval/random.hpp"

using namespace radval;

TEST_CASE("extension reproduces V on simple star sets") {
  const auto grid = build_grid(3, 16);
  const auto levels = level_range(0.0, 2.0, 0.1);
  Rng rng(41);
  for (const auto& nk : builtin_kernels(grid, levels)) {
    const auto V = kernel_valuation(nk.kernel, nk.name);
    const Extension ext(V, grid);
    for (int t = 0; t < 20; ++t) {
      const auto g = random_simple(grid, rng, levels);
      CHECK(std::abs(ext.simple(g) - (*V)(to_radial(g))) <= 1e-12);
      CHECK(std::abs(ext.simple(g.refined()) - ext.simple(g)) <= 1e-12);
    }
  }
}

TEST_CASE("extension of the zero function is V(0)") {
  const auto grid = build_grid(2, 6);
  const auto V = kernel_valuation(sample_kernel(grid, poly_theta({0.75, -1.0}), level_range(0.0, 1.0, 0.25)));
  const auto zero = SimpleStarSet::from_radial(RadialFunction::zero(grid));
  CHECK(extend_simple(V, zero) == 0.75);
  CHECK(Extension(V, grid).base() == 0.75);
}

TEST_CASE("quantized extension converges at the kernel's Lipschitz rate") {
  const auto grid = build_grid(2, 8);
  const auto levels = level_range(0.0, 2.0, 0.1);
  Rng rng(5);
  for (const auto& nk : builtin_kernels(grid, levels)) {
    const auto V = kernel_valuation(nk.kernel, nk.name);
    const double L = nk.kernel.lipschitz();
    std::vector<double> deltas;
    for (int j = 3; j <= 12; ++j) deltas.push_back(std::ldexp(1.0, -j));
    for (int t = 0; t < 5; ++t) {
      const auto f = random_radial(grid, rng, 2.0 - 0.125);
      const auto err = agreement_check(V, f, deltas);
      for (std::size_t d = 0; d < deltas.size(); ++d) CHECK(err[d] <= L * deltas[d] + 1e-12);
    }
  }
}

TEST_CASE("bounded extension stabilizes on the exact value") {
  const auto grid = build_grid(2, 8);
  const auto levels = level_range(0.0, 2.0, 0.1);
  const auto V = kernel_valuation(sample_kernel(grid, bump_theta(), levels));
  const RadialFunction f(grid, {0.3, 0.2, 1.0, 1.5, 0.0, 0.7, 0.1, 0.9});
  const double exact = extend_simple(V, SimpleStarSet::from_radial(f));
  CHECK(std::abs(exact - (*V)(f)) <= 1e-15);
  CHECK(std::abs(extend_bounded(V, f, 1e-13) - exact) <= 1e-12);
  // Dyadic inputs are reproduced by a finite quantization.
  const RadialFunction dyadic(grid, {0.25, 0.5, 1.0, 1.5, 0.375, 0.75, 0.125, 2.0});
  CHECK(std::abs(extend_bounded(V, dyadic, 1e-3) - (*V)(dyadic)) <= 1e-15);
  CHECK_THROWS_AS(extend_bounded(V, f, 0.0), std::invalid_argument);
}

TEST_CASE("bounded extension of a black box") {
  const auto grid = build_grid(3, 10);
  const auto V = black_box(kernel_valuation(sample_kernel(grid, poly_theta({0.0, 1.0, -0.25}), level_range(0.0, 2.0, 0.25))));
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_radial(grid, rng, 1.9);
    CHECK(std::abs(extend_bounded(V, f, 1e-12) - (*V)(f)) <= 1e-11);
  }
  CHECK_THROWS_AS(agreement_check(V, RadialFunction::zero(grid), std::vector<double>{0.1}), Unsupported);
}

TEST_CASE("extension rejects simple sets on another grid") {
  const auto V = kernel_valuation(sample_kernel(build_grid(2, 4), poly_theta({0.0, 1.0}), level_range(0.0, 1.0, 0.5)));
  const auto other = SimpleStarSet::from_radial(RadialFunction::zero(build_grid(2, 5)));
  CHECK_THROWS_AS(extend_simple(V, other), GridMismatch);
}

TEST_CASE("cauchy report") {
  const auto grid = build_grid(2, 6);
  const auto V = kernel_valuation(sample_kernel(grid, poly_theta({0.0, 1.0}), level_range(0.0, 2.0, 0.1)));
  Rng rng(8);
  const auto f = random_radial(grid, rng, 1.5);
  std::vector<SimpleStarSet> seq;
  for (int j = 1; j <= 16; ++j) seq.push_back(quantize(f, std::ldexp(1.0, -j)));
  const auto report = cauchy_check(V, seq);
  CHECK(report.input_cauchy);
  CHECK(report.gaps.size() == 15);
  CHECK(report.max_gap <= std::ldexp(1.0, -7));

  // Alternating between two fixed sets is not Cauchy.
  std::vector<SimpleStarSet> bounce;
  for (int j = 0; j < 10; ++j) bounce.push_back(quantize(f, j % 2 == 0 ? 0.5 : 0.25));
  CHECK_FALSE(cauchy_check(V, bounce).input_cauchy);
}
