#include "radval/kernel_extract.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"
#include "radval/extension.hpp"
#include "radval/random.hpp"

namespace radval {

namespace {

void require_level_grid(std::span<const double> lambda_grid) {
  if (lambda_grid.empty() || lambda_grid.front() != 0.0) {
    throw std::invalid_argument("lambda grid must start at 0");
  }
}

}  // namespace

Kernel extract_kernel(const ValuationPtr& V, const GridPtr& grid, std::span<const double> lambda_grid,
                      const ExtractOptions& options) {
  require_level_grid(lambda_grid);
  const auto n = grid->size();
  const std::size_t cost = lambda_grid.size() * n;
  if (options.budget && cost > *options.budget) {
    throw PreconditionViolation("extract_kernel needs " + std::to_string(cost) + " evaluations, budget is " +
                                std::to_string(*options.budget));
  }

  const Extension ext(V, grid);
  std::vector<double> values(lambda_grid.size() * n, 0.0);
  for (std::size_t j = 1; j < lambda_grid.size(); ++j) {
    const auto& nu = ext.nu_density(lambda_grid[j]);
    for (std::size_t i = 0; i < n; ++i) values[j * n + i] = nu[i] / grid->weight(i);
  }

  bool invariant = true;
  for (std::size_t j = 0; j < lambda_grid.size() && invariant; ++j) {
    const double ref = values[j * n];
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(values[j * n + i] - ref) > 1e-12 * (1.0 + std::abs(ref))) {
        invariant = false;
        break;
      }
    }
  }
  if (invariant) {
    // Snap rows onto their first entry so the invariant flag holds exactly.
    for (std::size_t j = 0; j < lambda_grid.size(); ++j)
      std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(j * n), n, values[j * n]);
  }
  return Kernel(grid, std::vector<double>(lambda_grid.begin(), lambda_grid.end()), std::move(values), ext.base(),
                invariant);
}

double roundtrip_error(const ValuationPtr& V, const Kernel& k, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("roundtrip_error requires trials >= 1");
  const Extension ext(V, k.grid());
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto g = random_simple(k.grid(), rng, k.levels());
    worst = std::max(worst, std::abs(ext.simple(g) - eval_integral(k, to_radial(g))));
  }
  return worst;
}

double nu_modulus(const ValuationPtr& V, const GridPtr& grid, double lambda, double lambda2,
                  std::span<const GridSubset> subsets) {
  if (!(lambda >= 0.0) || !(lambda2 >= 0.0)) throw std::invalid_argument("nu_modulus requires lambda, lambda' >= 0");
  const Extension ext(V, grid);
  const GridMeasure a(grid, ext.nu_density(lambda), lambda);
  const GridMeasure b(grid, ext.nu_density(lambda2), lambda2);
  double worst = 0.0;
  for (const auto& A : subsets) worst = std::max(worst, std::abs(a(A) - b(A)));
  return worst;
}

double max_subset_gap(const GridMeasure& m1, const GridMeasure& m2) {
  require_same_grid(m1.grid(), m2.grid());
  double up = 0.0;
  double down = 0.0;
  for (std::size_t i = 0; i < m1.density().size(); ++i) {
    const double d = m1.density()[i] - m2.density()[i];
    if (d > 0.0) up += d;
    else down -= d;
  }
  return std::max(up, down);
}

double l1_modulus(const Kernel& k, const GridMeasure& mu, double lambda, double lambda2) {
  require_same_grid(k.grid(), mu.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < k.direction_count(); ++i)
    sum += std::abs(k.at(lambda, i) - k.at(lambda2, i)) * mu.density()[i];
  return sum;
}

Kernel density_kernel(const ValuationPtr& V, const GridMeasure& mu, std::span<const double> lambda_grid) {
  require_level_grid(lambda_grid);
  const GridPtr& grid = mu.grid();
  const auto n = grid->size();
  const Extension ext(V, grid);
  std::vector<double> values(lambda_grid.size() * n, 0.0);
  for (std::size_t j = 1; j < lambda_grid.size(); ++j) {
    const GridMeasure nu(grid, ext.nu_density(lambda_grid[j]), lambda_grid[j]);
    const auto ratio = radon_nikodym(nu, mu);
    std::copy(ratio.begin(), ratio.end(), values.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  return Kernel(grid, std::vector<double>(lambda_grid.begin(), lambda_grid.end()), std::move(values), ext.base());
}

}  // namespace radval
