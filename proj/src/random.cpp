#include "radval/random.hpp"

#include <algorithm>

namespace radval {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seeded(seed, stream)) {}

RadialFunction random_radial(const GridPtr& grid, Rng& rng, double hi) {
  std::vector<double> v(grid->size());
  for (double& x : v) x = rng.uniform(0.0, hi);
  return RadialFunction(grid, std::move(v));
}

RadialFunction random_radial_on(const GridPtr& grid, Rng& rng, std::span<const double> levels) {
  std::vector<double> v(grid->size());
  for (double& x : v) x = levels[rng.index(levels.size())];
  return RadialFunction(grid, std::move(v));
}

GridSubset random_subset(const GridPtr& grid, Rng& rng) {
  std::vector<bool> mask(grid->size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.coin();
  return GridSubset(grid, std::move(mask));
}

SimpleStarSet random_simple(const GridPtr& grid, Rng& rng, std::span<const double> levels, std::size_t max_cells) {
  const std::size_t n = grid->size();
  const std::size_t cells = 1 + rng.index(std::max<std::size_t>(1, std::min(max_cells, n)));
  std::vector<std::vector<bool>> masks(cells, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) masks[rng.index(cells)][i] = true;

  std::vector<GridSubset> out_cells;
  std::vector<double> out_levels;
  for (auto& m : masks) {
    if (std::none_of(m.begin(), m.end(), [](bool b) { return b; })) continue;
    out_cells.emplace_back(grid, std::move(m));
    out_levels.push_back(levels[rng.index(levels.size())]);
  }
  return SimpleStarSet(grid, std::move(out_cells), std::move(out_levels));
}

}  // namespace radval
