#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "radval/sphere_grid.hpp"
#include "radval/star_core.hpp"

namespace radval {

/// Seeded generator shared by every stochastic routine. Distributions are
/// written out here so sequences do not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for (seed, stream) pairs, e.g. one per sweep scenario.
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in {0, ..., n - 1}; n > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() >> 63) != 0; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Values drawn uniformly from [0, hi] per direction.
RadialFunction random_radial(const GridPtr& grid, Rng& rng, double hi);
/// Values drawn from a finite set of levels.
RadialFunction random_radial_on(const GridPtr& grid, Rng& rng, std::span<const double> levels);
/// Each direction included with probability 1/2.
GridSubset random_subset(const GridPtr& grid, Rng& rng);
/// Random partition into at most `max_cells` cells with levels drawn from `levels`.
SimpleStarSet random_simple(const GridPtr& grid, Rng& rng, std::span<const double> levels, std::size_t max_cells = 6);

}  // namespace radval
