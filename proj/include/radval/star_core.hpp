#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radval/sphere_grid.hpp"

namespace radval {

/// Radial function of a star set sampled on a direction grid: one
/// nonnegative value per direction.
class RadialFunction {
 public:
  /// Throws std::invalid_argument on a length mismatch or a negative or
  /// non-finite value.
  RadialFunction(GridPtr grid, std::vector<double> values);

  static RadialFunction zero(GridPtr grid);
  static RadialFunction constant(GridPtr grid, double c);
  /// level on A, 0 elsewhere.
  static RadialFunction indicator(const GridSubset& A, double level);

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Sup norm.
  double norm() const noexcept;

  bool operator==(const RadialFunction& other) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

RadialFunction join(const RadialFunction& f, const RadialFunction& g);
RadialFunction meet(const RadialFunction& f, const RadialFunction& g);
RadialFunction radial_sum(const RadialFunction& f, const RadialFunction& g);
RadialFunction scale(const RadialFunction& f, double c);
/// Sup-norm distance between radial functions.
double radial_metric(const RadialFunction& f, const RadialFunction& g);
GridSubset support(const RadialFunction& f);
/// True when f <= g at every direction.
bool pointwise_le(const RadialFunction& f, const RadialFunction& g);

/// Finite sum of levels times indicators of pairwise disjoint cells that
/// cover the grid.
class SimpleStarSet {
 public:
  /// Throws PreconditionViolation if the cells overlap or miss a direction,
  /// std::invalid_argument on negative levels or a count mismatch.
  SimpleStarSet(GridPtr grid, std::vector<GridSubset> cells, std::vector<double> levels);

  /// Exact level decomposition: one cell per distinct value of f, ordered by level.
  static SimpleStarSet from_radial(const RadialFunction& f);

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  const std::vector<GridSubset>& cells() const noexcept { return cells_; }
  const std::vector<double>& levels() const noexcept { return levels_; }

  /// Same function with equal-level cells merged, ordered by level.
  SimpleStarSet merged() const;
  /// Same function with every cell split into singletons.
  SimpleStarSet refined() const;

 private:
  GridPtr grid_;
  std::vector<GridSubset> cells_;
  std::vector<double> levels_;
};

/// Quantizes f with step delta: A_1 = f^{-1}([0, delta]) and
/// A_i = f^{-1}(((i-1) delta, i delta]) carry level i*delta, so the result
/// dominates f and lies within delta of it.
SimpleStarSet quantize(const RadialFunction& f, double delta);

RadialFunction to_radial(const SimpleStarSet& g);

/// Lattice operations on the common refinement of two partitions.
SimpleStarSet join(const SimpleStarSet& g, const SimpleStarSet& h);
SimpleStarSet meet(const SimpleStarSet& g, const SimpleStarSet& h);

}  // namespace radval
