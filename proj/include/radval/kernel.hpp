#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radval/sphere_grid.hpp"
#include "radval/star_core.hpp"

namespace radval {

/// Tabulated kernel K(lambda_j, t_i) on a level grid 0 = lambda_0 < ... < lambda_m,
/// piecewise linear in lambda, plus a constant offset (the value at the
/// origin). No extrapolation above the last level.
class Kernel {
 public:
  /// `values` is row-major: values[j * grid->size() + i] = K(lambda_j, t_i).
  /// `invariant` claims rotation invariance; it is checked (rows must be
  /// constant).
  Kernel(GridPtr grid, std::vector<double> levels, std::vector<double> values, double offset = 0.0,
         bool invariant = false);

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t direction_count() const noexcept { return grid_->size(); }
  std::size_t level_count() const noexcept { return levels_.size(); }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double max_level() const noexcept { return levels_.back(); }
  double offset() const noexcept { return offset_; }
  bool invariant() const noexcept { return invariant_; }

  double value(std::size_t level_index, std::size_t direction) const;

  /// K(s, t_i) by linear interpolation in s. Exact at the levels.
  /// Throws RangeError for s outside [0, max_level()].
  double at(double s, std::size_t direction) const;

  /// max / min of K(., t_i) over [0, hi]; attained at a level or at hi.
  double max_on(std::size_t direction, double hi) const;
  double min_on(std::size_t direction, double hi) const;

  /// Sum over directions of w_i times the largest |slope| of K(., t_i).
  double lipschitz() const;

  /// Same valuation with K(0, .) = 0: row zero is subtracted from every row
  /// and its weighted mass moves into the offset.
  Kernel centered() const;
  bool is_centered() const noexcept;

  /// Same kernel with the offset dropped.
  Kernel without_offset() const;

 private:
  GridPtr grid_;
  std::vector<double> levels_;
  std::vector<double> values_;
  double offset_;
  bool invariant_;
};

/// offset + sum_i w_i K(f_i, t_i).
double eval_integral(const Kernel& k, const RadialFunction& f);

}  // namespace radval
