#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radval/kernel.hpp"
#include "radval/sphere_grid.hpp"

namespace radval {

using Theta = std::function<double(double)>;

/// sum_k c_k s^k.
Theta poly_theta(std::vector<double> coefficients);
/// Linear interpolation through (s, value) knots sorted by s; constant
/// beyond the last knot.
Theta piecewise_theta(std::vector<std::pair<double, double>> knots);
/// amplitude * (s/width - (s/width)^2); the default is s - s^2.
Theta bump_theta(double amplitude = 1.0, double width = 1.0);

/// Direction factor base + slope * t[axis]; the identity factor keeps the
/// kernel rotation invariant.
struct Anisotropy {
  double base = 1.0;
  double slope = 0.0;
  int axis = 0;

  bool trivial() const noexcept { return base == 1.0 && slope == 0.0; }
};

/// K(lambda_j, t_i) = theta(lambda_j) * (base + slope * t_i[axis]).
Kernel sample_kernel(const GridPtr& grid, const Theta& theta, std::span<const double> levels, Anisotropy a = {});

/// Inclusive range start, start + step, ..., stop (stop is snapped onto the
/// last point when within step/1000).
std::vector<double> level_range(double start, double stop, double step);

struct NamedKernel {
  std::string name;
  Kernel kernel;
};

/// The fixed catalog of twenty built-in kernels sampled on `levels`. Each is
/// divided by its steepest segment slope when that exceeds one.
std::vector<NamedKernel> builtin_kernels(const GridPtr& grid, std::span<const double> levels);

}  // namespace radval
