#include "radval/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radval {

Theta poly_theta(std::vector<double> coefficients) {
  return [c = std::move(coefficients)](double s) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
  };
}

Theta piecewise_theta(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw std::invalid_argument("piecewise theta needs at least one knot");
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (!(knots[k].first > knots[k - 1].first)) throw std::invalid_argument("piecewise knots must increase");
  }
  return [k = std::move(knots)](double s) {
    if (s <= k.front().first) return k.front().second;
    if (s >= k.back().first) return k.back().second;
    const auto it = std::upper_bound(k.begin(), k.end(), s,
                                     [](double x, const std::pair<double, double>& p) { return x < p.first; });
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    if (s == x0) return y0;
    return y0 + (s - x0) / (x1 - x0) * (y1 - y0);
  };
}

Theta bump_theta(double amplitude, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  return [amplitude, width](double s) {
    const double u = s / width;
    return amplitude * (u - u * u);
  };
}

Kernel sample_kernel(const GridPtr& grid, const Theta& theta, std::span<const double> levels, Anisotropy a) {
  const auto n = grid->size();
  if (a.axis < 0 || a.axis >= grid->dimension()) throw std::invalid_argument("anisotropy axis out of range");
  std::vector<double> factor(n);
  for (std::size_t i = 0; i < n; ++i) factor[i] = a.base + a.slope * grid->point(i)[static_cast<std::size_t>(a.axis)];

  std::vector<double> values(levels.size() * n);
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double th = theta(levels[j]);
    for (std::size_t i = 0; i < n; ++i) values[j * n + i] = a.trivial() ? th : th * factor[i];
  }
  return Kernel(grid, std::vector<double>(levels.begin(), levels.end()), std::move(values), 0.0, a.trivial());
}

std::vector<double> level_range(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw std::invalid_argument("level range needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-3)) + 1;
  for (std::size_t k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  if (std::abs(out.back() - stop) < step * 1e-3) out.back() = stop;
  return out;
}

namespace {

/// Divides k by its steepest segment slope when that exceeds one.
Kernel unit_slope(const Kernel& k) {
  const auto n = k.direction_count();
  const auto& lv = k.levels();
  double steepest = 0.0;
  for (std::size_t j = 0; j + 1 < lv.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      steepest = std::max(steepest, std::abs(k.value(j + 1, i) - k.value(j, i)) / (lv[j + 1] - lv[j]));
  if (steepest <= 1.0) return k;
  std::vector<double> values(k.values());
  for (double& v : values) v /= steepest;
  return Kernel(k.grid(), lv, std::move(values), k.offset() / steepest, k.invariant());
}

}  // namespace

std::vector<NamedKernel> builtin_kernels(const GridPtr& grid, std::span<const double> levels) {
  std::vector<NamedKernel> out;
  auto add = [&](std::string name, const Theta& theta, Anisotropy a = {}) {
    out.push_back({std::move(name), unit_slope(sample_kernel(grid, theta, levels, a))});
  };
  add("linear", poly_theta({0.0, 1.0}));
  add("square", poly_theta({0.0, 0.0, 1.0}));
  add("neg_linear", poly_theta({0.0, -1.0}));
  add("shifted_linear", poly_theta({0.5, 1.0}));
  add("cubic_roots_0_1_2", poly_theta({0.0, 1.0, -1.5, 0.5}));
  add("neg_bump", poly_theta({0.0, -1.0, 1.0}));
  add("hump", poly_theta({0.0, 2.0, -1.0}));
  add("bump", bump_theta());
  add("wide_bump", bump_theta(1.0, 2.0));
  add("piecewise_peak", piecewise_theta({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.25}, {2.0, 0.75}}));
  add("piecewise_dip", piecewise_theta({{0.0, 0.0}, {0.3, -0.6}, {1.2, 0.4}, {2.0, 0.0}}));
  add("piecewise_ramp", piecewise_theta({{0.0, 0.0}, {0.9, 0.0}, {1.1, 1.0}, {2.0, 1.0}}));
  add("linear_tilt", poly_theta({0.0, 1.0}), {1.0, 1.0, 0});
  add("square_tilt", poly_theta({0.0, 0.0, 1.0}), {1.0, 0.5, 1});
  add("bump_tilt", bump_theta(), {1.0, -0.8, 0});
  add("neg_linear_tilt", poly_theta({0.0, -1.0}), {1.0, 1.0, 1});
  add("signed_direction", poly_theta({0.0, 1.0}), {0.0, 1.0, 0});
  add("cubic_odd", poly_theta({0.0, -1.0, 0.0, 1.0}));
  add("constant", poly_theta({1.0}));
  add("quartic", poly_theta({0.0, 1.0, -1.0, 0.0, 0.25}));
  return out;
}

}  // namespace radval
