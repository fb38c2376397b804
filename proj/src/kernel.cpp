#include "radval/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"

namespace radval {

Kernel::Kernel(GridPtr grid, std::vector<double> levels, std::vector<double> values, double offset,
               bool invariant)
    : grid_(std::move(grid)),
      levels_(std::move(levels)),
      values_(std::move(values)),
      offset_(offset),
      invariant_(invariant) {
  if (!grid_) throw std::invalid_argument("Kernel requires a grid");
  if (levels_.empty() || levels_.front() != 0.0) {
    throw std::invalid_argument("kernel level grid must start at 0");
  }
  for (std::size_t j = 1; j < levels_.size(); ++j) {
    if (!(levels_[j] > levels_[j - 1]) || !std::isfinite(levels_[j])) {
      throw std::invalid_argument("kernel level grid must be strictly increasing");
    }
  }
  const auto n = grid_->size();
  if (values_.size() != levels_.size() * n) {
    throw std::invalid_argument("kernel matrix has " + std::to_string(values_.size()) + " entries, expected " +
                                std::to_string(levels_.size() * n));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("kernel values must be finite");
  }
  if (!std::isfinite(offset_)) throw std::invalid_argument("kernel offset must be finite");
  if (invariant_) {
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      const double ref = values_[j * n];
      for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(values_[j * n + i] - ref) > 1e-12 * (1.0 + std::abs(ref))) {
          throw std::invalid_argument("kernel flagged invariant but row " + std::to_string(j) +
                                      " depends on the direction");
        }
      }
    }
  }
}

double Kernel::value(std::size_t level_index, std::size_t direction) const {
  if (level_index >= levels_.size() || direction >= direction_count()) {
    throw RangeError("kernel index out of range");
  }
  return values_[level_index * direction_count() + direction];
}

double Kernel::at(double s, std::size_t direction) const {
  if (direction >= direction_count()) throw RangeError("kernel direction out of range");
  if (!(s >= 0.0) || s > levels_.back()) {
    throw RangeError("value " + std::to_string(s) + " outside kernel level range [0, " +
                     std::to_string(levels_.back()) + "]");
  }
  const auto n = direction_count();
  const auto it = std::upper_bound(levels_.begin(), levels_.end(), s);
  const auto j = static_cast<std::size_t>(it - levels_.begin()) - 1;
  const double a = values_[j * n + direction];
  if (s == levels_[j]) return a;
  const double b = values_[(j + 1) * n + direction];
  const double t = (s - levels_[j]) / (levels_[j + 1] - levels_[j]);
  return a + t * (b - a);
}

double Kernel::max_on(std::size_t direction, double hi) const {
  double best = at(hi, direction);
  const auto n = direction_count();
  for (std::size_t j = 0; j < levels_.size() && levels_[j] <= hi; ++j)
    best = std::max(best, values_[j * n + direction]);
  return best;
}

double Kernel::min_on(std::size_t direction, double hi) const {
  double best = at(hi, direction);
  const auto n = direction_count();
  for (std::size_t j = 0; j < levels_.size() && levels_[j] <= hi; ++j)
    best = std::min(best, values_[j * n + direction]);
  return best;
}

double Kernel::lipschitz() const {
  const auto n = direction_count();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double slope = 0.0;
    for (std::size_t j = 0; j + 1 < levels_.size(); ++j) {
      const double rise = values_[(j + 1) * n + i] - values_[j * n + i];
      slope = std::max(slope, std::abs(rise) / (levels_[j + 1] - levels_[j]));
    }
    total += grid_->weight(i) * slope;
  }
  return total;
}

Kernel Kernel::centered() const {
  const auto n = direction_count();
  std::vector<double> v(values_);
  double shift = offset_;
  for (std::size_t i = 0; i < n; ++i) {
    const double base = values_[i];
    shift += grid_->weight(i) * base;
    for (std::size_t j = 0; j < levels_.size(); ++j) v[j * n + i] -= base;
  }
  return Kernel(grid_, levels_, std::move(v), shift, invariant_);
}

bool Kernel::is_centered() const noexcept {
  for (std::size_t i = 0; i < direction_count(); ++i)
    if (values_[i] != 0.0) return false;
  return true;
}

Kernel Kernel::without_offset() const { return Kernel(grid_, levels_, values_, 0.0, invariant_); }

double eval_integral(const Kernel& k, const RadialFunction& f) {
  require_same_grid(k.grid(), f.grid());
  const auto& grid = *k.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += grid.weight(i) * k.at(f[i], i);
  return k.offset() + sum;
}

}  // namespace radval
