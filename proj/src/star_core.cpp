#include "radval/star_core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"

namespace radval {

RadialFunction::RadialFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("RadialFunction requires a grid");
  if (values_.size() != grid_->size()) {
    throw std::invalid_argument("radial function has " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_->size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw std::invalid_argument("radial function value at " + std::to_string(i) +
                                  " is negative or not finite");
    }
  }
}

RadialFunction RadialFunction::zero(GridPtr grid) { return constant(std::move(grid), 0.0); }

RadialFunction RadialFunction::constant(GridPtr grid, double c) {
  const auto n = grid->size();
  return RadialFunction(std::move(grid), std::vector<double>(n, c));
}

RadialFunction RadialFunction::indicator(const GridSubset& A, double level) {
  std::vector<double> v(A.grid_size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (A.mask()[i]) v[i] = level;
  return RadialFunction(A.grid(), std::move(v));
}

double RadialFunction::norm() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

bool RadialFunction::operator==(const RadialFunction& other) const {
  return same_grid(grid_, other.grid_) && values_ == other.values_;
}

namespace {

template <class Op>
RadialFunction pointwise(const RadialFunction& f, const RadialFunction& g, Op op) {
  require_same_grid(f.grid(), g.grid());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return RadialFunction(f.grid(), std::move(out));
}

}  // namespace

RadialFunction join(const RadialFunction& f, const RadialFunction& g) {
  return pointwise(f, g, [](double a, double b) { return std::max(a, b); });
}

RadialFunction meet(const RadialFunction& f, const RadialFunction& g) {
  return pointwise(f, g, [](double a, double b) { return std::min(a, b); });
}

RadialFunction radial_sum(const RadialFunction& f, const RadialFunction& g) {
  return pointwise(f, g, [](double a, double b) { return a + b; });
}

RadialFunction scale(const RadialFunction& f, double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("radial functions scale by nonnegative factors only");
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v *= c;
  return RadialFunction(f.grid(), std::move(out));
}

double radial_metric(const RadialFunction& f, const RadialFunction& g) {
  require_same_grid(f.grid(), g.grid());
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
  return d;
}

GridSubset support(const RadialFunction& f) {
  std::vector<bool> mask(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mask[i] = f[i] > 0.0;
  return GridSubset(f.grid(), std::move(mask));
}

bool pointwise_le(const RadialFunction& f, const RadialFunction& g) {
  require_same_grid(f.grid(), g.grid());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > g[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------

SimpleStarSet::SimpleStarSet(GridPtr grid, std::vector<GridSubset> cells, std::vector<double> levels)
    : grid_(std::move(grid)), cells_(std::move(cells)), levels_(std::move(levels)) {
  if (!grid_) throw std::invalid_argument("SimpleStarSet requires a grid");
  if (cells_.size() != levels_.size()) {
    throw std::invalid_argument("simple star set needs one level per cell");
  }
  for (double a : levels_) {
    if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("simple star set levels must be >= 0");
  }
  std::vector<int> cover(grid_->size(), 0);
  for (const auto& cell : cells_) {
    require_same_grid(grid_, cell.grid());
    for (std::size_t i = 0; i < cover.size(); ++i) cover[i] += cell.mask()[i] ? 1 : 0;
  }
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (cover[i] > 1) throw PreconditionViolation("cells overlap at direction " + std::to_string(i));
    if (cover[i] == 0) throw PreconditionViolation("cells do not cover direction " + std::to_string(i));
  }
}

namespace {

SimpleStarSet group_by_level(const GridPtr& grid, std::span<const double> values) {
  std::map<double, std::vector<bool>> groups;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(values[i], values.size(), false);
    it->second[i] = true;
  }
  std::vector<GridSubset> cells;
  std::vector<double> levels;
  for (auto& [level, mask] : groups) {
    cells.emplace_back(grid, std::move(mask));
    levels.push_back(level);
  }
  return SimpleStarSet(grid, std::move(cells), std::move(levels));
}

}  // namespace

SimpleStarSet SimpleStarSet::from_radial(const RadialFunction& f) { return group_by_level(f.grid(), f.values()); }

SimpleStarSet SimpleStarSet::merged() const {
  const auto r = to_radial(*this);
  return group_by_level(grid_, r.values());
}

SimpleStarSet SimpleStarSet::refined() const {
  std::vector<GridSubset> cells;
  std::vector<double> levels;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (auto i : cells_[c].indices()) {
      const std::size_t idx[] = {i};
      cells.push_back(GridSubset::of(grid_, idx));
      levels.push_back(levels_[c]);
    }
  }
  return SimpleStarSet(grid_, std::move(cells), std::move(levels));
}

SimpleStarSet quantize(const RadialFunction& f, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("quantize requires delta > 0");
  // Cell index per direction; the half-open interval rule is enforced on the
  // computed products so that rounding never breaks f <= level < f + delta.
  // Cell indices are kept as doubles: for tiny dyadic steps v / delta exceeds
  // the integer range, but stays exact.
  std::map<double, std::vector<bool>> groups;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double v = f[k];
    double i = std::max(1.0, std::ceil(v / delta));
    for (int step = 0; step < 4 && i * delta < v; ++step) i += 1.0;
    for (int step = 0; step < 4 && i > 1.0 && (i - 1.0) * delta >= v; ++step) i -= 1.0;
    auto [it, inserted] = groups.try_emplace(i, f.size(), false);
    it->second[k] = true;
  }
  std::vector<GridSubset> cells;
  std::vector<double> levels;
  for (auto& [i, mask] : groups) {
    cells.emplace_back(f.grid(), std::move(mask));
    levels.push_back(i * delta);
  }
  return SimpleStarSet(f.grid(), std::move(cells), std::move(levels));
}

RadialFunction to_radial(const SimpleStarSet& g) {
  std::vector<double> v(g.grid()->size(), 0.0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto& mask = g.cells()[c].mask();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask[i]) v[i] = g.levels()[c];
  }
  return RadialFunction(g.grid(), std::move(v));
}

namespace {

template <class Op>
SimpleStarSet refine_combine(const SimpleStarSet& g, const SimpleStarSet& h, Op op) {
  require_same_grid(g.grid(), h.grid());
  std::vector<GridSubset> cells;
  std::vector<double> levels;
  for (std::size_t a = 0; a < g.cell_count(); ++a) {
    for (std::size_t b = 0; b < h.cell_count(); ++b) {
      auto cell = g.cells()[a] & h.cells()[b];
      if (cell.is_empty()) continue;
      cells.push_back(std::move(cell));
      levels.push_back(op(g.levels()[a], h.levels()[b]));
    }
  }
  return SimpleStarSet(g.grid(), std::move(cells), std::move(levels));
}

}  // namespace

SimpleStarSet join(const SimpleStarSet& g, const SimpleStarSet& h) {
  return refine_combine(g, h, [](double a, double b) { return std::max(a, b); });
}

SimpleStarSet meet(const SimpleStarSet& g, const SimpleStarSet& h) {
  return refine_combine(g, h, [](double a, double b) { return std::min(a, b); });
}

}  // namespace radval
