#include "radval/sphere_grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"

namespace radval {

DirectionGrid::DirectionGrid(int dimension, std::vector<double> coords, std::vector<double> weights)
    : dimension_(dimension), coords_(std::move(coords)), weights_(std::move(weights)) {}

std::shared_ptr<const DirectionGrid> DirectionGrid::build(int dimension, std::size_t count) {
  if (dimension != 2 && dimension != 3) {
    throw std::invalid_argument("unsupported dimension " + std::to_string(dimension) +
                                " (expected 2 or 3)");
  }
  if (count < 2) throw std::invalid_argument("N < 2");

  const auto n = static_cast<std::size_t>(dimension);
  std::vector<double> coords(count * n);
  const double pi = std::numbers::pi;

  if (dimension == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double angle = 2.0 * pi * static_cast<double>(i) / static_cast<double>(count);
      coords[2 * i] = std::cos(angle);
      coords[2 * i + 1] = std::sin(angle);
    }
  } else {
    // Fibonacci lattice: equal-area latitude bands, golden-angle longitude steps.
    const double golden_angle = pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * static_cast<double>(i);
      double x = r * std::cos(phi);
      double y = r * std::sin(phi);
      double zz = z;
      const double norm = std::sqrt(x * x + y * y + zz * zz);
      coords[3 * i] = x / norm;
      coords[3 * i + 1] = y / norm;
      coords[3 * i + 2] = zz / norm;
    }
  }

  std::vector<double> weights(count, 1.0 / static_cast<double>(count));
  return std::shared_ptr<const DirectionGrid>(
      new DirectionGrid(dimension, std::move(coords), std::move(weights)));
}

std::span<const double> DirectionGrid::point(std::size_t i) const {
  if (i >= size()) throw RangeError("direction index " + std::to_string(i) + " out of range");
  const auto n = static_cast<std::size_t>(dimension_);
  return std::span<const double>(coords_).subspan(i * n, n);
}

double DirectionGrid::weight(std::size_t i) const {
  if (i >= size()) throw RangeError("direction index " + std::to_string(i) + " out of range");
  return weights_[i];
}

double DirectionGrid::distance(std::size_t i, std::size_t j) const {
  const auto a = point(i);
  const auto b = point(j);
  if (i == j) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

bool DirectionGrid::equivalent(const DirectionGrid& other) const noexcept {
  return dimension_ == other.dimension_ && coords_ == other.coords_ && weights_ == other.weights_;
}

GridPtr build_grid(int dimension, std::size_t count) { return DirectionGrid::build(dimension, count); }

double distance(const DirectionGrid& grid, std::size_t i, std::size_t j) { return grid.distance(i, j); }

bool same_grid(const GridPtr& a, const GridPtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->equivalent(*b);
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  if (!same_grid(a, b)) throw GridMismatch("operands are defined on different direction grids");
}

// ---------------------------------------------------------------------------

GridSubset::GridSubset(GridPtr grid, std::vector<bool> mask) : grid_(std::move(grid)), mask_(std::move(mask)) {
  if (!grid_) throw std::invalid_argument("GridSubset requires a grid");
  if (mask_.size() != grid_->size()) {
    throw std::invalid_argument("subset mask length " + std::to_string(mask_.size()) +
                                " does not match grid size " + std::to_string(grid_->size()));
  }
}

GridSubset GridSubset::empty(GridPtr grid) {
  const auto n = grid->size();
  return GridSubset(std::move(grid), std::vector<bool>(n, false));
}

GridSubset GridSubset::full(GridPtr grid) {
  const auto n = grid->size();
  return GridSubset(std::move(grid), std::vector<bool>(n, true));
}

GridSubset GridSubset::of(GridPtr grid, std::span<const std::size_t> indices) {
  std::vector<bool> mask(grid->size(), false);
  for (auto i : indices) {
    if (i >= mask.size()) throw RangeError("subset index " + std::to_string(i) + " out of range");
    mask[i] = true;
  }
  return GridSubset(std::move(grid), std::move(mask));
}

bool GridSubset::contains(std::size_t i) const {
  if (i >= mask_.size()) throw RangeError("subset index " + std::to_string(i) + " out of range");
  return mask_[i];
}

std::size_t GridSubset::count() const noexcept {
  std::size_t c = 0;
  for (bool b : mask_) c += b ? 1 : 0;
  return c;
}

std::vector<std::size_t> GridSubset::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

GridSubset GridSubset::complement() const {
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = !mask_[i];
  return GridSubset(grid_, std::move(mask));
}

GridSubset GridSubset::operator|(const GridSubset& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] || other.mask_[i];
  return GridSubset(grid_, std::move(mask));
}

GridSubset GridSubset::operator&(const GridSubset& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<bool> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] && other.mask_[i];
  return GridSubset(grid_, std::move(mask));
}

bool GridSubset::subset_of(const GridSubset& other) const {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && !other.mask_[i]) return false;
  return true;
}

bool GridSubset::disjoint_from(const GridSubset& other) const {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i] && other.mask_[i]) return false;
  return true;
}

bool GridSubset::operator==(const GridSubset& other) const {
  return same_grid(grid_, other.grid_) && mask_ == other.mask_;
}

GridSubset outer_band(const GridSubset& A, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("outer_band requires omega > 0");
  const auto& grid = *A.grid();
  const auto members = A.indices();
  std::vector<bool> band(A.grid_size(), false);
  if (members.empty()) return GridSubset(A.grid(), std::move(band));

  for (std::size_t i = 0; i < band.size(); ++i) {
    if (A.mask()[i]) continue;
    double d = std::numeric_limits<double>::infinity();
    for (auto j : members) d = std::min(d, grid.distance(i, j));
    band[i] = d > 0.0 && d < omega;
  }
  return GridSubset(A.grid(), std::move(band));
}

double grid_mass(const GridSubset& A) {
  const auto w = A.grid()->weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (A.mask()[i]) sum += w[i];
  return sum;
}

}  // namespace radval
