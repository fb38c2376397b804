#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace radval {

/// Finite quadrature model of the unit sphere S^{n-1}: unit directions with
/// positive weights summing to one. Immutable once built.
class DirectionGrid {
 public:
  /// n = 2: `count` equally spaced angles. n = 3: Fibonacci lattice.
  /// All weights equal 1/count. Throws std::invalid_argument for any other
  /// dimension or for count < 2.
  static std::shared_ptr<const DirectionGrid> build(int dimension, std::size_t count);

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::span<const double> point(std::size_t i) const;
  double weight(std::size_t i) const;
  std::span<const double> weights() const noexcept { return weights_; }

  /// Chordal distance |t_i - t_j|.
  double distance(std::size_t i, std::size_t j) const;

  /// Structural equality: same dimension and identical points and weights.
  bool equivalent(const DirectionGrid& other) const noexcept;

 private:
  DirectionGrid(int dimension, std::vector<double> coords, std::vector<double> weights);

  int dimension_;
  std::vector<double> coords_;  // row-major, size() x dimension_
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const DirectionGrid>;

GridPtr build_grid(int dimension, std::size_t count);
double distance(const DirectionGrid& grid, std::size_t i, std::size_t j);

/// True when both pointers denote the same grid (by identity or structure).
bool same_grid(const GridPtr& a, const GridPtr& b) noexcept;
/// Throws GridMismatch unless same_grid(a, b).
void require_same_grid(const GridPtr& a, const GridPtr& b);

/// Subset of the direction grid as a membership mask. On a finite grid every
/// subset is both open and closed.
class GridSubset {
 public:
  GridSubset(GridPtr grid, std::vector<bool> mask);

  static GridSubset empty(GridPtr grid);
  static GridSubset full(GridPtr grid);
  static GridSubset of(GridPtr grid, std::span<const std::size_t> indices);

  const GridPtr& grid() const noexcept { return grid_; }
  std::size_t grid_size() const noexcept { return mask_.size(); }
  bool contains(std::size_t i) const;
  std::size_t count() const noexcept;
  bool is_empty() const noexcept { return count() == 0; }
  std::vector<std::size_t> indices() const;
  const std::vector<bool>& mask() const noexcept { return mask_; }

  GridSubset complement() const;
  GridSubset operator|(const GridSubset& other) const;
  GridSubset operator&(const GridSubset& other) const;
  bool subset_of(const GridSubset& other) const;
  bool disjoint_from(const GridSubset& other) const;

  bool operator==(const GridSubset& other) const;

 private:
  GridPtr grid_;
  std::vector<bool> mask_;
};

/// Points at distance strictly between 0 and omega from A. Distance to the
/// empty set is +infinity, so the band of the empty set is empty.
GridSubset outer_band(const GridSubset& A, double omega);

/// Sum of quadrature weights over A, accumulated in index order.
double grid_mass(const GridSubset& A);

}  // namespace radval
