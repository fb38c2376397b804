#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "radval/sphere_grid.hpp"
#include "radval/valuation.hpp"

namespace radval {

/// Additive set function on grid subsets, one density value per direction.
class GridMeasure {
 public:
  GridMeasure(GridPtr grid, std::vector<double> density,
              double lambda = std::numeric_limits<double>::quiet_NaN());

  const GridPtr& grid() const noexcept { return grid_; }
  const std::vector<double>& density() const noexcept { return density_; }
  /// Level the measure was built for; NaN when it has none.
  double lambda() const noexcept { return lambda_; }

  /// Sum of densities over A in index order.
  double operator()(const GridSubset& A) const;
  double total() const noexcept;

 private:
  GridPtr grid_;
  std::vector<double> density_;
  double lambda_;
};

/// mu_lambda(A) = sup{V(f) : supp f in A, |f|_inf <= lambda}. On the grid
/// the infimum over open supersets is the identity, so the density at t_i is
/// w_i max_{0 <= s <= lambda} K(s, t_i) for the centered kernel.
/// Requires a positive, centered kernel valuation.
GridMeasure control_measure(const Valuation& V, double lambda);

/// zeta_lambda(C) = inf{V(f) : f = lambda on C, 0 <= f <= lambda}, in closed
/// form for kernel valuations. Same requirements as control_measure.
double content(const Valuation& V, double lambda, const GridSubset& C);

/// nu_lambda with nu_lambda(A) = Vbar(lambda chi_A). Positive kernel
/// valuations use density w_i K(lambda, t_i); signed kernel valuations go
/// through the Jordan decomposition (nu of V+ minus nu of V-); black boxes
/// are evaluated on single-direction indicators. V must be centered.
GridMeasure representing_measure(const ValuationPtr& V, const GridPtr& grid, double lambda);

/// nu_lambda(V+) - nu_lambda(V-) for the two positive kernel valuations of a
/// decomposition.
GridMeasure representing_measure_signed(const Valuation& plus, const Valuation& minus, double lambda);

/// mu = sum_{k=1}^{k_max} mu_k / (2^k mu_k(S)), where mu_k adds the control
/// measures of V+ and V-. Terms with mu_k(S) = 0 are dropped; if all are,
/// DegenerateMeasure is thrown. k_max defaults to ceil(lambda_max) + 1,
/// capped at the kernel's last level.
GridMeasure normalized_control(const ValuationPtr& V, double lambda_max, std::optional<int> k_max = std::nullopt);

/// Per-direction ratio nu_i / mu_i (0 where both vanish). Throws
/// PreconditionViolation if nu charges a direction with mu_i <= 0.
std::vector<double> radon_nikodym(const GridMeasure& nu, const GridMeasure& mu);

}  // namespace radval
