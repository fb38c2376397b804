#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <vector>

#include "radval/star_core.hpp"
#include "radval/valuation.hpp"

namespace radval {

/// Extension Vbar of a valuation to simple star sets,
///   Vbar(sum a_i chi_{A_i}) = V(0) + sum_i nu_{a_i}(A_i),
/// where nu_lambda are the representing measures of V - V(0), and to arbitrary
/// grid radial functions as the limit over quantizations.
///
/// Representing-measure densities are cached per level. The cache is safe for
/// concurrent readers; population is idempotent.
class Extension {
 public:
  Extension(ValuationPtr V, GridPtr grid);

  const ValuationPtr& valuation() const noexcept { return V_; }
  double base() const noexcept { return base_; }

  double simple(const SimpleStarSet& g) const;
  /// Limit of simple(quantize(f, 2^-j)), j = 1, 2, ..., stopped once
  /// 2^-j <= tol and two successive values differ by less than tol, or once
  /// the quantization reproduces f exactly. Throws NotConverged after 60
  /// halvings.
  double bounded(const RadialFunction& f, double tol) const;

  /// Density of nu_lambda (cached).
  const std::vector<double>& nu_density(double lambda) const;

 private:
  ValuationPtr V_;
  GridPtr grid_;
  ValuationPtr centered_;
  // Set for signed kernel valuations: the decomposition is computed once.
  ValuationPtr plus_;
  ValuationPtr minus_;
  double base_;
  mutable std::shared_mutex mutex_;
  mutable std::map<double, std::vector<double>> cache_;
};

double extend_simple(const ValuationPtr& V, const SimpleStarSet& g);
double extend_bounded(const ValuationPtr& V, const RadialFunction& f, double tol);

/// |Vbar(quantize(f, delta_j)) - V(f)| per delta_j, for a kernel valuation.
std::vector<double> agreement_check(const ValuationPtr& V, const RadialFunction& f, std::span<const double> deltas);

struct CauchyReport {
  /// max_{i >= tail_index} |Vbar(g_{i+1}) - Vbar(g_i)|.
  double max_gap = 0.0;
  std::size_t tail_index = 0;
  /// Successive Vbar gaps, one per adjacent pair.
  std::vector<double> gaps;
  /// False when the input does not look Cauchy in the sup metric: the
  /// largest step in the second half is not below half the largest step in
  /// the first half.
  bool input_cauchy = true;
};

CauchyReport cauchy_check(const ValuationPtr& V, std::span<const SimpleStarSet> sequence);

}  // namespace radval
