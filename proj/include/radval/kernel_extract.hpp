#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "radval/kernel.hpp"
#include "radval/measures.hpp"
#include "radval/valuation.hpp"

namespace radval {

struct ExtractOptions {
  /// Maximum number of valuation evaluations (levels x directions); extraction
  /// fails instead of subsampling when exceeded.
  std::optional<std::size_t> budget;
};

/// Kernel with offset V(0) and K(lambda_j, t_i) = nu_{lambda_j}({t_i}) / w_i,
/// the representing measure of V - V(0) on single-direction cells (signed
/// kernel valuations through the Jordan route). Row 0 is zero.
Kernel extract_kernel(const ValuationPtr& V, const GridPtr& grid, std::span<const double> lambda_grid,
                      const ExtractOptions& options = {});

/// max over `trials` random simple star sets with levels drawn from k's level
/// grid of |Vbar(g) - eval_integral(k, g)|.
double roundtrip_error(const ValuationPtr& V, const Kernel& k, int trials, std::uint64_t seed);

/// max over the given subsets of |nu_lambda(A) - nu_lambda2(A)|.
double nu_modulus(const ValuationPtr& V, const GridPtr& grid, double lambda, double lambda2,
                  std::span<const GridSubset> subsets);

/// sup over all subsets A of |m1(A) - m2(A)|: the larger of the positive and
/// negative parts of the density difference.
double max_subset_gap(const GridMeasure& m1, const GridMeasure& m2);

/// sum_i |K(lambda, t_i) - K(lambda2, t_i)| mu_i.
double l1_modulus(const Kernel& k, const GridMeasure& mu, double lambda, double lambda2);

/// Kernel whose rows are the Radon-Nikodym densities d nu_lambda / d mu on
/// the given levels (offset V(0)). Used with l1_modulus, where the norm is
/// taken in L1(mu).
Kernel density_kernel(const ValuationPtr& V, const GridMeasure& mu, std::span<const double> lambda_grid);

}  // namespace radval
