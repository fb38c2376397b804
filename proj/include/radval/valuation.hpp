#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "radval/kernel.hpp"
#include "radval/sphere_grid.hpp"
#include "radval/star_core.hpp"

namespace radval {

/// A real functional on radial functions. Implementations are immutable and
/// reentrant.
class Valuation {
 public:
  virtual ~Valuation() = default;

  virtual double evaluate(const RadialFunction& f) const = 0;
  virtual std::string descriptor() const = 0;
  /// Claimed nonnegativity on every input.
  virtual bool is_positive() const = 0;
  /// Kernel behind the functional, or nullptr for a black box.
  virtual const Kernel* kernel() const noexcept { return nullptr; }

  double operator()(const RadialFunction& f) const { return evaluate(f); }
};

using ValuationPtr = std::shared_ptr<const Valuation>;

/// f -> eval_integral(k, f). Positivity is derived from the kernel: the
/// minimum over inputs is offset + sum_i w_i min_j K(lambda_j, t_i).
class KernelValuation final : public Valuation {
 public:
  KernelValuation(Kernel k, std::string descriptor);

  double evaluate(const RadialFunction& f) const override { return eval_integral(kernel_, f); }
  std::string descriptor() const override { return descriptor_; }
  bool is_positive() const override { return positive_; }
  const Kernel* kernel() const noexcept override { return &kernel_; }

 private:
  Kernel kernel_;
  std::string descriptor_;
  bool positive_;
};

ValuationPtr kernel_valuation(Kernel k, std::string descriptor = "kernel");

/// f -> min_i f_i: orthogonally additive and continuous, but not a valuation.
ValuationPtr min_functional();

/// f -> height * sum_i w_i [f_i > threshold]. A valuation whose kernel jumps
/// at `threshold`; fixture for the continuity diagnostics.
ValuationPtr step_functional(double threshold, double height);

/// Forwards evaluate() but hides any kernel.
ValuationPtr black_box(ValuationPtr inner);

/// f -> a(f) - b(f). Positivity must be claimed by the caller.
ValuationPtr difference(ValuationPtr a, ValuationPtr b, bool claimed_positive, std::string descriptor);

/// V - V(0). Kernel valuations stay kernel valuations (centered kernel, no
/// offset); anything else is wrapped.
ValuationPtr center(const ValuationPtr& V, const GridPtr& grid);

/// |V(f v g) + V(f ^ g) - V(f) - V(g)|.
double check_valuation_identity(const Valuation& V, const RadialFunction& f, const RadialFunction& g);

/// |V(f1 + f2 + f) - V(f1 + f) - V(f2 + f) + V(f)|, defined for f1 ^ f2 = 0.
/// Throws PreconditionViolation otherwise.
double check_additive(const Valuation& V, const RadialFunction& f1, const RadialFunction& f2,
                      const RadialFunction& f);

/// max |V(f)| over `samples` seeded random f with values in [0, lambda].
/// Evidence of boundedness only.
double bounded_diagnostic(const Valuation& V, const GridPtr& grid, double lambda, int samples, std::uint64_t seed);

/// For each omega, sup |V(f) - V(0)| over f supported in outer_band(A, omega)
/// with values in [0, lambda]. Exact for kernel valuations; throws
/// Unsupported for black boxes. `omegas` must be positive and strictly
/// decreasing.
std::vector<double> rim_decay(const Valuation& V, const GridSubset& A, double lambda, std::span<const double> omegas);

/// Rotation-invariant kernel theta(lambda_j) = V(lambda_j * 1) - V(0), offset V(0).
Kernel theta_recover(const Valuation& V, const GridPtr& grid, std::span<const double> lambda_grid);

}  // namespace radval
