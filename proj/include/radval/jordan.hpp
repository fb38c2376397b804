#pragma once

#include <cstdint>
#include <span>

#include "radval/kernel.hpp"
#include "radval/star_core.hpp"
#include "radval/valuation.hpp"

namespace radval {

/// sup{V(g) : 0 <= g <= f} for the centered kernel valuation, in closed form:
/// sum_i w_i max_{0 <= s <= f_i} K(s, t_i). The kernel is centered first, so
/// the result is the positive part of V - V(0).
double vplus_kernel(const Kernel& k, const RadialFunction& f);

struct SearchOptions {
  int restarts = 8;
  std::uint64_t seed = 0x5eed;
  int max_sweeps = 100;
};

/// Coordinate ascent over the lattice {g : g_i in {0, f_i/L, ..., f_i}}.
/// The first two starts are g = f and g = 0; the rest are seeded random
/// lattice points. Never exceeds the lattice maximum.
double vplus_blackbox(const Valuation& V, const RadialFunction& f, int level_steps, const SearchOptions& options = {});

/// Exhaustive maximum of V over the same lattice. Throws
/// PreconditionViolation when (L + 1)^N exceeds 10^6.
double brute_force_sup(const Valuation& V, const RadialFunction& f, int level_steps);

/// k-th lattice point between 0 and `top` with L steps; exact at both ends.
double lattice_level(double top, int k, int level_steps) noexcept;

/// Kernel of V+ for the centered kernel: the running maximum in lambda,
/// tabulated on the levels of k plus every point where the running maximum
/// starts rising again, so it is exact between knots. Offset is zero.
Kernel positive_part(const Kernel& k);
/// Kernel of V- = V+ - (V - V(0)) on the same refined levels.
Kernel negative_part(const Kernel& k);

struct DecompositionResult {
  ValuationPtr plus;
  ValuationPtr minus;
  /// max over the test suite of |V(f) - (V+(f) - V-(f))|.
  double residual_report = 0.0;
  bool rotation_invariant = false;
};

/// V = V+ - V- with V+(f) = sup{V(g) : 0 <= g <= f} and V- = V+ - V.
/// Kernel valuations decompose exactly through positive_part/negative_part;
/// black boxes get a V+ backed by vplus_blackbox with `level_steps`.
/// Throws PreconditionViolation if |V(0)| > 1e-12.
DecompositionResult decompose(const ValuationPtr& V, std::span<const RadialFunction> test_suite,
                              int level_steps = 8, const SearchOptions& options = {});

}  // namespace radval
