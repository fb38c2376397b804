#include "radval/measures.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"
#include "radval/jordan.hpp"

namespace radval {

GridMeasure::GridMeasure(GridPtr grid, std::vector<double> density, double lambda)
    : grid_(std::move(grid)), density_(std::move(density)), lambda_(lambda) {
  if (!grid_) throw std::invalid_argument("GridMeasure requires a grid");
  if (density_.size() != grid_->size()) throw std::invalid_argument("measure density length differs from grid size");
  for (double d : density_) {
    if (!std::isfinite(d)) throw std::invalid_argument("measure densities must be finite");
  }
}

double GridMeasure::operator()(const GridSubset& A) const {
  require_same_grid(grid_, A.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < density_.size(); ++i)
    if (A.mask()[i]) sum += density_[i];
  return sum;
}

double GridMeasure::total() const noexcept {
  double sum = 0.0;
  for (double d : density_) sum += d;
  return sum;
}

namespace {

/// Centered kernel of a positive, centered kernel valuation.
Kernel positive_centered_kernel(const Valuation& V, const char* op) {
  const Kernel* k = V.kernel();
  if (k == nullptr) throw Unsupported(std::string(op) + " needs kernel structure; " + V.descriptor() + " is a black box");
  if (!V.is_positive()) throw PreconditionViolation(std::string(op) + " requires a positive valuation; decompose first");
  Kernel c = k->centered();
  if (std::abs(c.offset()) > 1e-12) {
    throw PreconditionViolation(std::string(op) + " requires V(0) = 0, got " + std::to_string(c.offset()));
  }
  return c;
}

void require_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite and >= 0");
}

}  // namespace

GridMeasure control_measure(const Valuation& V, double lambda) {
  require_lambda(lambda);
  const Kernel k = positive_centered_kernel(V, "control_measure");
  const auto& grid = *k.grid();
  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < density.size(); ++i) density[i] = grid.weight(i) * k.max_on(i, lambda);
  return GridMeasure(k.grid(), std::move(density), lambda);
}

double content(const Valuation& V, double lambda, const GridSubset& C) {
  require_lambda(lambda);
  const Kernel k = positive_centered_kernel(V, "content");
  require_same_grid(k.grid(), C.grid());
  const auto& grid = *k.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    sum += grid.weight(i) * (C.mask()[i] ? k.at(lambda, i) : k.min_on(i, lambda));
  return sum;
}

GridMeasure representing_measure(const ValuationPtr& V, const GridPtr& grid, double lambda) {
  require_lambda(lambda);
  const auto n = grid->size();
  std::vector<double> density(n);

  if (const Kernel* raw = V->kernel()) {
    require_same_grid(raw->grid(), grid);
    const Kernel c = raw->centered();
    if (std::abs(c.offset()) > 1e-12) {
      throw PreconditionViolation("representing_measure requires V(0) = 0, got " + std::to_string(c.offset()));
    }
    if (V->is_positive()) {
      for (std::size_t i = 0; i < n; ++i) density[i] = grid->weight(i) * c.at(lambda, i);
    } else {
      const auto parts = decompose(V, {});
      return representing_measure_signed(*parts.plus, *parts.minus, lambda);
    }
    return GridMeasure(grid, std::move(density), lambda);
  }

  const double base = V->evaluate(RadialFunction::zero(grid));
  if (std::abs(base) > 1e-12) {
    throw PreconditionViolation("representing_measure requires V(0) = 0, got " + std::to_string(base));
  }
  std::vector<double> point(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    point[i] = lambda;
    density[i] = V->evaluate(RadialFunction(grid, point)) - base;
    point[i] = 0.0;
  }
  return GridMeasure(grid, std::move(density), lambda);
}

GridMeasure representing_measure_signed(const Valuation& plus, const Valuation& minus, double lambda) {
  require_lambda(lambda);
  const Kernel p = positive_centered_kernel(plus, "representing_measure_signed");
  const Kernel m = positive_centered_kernel(minus, "representing_measure_signed");
  require_same_grid(p.grid(), m.grid());
  const auto& grid = *p.grid();
  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < density.size(); ++i)
    density[i] = grid.weight(i) * p.at(lambda, i) - grid.weight(i) * m.at(lambda, i);
  return GridMeasure(p.grid(), std::move(density), lambda);
}

GridMeasure normalized_control(const ValuationPtr& V, double lambda_max, std::optional<int> k_max) {
  const Kernel* raw = V->kernel();
  if (raw == nullptr) throw Unsupported("normalized_control needs kernel structure; " + V->descriptor() + " is a black box");
  const GridPtr grid = raw->grid();
  const auto parts = decompose(center(V, grid), {});

  int terms = 0;
  if (k_max) {
    terms = *k_max;
  } else {
    terms = static_cast<int>(std::ceil(lambda_max)) + 1;
    terms = std::min(terms, static_cast<int>(std::floor(raw->max_level())));
  }
  if (terms < 1) throw std::invalid_argument("normalized_control needs at least one integer level in kernel range");

  const auto n = grid->size();
  std::vector<double> density(n, 0.0);
  bool any = false;
  for (int k = 1; k <= terms; ++k) {
    const auto lambda = static_cast<double>(k);
    const auto plus = control_measure(*parts.plus, lambda);
    const auto minus = control_measure(*parts.minus, lambda);
    std::vector<double> mu_k(n);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mu_k[i] = plus.density()[i] + minus.density()[i];
      mass += mu_k[i];
    }
    if (!(mass > 0.0)) continue;
    any = true;
    const double scale = 1.0 / (std::ldexp(1.0, k) * mass);
    for (std::size_t i = 0; i < n; ++i) density[i] += mu_k[i] * scale;
  }
  if (!any) throw DegenerateMeasure("normalized control measure is degenerate: every control measure vanishes");
  return GridMeasure(grid, std::move(density));
}

std::vector<double> radon_nikodym(const GridMeasure& nu, const GridMeasure& mu) {
  require_same_grid(nu.grid(), mu.grid());
  const auto& a = nu.density();
  const auto& b = mu.density();
  std::vector<double> ratio(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] > 0.0) {
      ratio[i] = a[i] / b[i];
    } else if (a[i] != 0.0) {
      throw PreconditionViolation("nu is not absolutely continuous w.r.t. mu: direction " + std::to_string(i) +
                                  " has nu = " + std::to_string(a[i]) + " but mu = " + std::to_string(b[i]));
    }
  }
  return ratio;
}

}  // namespace radval
