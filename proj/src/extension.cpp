#include "radval/extension.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"
#include "radval/jordan.hpp"
#include "radval/measures.hpp"

namespace radval {

Extension::Extension(ValuationPtr V, GridPtr grid)
    : V_(std::move(V)),
      grid_(std::move(grid)),
      centered_(center(V_, grid_)),
      base_(V_->evaluate(RadialFunction::zero(grid_))) {
  if (centered_->kernel() != nullptr && !centered_->is_positive()) {
    auto parts = decompose(centered_, {});
    plus_ = std::move(parts.plus);
    minus_ = std::move(parts.minus);
  }
}

const std::vector<double>& Extension::nu_density(double lambda) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(lambda); it != cache_.end()) return it->second;
  }
  auto density = plus_ ? representing_measure_signed(*plus_, *minus_, lambda).density()
                       : representing_measure(centered_, grid_, lambda).density();
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.try_emplace(lambda, std::move(density));
  return it->second;
}

double Extension::simple(const SimpleStarSet& g) const {
  require_same_grid(grid_, g.grid());
  double sum = 0.0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto& density = nu_density(g.levels()[c]);
    const auto& mask = g.cells()[c].mask();
    double cell = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i)
      if (mask[i]) cell += density[i];
    sum += cell;
  }
  return base_ + sum;
}

double Extension::bounded(const RadialFunction& f, double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("extend_bounded requires tol > 0");
  double previous = 0.0;
  for (int j = 1; j <= 60; ++j) {
    const double delta = std::ldexp(1.0, -j);
    const auto g = quantize(f, delta);
    const double value = simple(g);
    if (to_radial(g) == f) return value;
    if (j > 1 && delta <= tol && std::abs(value - previous) < tol) return value;
    previous = value;
  }
  throw NotConverged("extend_bounded did not stabilize within 60 halvings; " + V_->descriptor() +
                     " may not be a continuous valuation");
}

double extend_simple(const ValuationPtr& V, const SimpleStarSet& g) { return Extension(V, g.grid()).simple(g); }

double extend_bounded(const ValuationPtr& V, const RadialFunction& f, double tol) {
  return Extension(V, f.grid()).bounded(f, tol);
}

std::vector<double> agreement_check(const ValuationPtr& V, const RadialFunction& f, std::span<const double> deltas) {
  const Kernel* k = V->kernel();
  if (k == nullptr) throw Unsupported("agreement_check compares against the kernel integral; got a black box");
  const Extension ext(V, f.grid());
  const double exact = eval_integral(*k, f);
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double delta : deltas) out.push_back(std::abs(ext.simple(quantize(f, delta)) - exact));
  return out;
}

CauchyReport cauchy_check(const ValuationPtr& V, std::span<const SimpleStarSet> sequence) {
  CauchyReport report;
  if (sequence.size() < 2) return report;
  const Extension ext(V, sequence.front().grid());

  std::vector<double> values;
  std::vector<double> steps;
  values.reserve(sequence.size());
  for (const auto& g : sequence) values.push_back(ext.simple(g));
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    report.gaps.push_back(std::abs(values[i + 1] - values[i]));
    steps.push_back(radial_metric(to_radial(sequence[i]), to_radial(sequence[i + 1])));
  }

  const std::size_t half = steps.size() / 2;
  report.tail_index = half;
  for (std::size_t i = half; i < report.gaps.size(); ++i) report.max_gap = std::max(report.max_gap, report.gaps[i]);

  const double head = *std::max_element(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(half, 1)));
  const double tail = *std::max_element(steps.begin() + static_cast<std::ptrdiff_t>(half), steps.end());
  report.input_cauchy = tail == 0.0 || tail <= 0.5 * head;
  return report;
}

}  // namespace radval
