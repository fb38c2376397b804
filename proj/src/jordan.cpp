#include "radval/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "radval/errors.hpp"
#include "radval/random.hpp"

namespace radval {

double vplus_kernel(const Kernel& k, const RadialFunction& f) {
  require_same_grid(k.grid(), f.grid());
  const Kernel c = k.centered();
  const auto& grid = *c.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += grid.weight(i) * c.max_on(i, f[i]);
  return sum;
}

double lattice_level(double top, int k, int level_steps) noexcept {
  if (k <= 0) return 0.0;
  if (k >= level_steps) return top;
  return top * static_cast<double>(k) / static_cast<double>(level_steps);
}

namespace {

class LatticePoint {
 public:
  LatticePoint(const RadialFunction& f, int steps) : f_(f), steps_(steps), k_(f.size(), 0) {}

  void set(std::size_t i, int k) { k_[i] = k; }
  int get(std::size_t i) const { return k_[i]; }
  void fill(int k) { std::fill(k_.begin(), k_.end(), k); }

  RadialFunction value() const {
    std::vector<double> v(k_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lattice_level(f_[i], k_[i], steps_);
    return RadialFunction(f_.grid(), std::move(v));
  }

 private:
  const RadialFunction& f_;
  int steps_;
  std::vector<int> k_;
};

}  // namespace

double vplus_blackbox(const Valuation& V, const RadialFunction& f, int level_steps, const SearchOptions& options) {
  if (level_steps < 2) throw std::invalid_argument("vplus_blackbox requires level_steps >= 2");
  Rng rng(options.seed);
  const std::size_t n = f.size();
  const int starts = std::max(2, options.restarts);
  double best = -std::numeric_limits<double>::infinity();

  for (int r = 0; r < starts; ++r) {
    LatticePoint g(f, level_steps);
    if (r == 0) {
      g.fill(level_steps);
    } else if (r == 1) {
      g.fill(0);
    } else {
      for (std::size_t i = 0; i < n; ++i) g.set(i, static_cast<int>(rng.index(static_cast<std::size_t>(level_steps) + 1)));
    }
    double current = V(g.value());
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i) {
        const int keep = g.get(i);
        int arg = keep;
        for (int k = 0; k <= level_steps; ++k) {
          if (k == keep) continue;
          g.set(i, k);
          const double v = V(g.value());
          if (v > current) {
            current = v;
            arg = k;
          }
        }
        g.set(i, arg);
        improved = improved || arg != keep;
      }
      if (!improved) break;
    }
    best = std::max(best, current);
  }
  return best;
}

double brute_force_sup(const Valuation& V, const RadialFunction& f, int level_steps) {
  if (level_steps < 1) throw std::invalid_argument("brute_force_sup requires level_steps >= 1");
  const std::size_t n = f.size();
  const auto base = static_cast<double>(level_steps + 1);
  if (static_cast<double>(n) * std::log(base) > std::log(1e6) + 1e-9) {
    throw PreconditionViolation("brute_force_sup: (L+1)^N = " + std::to_string(level_steps + 1) + "^" +
                                std::to_string(n) + " exceeds 10^6");
  }
  LatticePoint g(f, level_steps);
  double best = V(g.value());
  // Mixed-radix odometer over all (L + 1)^N lattice points.
  while (true) {
    std::size_t i = 0;
    while (i < n && g.get(i) == level_steps) {
      g.set(i, 0);
      ++i;
    }
    if (i == n) break;
    g.set(i, g.get(i) + 1);
    best = std::max(best, V(g.value()));
  }
  return best;
}

namespace {

std::vector<double> refined_levels(const Kernel& c) {
  const auto n = c.direction_count();
  const auto& lv = c.levels();
  std::vector<double> levels(lv);
  for (std::size_t i = 0; i < n; ++i) {
    double running = c.value(0, i);
    for (std::size_t j = 0; j + 1 < lv.size(); ++j) {
      const double a = c.value(j, i);
      const double b = c.value(j + 1, i);
      if (b <= running) continue;
      if (a < running) {
        const double s = lv[j] + (running - a) / (b - a) * (lv[j + 1] - lv[j]);
        if (s > lv[j] && s < lv[j + 1]) levels.push_back(s);
      }
      running = b;
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

}  // namespace

Kernel positive_part(const Kernel& k) {
  const Kernel c = k.centered();
  const auto levels = refined_levels(c);
  const auto n = c.direction_count();
  std::vector<double> values(levels.size() * n);
  for (std::size_t j = 0; j < levels.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) values[j * n + i] = c.max_on(i, levels[j]);
  return Kernel(c.grid(), levels, std::move(values), 0.0, c.invariant());
}

Kernel negative_part(const Kernel& k) {
  const Kernel c = k.centered();
  const Kernel plus = positive_part(k);
  const auto& levels = plus.levels();
  const auto n = c.direction_count();
  std::vector<double> values(plus.values());
  for (std::size_t j = 0; j < levels.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) values[j * n + i] -= c.at(levels[j], i);
  return Kernel(c.grid(), levels, std::move(values), 0.0, c.invariant());
}

namespace {

class SearchedPositivePart final : public Valuation {
 public:
  SearchedPositivePart(ValuationPtr base, int steps, SearchOptions options)
      : base_(std::move(base)), steps_(steps), options_(options) {}
  double evaluate(const RadialFunction& f) const override { return vplus_blackbox(*base_, f, steps_, options_); }
  std::string descriptor() const override { return "plus(" + base_->descriptor() + ")"; }
  bool is_positive() const override { return true; }

 private:
  ValuationPtr base_;
  int steps_;
  SearchOptions options_;
};

}  // namespace

DecompositionResult decompose(const ValuationPtr& V, std::span<const RadialFunction> test_suite, int level_steps,
                              const SearchOptions& options) {
  GridPtr grid;
  if (const Kernel* k = V->kernel()) {
    grid = k->grid();
  } else if (!test_suite.empty()) {
    grid = test_suite.front().grid();
  } else {
    throw std::invalid_argument("decompose: black-box valuation needs a non-empty test suite to fix the grid");
  }
  const double at_zero = V->evaluate(RadialFunction::zero(grid));
  if (std::abs(at_zero) > 1e-12) {
    throw PreconditionViolation("decompose requires V(0) = 0, got " + std::to_string(at_zero));
  }

  DecompositionResult out;
  if (const Kernel* k = V->kernel()) {
    out.plus = kernel_valuation(positive_part(*k), "plus(" + V->descriptor() + ")");
    out.minus = kernel_valuation(negative_part(*k), "minus(" + V->descriptor() + ")");
    out.rotation_invariant = k->invariant();
  } else {
    out.plus = std::make_shared<SearchedPositivePart>(V, level_steps, options);
    out.minus = difference(out.plus, V, true, "minus(" + V->descriptor() + ")");
  }
  for (const auto& f : test_suite) {
    out.residual_report = std::max(out.residual_report, std::abs(V->evaluate(f) - (out.plus->evaluate(f) - out.minus->evaluate(f))));
  }
  return out;
}

}  // namespace radval
