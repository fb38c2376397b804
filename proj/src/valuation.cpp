#include "radval/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "radval/errors.hpp"
#include "radval/random.hpp"

namespace radval {

namespace {

bool kernel_is_positive(const Kernel& k) {
  const auto n = k.direction_count();
  double lowest = k.offset();
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k.level_count(); ++j) m = std::min(m, k.value(j, i));
    lowest += k.grid()->weight(i) * m;
  }
  return lowest >= 0.0;
}

class MinFunctional final : public Valuation {
 public:
  double evaluate(const RadialFunction& f) const override {
    double m = std::numeric_limits<double>::infinity();
    for (double v : f.values()) m = std::min(m, v);
    return m;
  }
  std::string descriptor() const override { return "min"; }
  bool is_positive() const override { return true; }
};

class StepFunctional final : public Valuation {
 public:
  StepFunctional(double threshold, double height) : threshold_(threshold), height_(height) {}

  double evaluate(const RadialFunction& f) const override {
    const auto& grid = *f.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f[i] > threshold_) sum += grid.weight(i) * height_;
    return sum;
  }
  std::string descriptor() const override {
    std::ostringstream os;
    os << "step(threshold=" << threshold_ << ",height=" << height_ << ")";
    return os.str();
  }
  bool is_positive() const override { return height_ >= 0.0; }

 private:
  double threshold_;
  double height_;
};

class BlackBox final : public Valuation {
 public:
  explicit BlackBox(ValuationPtr inner) : inner_(std::move(inner)) {}
  double evaluate(const RadialFunction& f) const override { return inner_->evaluate(f); }
  std::string descriptor() const override { return "blackbox(" + inner_->descriptor() + ")"; }
  bool is_positive() const override { return inner_->is_positive(); }

 private:
  ValuationPtr inner_;
};

class Difference final : public Valuation {
 public:
  Difference(ValuationPtr a, ValuationPtr b, bool positive, std::string descriptor)
      : a_(std::move(a)), b_(std::move(b)), positive_(positive), descriptor_(std::move(descriptor)) {}
  double evaluate(const RadialFunction& f) const override { return a_->evaluate(f) - b_->evaluate(f); }
  std::string descriptor() const override { return descriptor_; }
  bool is_positive() const override { return positive_; }

 private:
  ValuationPtr a_, b_;
  bool positive_;
  std::string descriptor_;
};

}  // namespace

KernelValuation::KernelValuation(Kernel k, std::string descriptor)
    : kernel_(std::move(k)), descriptor_(std::move(descriptor)), positive_(kernel_is_positive(kernel_)) {}

ValuationPtr kernel_valuation(Kernel k, std::string descriptor) {
  return std::make_shared<KernelValuation>(std::move(k), std::move(descriptor));
}

ValuationPtr min_functional() { return std::make_shared<MinFunctional>(); }

ValuationPtr step_functional(double threshold, double height) {
  return std::make_shared<StepFunctional>(threshold, height);
}

ValuationPtr black_box(ValuationPtr inner) { return std::make_shared<BlackBox>(std::move(inner)); }

ValuationPtr difference(ValuationPtr a, ValuationPtr b, bool claimed_positive, std::string descriptor) {
  return std::make_shared<Difference>(std::move(a), std::move(b), claimed_positive, std::move(descriptor));
}

namespace {

class Shifted final : public Valuation {
 public:
  Shifted(ValuationPtr inner, double base) : inner_(std::move(inner)), base_(base) {}
  double evaluate(const RadialFunction& f) const override { return inner_->evaluate(f) - base_; }
  std::string descriptor() const override { return inner_->descriptor() + " - V(0)"; }
  bool is_positive() const override { return false; }

 private:
  ValuationPtr inner_;
  double base_;
};

}  // namespace

ValuationPtr center(const ValuationPtr& V, const GridPtr& grid) {
  if (const Kernel* k = V->kernel()) {
    require_same_grid(k->grid(), grid);
    if (k->is_centered() && k->offset() == 0.0) return V;
    return kernel_valuation(k->centered().without_offset(), V->descriptor());
  }
  const double base = V->evaluate(RadialFunction::zero(grid));
  if (base == 0.0) return V;
  return std::make_shared<Shifted>(V, base);
}

double check_valuation_identity(const Valuation& V, const RadialFunction& f, const RadialFunction& g) {
  require_same_grid(f.grid(), g.grid());
  return std::abs(V(join(f, g)) + V(meet(f, g)) - V(f) - V(g));
}

double check_additive(const Valuation& V, const RadialFunction& f1, const RadialFunction& f2,
                      const RadialFunction& f) {
  require_same_grid(f1.grid(), f2.grid());
  require_same_grid(f1.grid(), f.grid());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    if (std::min(f1[i], f2[i]) != 0.0) {
      throw PreconditionViolation("check_additive requires f1 ^ f2 = 0; both positive at direction " +
                                  std::to_string(i));
    }
  }
  return std::abs(V(radial_sum(radial_sum(f1, f2), f)) - V(radial_sum(f1, f)) - V(radial_sum(f2, f)) + V(f));
}

double bounded_diagnostic(const Valuation& V, const GridPtr& grid, double lambda, int samples, std::uint64_t seed) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("bounded_diagnostic requires lambda >= 0");
  if (samples < 1) throw std::invalid_argument("bounded_diagnostic requires samples >= 1");
  Rng rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) worst = std::max(worst, std::abs(V(random_radial(grid, rng, lambda))));
  return worst;
}

std::vector<double> rim_decay(const Valuation& V, const GridSubset& A, double lambda, std::span<const double> omegas) {
  const Kernel* raw = V.kernel();
  if (raw == nullptr) {
    throw Unsupported("rim_decay needs kernel structure; " + V.descriptor() + " is a black box");
  }
  require_same_grid(raw->grid(), A.grid());
  if (!(lambda >= 0.0)) throw std::invalid_argument("rim_decay requires lambda >= 0");
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    if (!(omegas[k] > 0.0)) throw std::invalid_argument("rim_decay requires positive omegas");
    if (k > 0 && !(omegas[k] < omegas[k - 1])) {
      throw std::invalid_argument("rim_decay requires strictly decreasing omegas");
    }
  }
  const Kernel k = raw->centered();
  const auto& grid = *k.grid();

  std::vector<double> out;
  out.reserve(omegas.size());
  for (double omega : omegas) {
    const auto band = outer_band(A, omega);
    double up = 0.0;
    double down = 0.0;
    for (auto i : band.indices()) {
      up += grid.weight(i) * k.max_on(i, lambda);
      down += grid.weight(i) * k.min_on(i, lambda);
    }
    out.push_back(std::max(up, -down));
  }
  return out;
}

Kernel theta_recover(const Valuation& V, const GridPtr& grid, std::span<const double> lambda_grid) {
  const double base = V(RadialFunction::zero(grid));
  const auto n = grid->size();
  std::vector<double> values(lambda_grid.size() * n);
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
    const double theta = V(RadialFunction::constant(grid, lambda_grid[j])) - base;
    std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(j * n), n, theta);
  }
  return Kernel(grid, std::vector<double>(lambda_grid.begin(), lambda_grid.end()), std::move(values), base, true);
}

}  // namespace radval
