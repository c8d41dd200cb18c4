#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace cauchy {

/// Gauss-Legendre rule on [-1, 1]; nodes found by Newton iteration on the
/// Legendre recurrence.
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int order);

  int order() const { return static_cast<int>(nodes_.size()); }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      sum += weights_[i] * f(mid + half * nodes_[i]);
    return half * sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// One fixed-order panel per consecutive breakpoint pair; for integrands that
/// are smooth between known kinks.
template <class F>
double integrate_panels(F&& f, std::span<const double> breakpoints,
                        const GaussLegendreRule& rule) {
  if (breakpoints.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    total += rule.integrate(f, breakpoints[i], breakpoints[i + 1]);
  return total;
}

namespace detail {

template <class F>
double adaptive_step(F& f, double a, double b, double tol, const GaussLegendreRule& rule,
                     double whole, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = rule.integrate(f, a, mid);
  const double right = rule.integrate(f, mid, b);
  const double sum = left + right;
  // Rounding floor: once the bisection disagreement is at machine level,
  // further refinement cannot improve the estimate.
  const double floor_tol = 5e-16 * (std::fabs(whole) + std::fabs(sum));
  if (std::fabs(whole - sum) <= std::max(tol, floor_tol)) return sum;
  if (depth <= 0) throw std::runtime_error("adaptive quadrature: refinement limit reached");
  return adaptive_step(f, a, mid, 0.5 * tol, rule, left, depth - 1) +
         adaptive_step(f, mid, b, 0.5 * tol, rule, right, depth - 1);
}

}  // namespace detail

/// Adaptive bisection on top of a fixed rule; a panel is accepted when its
/// two halves reproduce the whole-panel estimate within the local tolerance.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol, const GaussLegendreRule& rule,
                          int max_depth = 60) {
  return detail::adaptive_step(f, a, b, tol, rule, rule.integrate(f, a, b), max_depth);
}

}  // namespace cauchy
