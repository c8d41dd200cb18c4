#include "cauchy/quadrature.hpp"

#include <numbers>

namespace cauchy {

GaussLegendreRule::GaussLegendreRule(int order) {
  if (order < 2) throw std::invalid_argument("Gauss-Legendre order must be at least 2");
  nodes_.assign(static_cast<std::size_t>(order), 0.0);
  weights_.assign(static_cast<std::size_t>(order), 0.0);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      deriv = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / deriv;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes_[static_cast<std::size_t>(i)] = -x;
    nodes_[static_cast<std::size_t>(order - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    weights_[static_cast<std::size_t>(i)] = w;
    weights_[static_cast<std::size_t>(order - 1 - i)] = w;
  }
}

}  // namespace cauchy
