#ifndef SLBGK_QUADRATURE_HPP_
#define SLBGK_QUADRATURE_HPP_

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "slbgk/errors.hpp"

namespace slbgk {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Gauss-Legendre rule on the reference interval [-1, 1]. Weights are
/// normalized to sum to one, so that for a cell of width dx the physical
/// weights are dx * weights(i).
template <typename Scalar>
struct GaussRule {
  Vector<Scalar> nodes;
  Vector<Scalar> weights;

  int size() const { return static_cast<int>(nodes.size()); }

  /// Integral of a callable over [a, b].
  template <typename F>
  Scalar integrate(F &&f, Scalar a, Scalar b) const {
    const Scalar half = (b - a) / 2, mid = (a + b) / 2;
    Scalar sum = 0;
    for (int g = 0; g < size(); ++g) sum += weights(g) * f(mid + half * nodes(g));
    return sum * (b - a);
  }
};

/// n-point Gauss-Legendre nodes (ascending) and normalized weights.
/// Newton iteration on the three-term Legendre recurrence.
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one point");
  GaussRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th root from the right
    Scalar x = std::cos(pi * (i + Scalar(0.75)) / (n + Scalar(0.5)));
    Scalar dp = 1;
    for (int it = 0; it < 100; ++it) {
      Scalar p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4 * std::numeric_limits<Scalar>::epsilon()) {
        // one more evaluation of the derivative at the converged root
        p0 = 1, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const Scalar p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    const Scalar w = 1 / ((1 - x * x) * dp * dp);  // = 2/((1-x^2)P'^2) / 2
    rule.nodes(n - 1 - i) = x;
    rule.nodes(i) = -x;
    rule.weights(n - 1 - i) = w;
    rule.weights(i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0;
  return rule;
}

}  // namespace slbgk

#endif  // SLBGK_QUADRATURE_HPP_
