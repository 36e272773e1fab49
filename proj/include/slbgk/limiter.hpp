#ifndef SLBGK_LIMITER_HPP_
#define SLBGK_LIMITER_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "slbgk/mesh.hpp"
#include "slbgk/upstream.hpp"

namespace slbgk {

enum class LimiterMode { off, lmpp };

inline LimiterMode parse_limiter(std::string_view name) {
  if (name == "off" || name == "none") return LimiterMode::off;
  if (name == "lmpp") return LimiterMode::lmpp;
  throw ConfigError("unknown limiter: " + std::string(name));
}

inline const char *to_string(LimiterMode mode) {
  return mode == LimiterMode::lmpp ? "lmpp" : "off";
}

struct LimiterStats {
  long limited = 0;               // cells scaled with theta < 1
  long skipped_out_of_range = 0;  // cell average outside [m, M]: left alone
  long lifted = 0;                // source cells scaled above the positivity floor

  LimiterStats &operator+=(const LimiterStats &o) {
    limited += o.limited;
    skipped_out_of_range += o.skipped_out_of_range;
    lifted += o.lifted;
    return *this;
  }
};

/// Exact min and max over xi in [-1, 1] of sum_j c_j xi^j: endpoints plus the
/// real critical points inside. Closed form up to cubics.
template <typename Derived>
std::pair<typename Derived::Scalar, typename Derived::Scalar> polynomial_range(
    const Eigen::MatrixBase<Derived> &c) {
  using Scalar = typename Derived::Scalar;
  Scalar lo = std::min(eval_monomials(c, Scalar(-1)), eval_monomials(c, Scalar(1)));
  Scalar hi = std::max(eval_monomials(c, Scalar(-1)), eval_monomials(c, Scalar(1)));
  auto visit = [&](Scalar xi) {
    if (!(xi > -1 && xi < 1)) return;
    const Scalar value = eval_monomials(c, xi);
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  };

  Eigen::Index deg = c.size() - 1;
  while (deg > 0 && c(deg) == 0) --deg;
  if (deg <= 1) return {lo, hi};
  if (deg == 2) {
    visit(-c(1) / (2 * c(2)));
    return {lo, hi};
  }
  if (deg == 3) {
    // 3 c3 xi^2 + 2 c2 xi + c1 = 0
    const Scalar qa = 3 * c(3), qb = 2 * c(2), qc = c(1);
    const Scalar disc = qb * qb - 4 * qa * qc;
    if (disc >= 0) {
      const Scalar q = -(qb + std::copysign(std::sqrt(disc), qb)) / 2;
      visit(q / qa);
      if (q != 0) visit(qc / q);
    }
    return {lo, hi};
  }
  Vector<Scalar> deriv(deg);
  for (Eigen::Index j = 1; j <= deg; ++j) deriv(j - 1) = j * c(j);
  Eigen::PolynomialSolver<Scalar, Eigen::Dynamic> solver(deriv);
  std::vector<Scalar> roots;
  solver.realRoots(roots);
  for (Scalar xi : roots) visit(xi);
  return {lo, hi};
}

/// Local bounds m, M for one target cell: extrema of the pre-step piecewise
/// polynomial over every Eulerian cell covering the upstream interval.
template <typename Scalar>
struct LocalBounds {
  Scalar lower = 0;
  Scalar upper = 0;
  std::vector<int> source_cells;
};

template <typename Scalar, typename Derived>
LocalBounds<Scalar> local_bounds(const UpstreamInterval<Scalar> &upstream,
                                 const Eigen::MatrixBase<Derived> &modal,
                                 const Mesh1D<Scalar> & /*mesh*/) {
  LocalBounds<Scalar> bounds;
  bounds.lower = std::numeric_limits<Scalar>::infinity();
  bounds.upper = -std::numeric_limits<Scalar>::infinity();
  for (const auto &seg : upstream.segments) {
    Scalar lo, hi;
    if (seg.ghost) {
      const Scalar end = seg.cell == 0 ? Scalar(-1) : Scalar(1);
      lo = hi = eval_monomials(modal.col(seg.cell), end);
    } else {
      std::tie(lo, hi) = polynomial_range(modal.col(seg.cell));
    }
    bounds.lower = std::min(bounds.lower, lo);
    bounds.upper = std::max(bounds.upper, hi);
    if (std::find(bounds.source_cells.begin(), bounds.source_cells.end(), seg.cell) ==
        bounds.source_cells.end())
      bounds.source_cells.push_back(seg.cell);
  }
  return bounds;
}

/// Scaling factor theta of the linear-scaling limiter about the cell average.
/// Returns 1 when the polynomial already fits, or when the average itself lies
/// outside [lower, upper] (counted in stats).
template <typename Derived, typename Scalar>
Scalar lmpp_theta(const Eigen::MatrixBase<Derived> &coeffs, Scalar average, Scalar lower,
                  Scalar upper, LimiterStats *stats = nullptr) {
  const Scalar tol = 64 * std::numeric_limits<Scalar>::epsilon() *
                     std::max({std::abs(lower), std::abs(upper), std::abs(average)});
  if (average < lower - tol || average > upper + tol) {
    if (stats) ++stats->skipped_out_of_range;
    return 1;
  }
  const auto [mn, mx] = polynomial_range(coeffs);
  Scalar theta = 1;
  if (mx > average) theta = std::min(theta, std::abs((upper - average) / (mx - average)));
  if (mn < average) theta = std::min(theta, std::abs((lower - average) / (mn - average)));
  if (theta < 1 && stats) ++stats->limited;
  return theta;
}

/// p~ = theta (p - pbar) + pbar, in place on monomial coefficients.
template <typename Derived, typename Scalar>
void scale_about_average(const Eigen::MatrixBase<Derived> &out, Scalar average, Scalar theta) {
  auto &coeffs = const_cast<Eigen::MatrixBase<Derived> &>(out);
  coeffs(0) = theta * (coeffs(0) - average) + average;
  for (Eigen::Index j = 1; j < coeffs.size(); ++j) coeffs(j) *= theta;
}

template <typename Scalar>
CellPolynomial<Scalar> apply_lmpp(const CellPolynomial<Scalar> &poly,
                                  const LocalBounds<Scalar> &bounds,
                                  LimiterStats *stats = nullptr) {
  const Scalar average = poly.average();
  const Scalar theta = lmpp_theta(poly.coeffs, average, bounds.lower, bounds.upper, stats);
  if (theta >= 1) return poly;
  CellPolynomial<Scalar> out = poly;
  scale_about_average(out.coeffs, average, theta);
  return out;
}

}  // namespace slbgk

#endif  // SLBGK_LIMITER_HPP_
