#include "slbgk/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "slbgk/errors.hpp"

namespace slbgk {

ExactRiemannSolver::ExactRiemannSolver(EulerState left, EulerState right, double gamma,
                                       double tolerance)
    : left_(left), right_(right), gamma_(gamma) {
  if (!(left.rho > 0 && right.rho > 0 && left.p > 0 && right.p > 0))
    throw ConfigError("Riemann solver: densities and pressures must be positive");
  c_left_ = std::sqrt(gamma * left.p / left.rho);
  c_right_ = std::sqrt(gamma * right.p / right.rho);
  const double du = right.u - left.u;
  if (2 / (gamma - 1) * (c_left_ + c_right_) <= du)
    throw VacuumError("Riemann solver: initial data generate vacuum");

  // Two-rarefaction guess, then Newton on f_L(p) + f_R(p) + du = 0.
  const double z = (gamma - 1) / (2 * gamma);
  double p = std::pow((c_left_ + c_right_ - 0.5 * (gamma - 1) * du) /
                          (c_left_ / std::pow(left.p, z) + c_right_ / std::pow(right.p, z)),
                      1 / z);
  p = std::max(p, 1e-14);
  for (int it = 0; it < 200; ++it) {
    double dl = 0, dr = 0;
    const double fl = pressure_function(p, left_, c_left_, dl);
    const double fr = pressure_function(p, right_, c_right_, dr);
    double next = p - (fl + fr + du) / (dl + dr);
    if (next <= 0) next = 0.5 * p;
    const double change = 2 * std::abs(next - p) / (next + p);
    p = next;
    if (change < tolerance) break;
  }
  double dl = 0, dr = 0;
  p_star_ = p;
  u_star_ = 0.5 * (left.u + right.u) +
            0.5 * (pressure_function(p, right_, c_right_, dr) -
                   pressure_function(p, left_, c_left_, dl));
}

double ExactRiemannSolver::pressure_function(double p, const EulerState &s, double c,
                                             double &derivative) const {
  const double g = gamma_;
  if (p > s.p) {
    const double a = 2 / ((g + 1) * s.rho);
    const double b = (g - 1) / (g + 1) * s.p;
    const double root = std::sqrt(a / (p + b));
    derivative = root * (1 - 0.5 * (p - s.p) / (p + b));
    return (p - s.p) * root;
  }
  const double ratio = p / s.p;
  derivative = std::pow(ratio, -(g + 1) / (2 * g)) / (s.rho * c);
  return 2 * c / (g - 1) * (std::pow(ratio, (g - 1) / (2 * g)) - 1);
}

double ExactRiemannSolver::left_wave_speed() const {
  const double g = gamma_;
  if (p_star_ > left_.p)
    return left_.u - c_left_ * std::sqrt((g + 1) / (2 * g) * p_star_ / left_.p + (g - 1) / (2 * g));
  return left_.u - c_left_;
}

double ExactRiemannSolver::right_wave_speed() const {
  const double g = gamma_;
  if (p_star_ > right_.p)
    return right_.u +
           c_right_ * std::sqrt((g + 1) / (2 * g) * p_star_ / right_.p + (g - 1) / (2 * g));
  return right_.u + c_right_;
}

EulerState ExactRiemannSolver::sample(double xi) const {
  const double g = gamma_;
  const bool left_side = xi <= u_star_;
  const EulerState &s = left_side ? left_ : right_;
  const double c = left_side ? c_left_ : c_right_;
  const double sign = left_side ? 1.0 : -1.0;  // mirror the right wave onto the left formulas
  const double ratio = p_star_ / s.p;

  if (p_star_ > s.p) {
    const double speed = left_side ? left_wave_speed() : right_wave_speed();
    if (sign * (xi - speed) <= 0) return s;
    const double rho =
        s.rho * (ratio + (g - 1) / (g + 1)) / ((g - 1) / (g + 1) * ratio + 1);
    return {rho, u_star_, p_star_};
  }

  const double c_star = c * std::pow(ratio, (g - 1) / (2 * g));
  const double head = s.u - sign * c;
  const double tail = u_star_ - sign * c_star;
  if (sign * (xi - head) <= 0) return s;
  if (sign * (xi - tail) > 0)
    return {s.rho * std::pow(ratio, 1 / g), u_star_, p_star_};
  const double k = 2 / (g + 1) + sign * (g - 1) / ((g + 1) * c) * (s.u - xi);
  const double rho = s.rho * std::pow(k, 2 / (g - 1));
  const double u = 2 / (g + 1) * (sign * c + (g - 1) / 2 * s.u + xi);
  return {rho, u, s.p * std::pow(k, 2 * g / (g - 1))};
}

EulerState exact_euler_riemann(const EulerState &left, const EulerState &right, double xi,
                               double gamma) {
  return ExactRiemannSolver(left, right, gamma).sample(xi);
}

}  // namespace slbgk
