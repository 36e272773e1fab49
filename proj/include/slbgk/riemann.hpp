#ifndef SLBGK_RIEMANN_HPP_
#define SLBGK_RIEMANN_HPP_

namespace slbgk {

/// Primitive Euler state. For the d = 1 BGK limit p = rho T and gamma = 3.
struct EulerState {
  double rho = 0;
  double u = 0;
  double p = 0;
};

inline constexpr double kBgkGamma = 3.0;

/// Exact solution of the Euler Riemann problem (Newton on the pressure
/// function). Throws VacuumError when the data generate vacuum.
class ExactRiemannSolver {
 public:
  ExactRiemannSolver(EulerState left, EulerState right, double gamma = kBgkGamma,
                     double tolerance = 1e-12);

  double star_pressure() const { return p_star_; }
  double star_velocity() const { return u_star_; }

  /// Speed of the left/right wave: the shock speed, or the rarefaction head.
  double left_wave_speed() const;
  double right_wave_speed() const;

  /// Self-similar solution at xi = (x - x0) / t.
  EulerState sample(double xi) const;

 private:
  double pressure_function(double p, const EulerState &s, double c, double &derivative) const;

  EulerState left_, right_;
  double gamma_;
  double c_left_, c_right_;
  double p_star_ = 0, u_star_ = 0;
};

EulerState exact_euler_riemann(const EulerState &left, const EulerState &right, double xi,
                               double gamma = kBgkGamma);

}  // namespace slbgk

#endif  // SLBGK_RIEMANN_HPP_
