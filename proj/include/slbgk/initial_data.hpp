#ifndef SLBGK_INITIAL_DATA_HPP_
#define SLBGK_INITIAL_DATA_HPP_

#include <memory>
#include <string>

#include "slbgk/dirk.hpp"
#include "slbgk/kinetics.hpp"
#include "slbgk/riemann.hpp"

namespace slbgk {

using Space = std::shared_ptr<const PhaseSpace<double>>;

double gaussian_density(double rho, double u, double temperature, double v);

/// u0(x) = [exp(-(10x - 1)^2) - 2 exp(-(10x + 3)^2)] / 10.
double consistent_velocity(double x);

/// Maxwellian with rho = T = 1 and bulk velocity consistent_velocity, on [-1, 1].
DistributionField<double> init_consistent(const Space &space);

/// Two-bump non-equilibrium data on [-1, 1] with weights 0.5 and 0.3.
DistributionField<double> init_inconsistent(const Space &space);

inline constexpr double kRiemannInterface = 0.5;
inline constexpr double kRiemannLeft[3] = {2.25, 0.0, 1.125};        // rho, u, T
inline constexpr double kRiemannRight[3] = {3.0 / 7.0, 0.0, 1.0 / 6.0};

/// Per-node Maxwellian of the side containing the node, on [0, 1].
DistributionField<double> init_riemann(const Space &space);

/// The Riemann data as Euler states (p = rho T).
EulerState riemann_left_state();
EulerState riemann_right_state();

/// Equal-weight two-bump data on [-0.5, 0.5] for the variable-epsilon problem.
DistributionField<double> init_mixed(const Space &space);

/// Uniform global Maxwellian.
DistributionField<double> init_equilibrium(const Space &space, double rho, double u,
                                           double temperature);

/// 1e-6 + (tanh(1 - a0 x) + tanh(1 + a0 x)) / 2.
double epsilon_profile_value(double a0, double x);
KnudsenField<double> epsilon_profile(const Mesh1D<double> &mesh, double a0);

/// A Knudsen specification: a positive number, "inf", or "tanh:a0".
struct EpsilonSpec {
  enum class Kind { constant, tanh_profile };
  Kind kind = Kind::constant;
  double value = 1e-2;  // epsilon, or a0 for the profile

  static EpsilonSpec parse(const std::string &text);
  std::string str() const;
  KnudsenField<double> field(const Mesh1D<double> &mesh) const;
};

}  // namespace slbgk

#endif  // SLBGK_INITIAL_DATA_HPP_
