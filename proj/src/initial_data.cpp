#include "slbgk/initial_data.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "slbgk/io.hpp"

namespace slbgk {

namespace {

template <typename F>
DistributionField<double> sample(const Space &space, F &&f_of_xv) {
  DistributionField<double> f(space);
  const Mesh1D<double> &mesh = space->mesh;
  const int n = mesh.nodes_per_cell();
  for (int q = 0; q < space->grid.size(); ++q) {
    const double v = space->grid(q);
    for (int p = 0; p < mesh.nx(); ++p)
      for (int i = 0; i < n; ++i)
        f.values()(static_cast<long>(p) * n + i, q) = f_of_xv(mesh.node(p, i), v);
  }
  return f;
}

}  // namespace

double gaussian_density(double rho, double u, double temperature, double v) {
  const double d = v - u;
  return rho / std::sqrt(2 * std::numbers::pi * temperature) *
         std::exp(-d * d / (2 * temperature));
}

double consistent_velocity(double x) {
  const double a = 10 * x - 1, b = 10 * x + 3;
  return 0.1 * (std::exp(-a * a) - 2 * std::exp(-b * b));
}

DistributionField<double> init_consistent(const Space &space) {
  return sample(space, [](double x, double v) {
    return gaussian_density(1.0, consistent_velocity(x), 1.0, v);
  });
}

DistributionField<double> init_inconsistent(const Space &space) {
  return sample(space, [](double x, double v) {
    const double rho = 1 + 0.2 * std::sin(std::numbers::pi * x);
    const double T = 1 / rho;
    const double u = 1.0;
    return 0.5 * gaussian_density(rho, u, T, v) + 0.3 * gaussian_density(rho, -0.5 * u, T, v);
  });
}

DistributionField<double> init_riemann(const Space &space) {
  return sample(space, [](double x, double v) {
    const double *s = x <= kRiemannInterface ? kRiemannLeft : kRiemannRight;
    return gaussian_density(s[0], s[1], s[2], v);
  });
}

EulerState riemann_left_state() {
  return {kRiemannLeft[0], kRiemannLeft[1], kRiemannLeft[0] * kRiemannLeft[2]};
}

EulerState riemann_right_state() {
  return {kRiemannRight[0], kRiemannRight[1], kRiemannRight[0] * kRiemannRight[2]};
}

DistributionField<double> init_mixed(const Space &space) {
  return sample(space, [](double x, double v) {
    const double s = std::sin(2 * std::numbers::pi * x);
    const double rho = 1 + 0.875 * s;
    const double T = 0.5 + 0.4 * s;
    const double u = 0.75;
    return 0.5 * (gaussian_density(rho, u, T, v) + gaussian_density(rho, -0.5 * u, T, v));
  });
}

DistributionField<double> init_equilibrium(const Space &space, double rho, double u,
                                           double temperature) {
  return sample(space,
                [&](double, double v) { return gaussian_density(rho, u, temperature, v); });
}

double epsilon_profile_value(double a0, double x) {
  return 1e-6 + 0.5 * (std::tanh(1 - a0 * x) + std::tanh(1 + a0 * x));
}

KnudsenField<double> epsilon_profile(const Mesh1D<double> &mesh, double a0) {
  if (!(a0 > 0)) throw ConfigError("epsilon profile: a0 must be positive");
  return KnudsenField<double>::sampled(mesh,
                                       [a0](double x) { return epsilon_profile_value(a0, x); });
}

EpsilonSpec EpsilonSpec::parse(const std::string &text) {
  EpsilonSpec spec;
  if (text.rfind("tanh:", 0) == 0) {
    spec.kind = Kind::tanh_profile;
    try {
      spec.value = std::stod(text.substr(5));
    } catch (const std::exception &) {
      throw ConfigError("epsilon: cannot parse a0 in '" + text + "'");
    }
    if (!(spec.value > 0)) throw ConfigError("epsilon: a0 must be positive");
    return spec;
  }
  if (text == "inf" || text == "infinity") {
    spec.value = std::numeric_limits<double>::infinity();
    return spec;
  }
  try {
    std::size_t used = 0;
    spec.value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception &) {
    throw ConfigError("epsilon: expected a number, 'inf' or 'tanh:a0', got '" + text + "'");
  }
  if (!(spec.value > 0)) throw ConfigError("epsilon must be positive");
  return spec;
}

std::string EpsilonSpec::str() const {
  if (kind == Kind::tanh_profile) return "tanh:" + format_double(value);
  return format_double(value);
}

KnudsenField<double> EpsilonSpec::field(const Mesh1D<double> &mesh) const {
  if (kind == Kind::tanh_profile) return epsilon_profile(mesh, value);
  return KnudsenField<double>::constant(value);
}

}  // namespace slbgk
