#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "slbgk/experiments.hpp"

namespace slbgk {

Problem parse_problem(const std::string &name) {
  if (name == "consistent") return Problem::consistent;
  if (name == "inconsistent") return Problem::inconsistent;
  if (name == "riemann") return Problem::riemann;
  if (name == "mixed") return Problem::mixed;
  if (name == "equilibrium") return Problem::equilibrium;
  throw ConfigError("unknown problem: " + name);
}

const char *to_string(Problem problem) {
  switch (problem) {
    case Problem::consistent: return "consistent";
    case Problem::inconsistent: return "inconsistent";
    case Problem::riemann: return "riemann";
    case Problem::mixed: return "mixed";
    case Problem::equilibrium: return "equilibrium";
  }
  return "?";
}

Mesh1D<double> problem_mesh(Problem problem, int nx, int order) {
  switch (problem) {
    case Problem::riemann: return build_mesh(0.0, 1.0, nx, order, Boundary::free_flow);
    case Problem::mixed: return build_mesh(-0.5, 0.5, nx, order);
    default: return build_mesh(-1.0, 1.0, nx, order);
  }
}

Space make_space(const BgkSetup &setup) {
  return make_phase_space(problem_mesh(setup.problem, setup.nx, setup.order),
                          VelocityGrid<double>::uniform(setup.vmax, setup.nv));
}

DistributionField<double> initial_field(const BgkSetup &setup, const Space &space) {
  switch (setup.problem) {
    case Problem::consistent: return init_consistent(space);
    case Problem::inconsistent: return init_inconsistent(space);
    case Problem::riemann: return init_riemann(space);
    case Problem::mixed: return init_mixed(space);
    case Problem::equilibrium: return init_equilibrium(space, 1.0, 0.3, 0.8);
  }
  throw ConfigError("unknown problem");
}

BgkStepper<double> make_stepper(const BgkSetup &setup, const Mesh1D<double> &mesh) {
  StepperOptions options;
  options.scheme = setup.scheme;
  options.limiter = setup.limiter;
  options.policy = setup.policy;
  options.parallel = setup.parallel;
  return BgkStepper<double>(tableau<double>(setup.tableau), setup.epsilon.field(mesh), options);
}

RunResult<double> run_bgk(const BgkSetup &setup, const Observer &observer) {
  const Space space = make_space(setup);
  return run(make_stepper(setup, space->mesh), initial_field(setup, space), setup.t_end,
             setup.cfl, observer);
}

ErrorReport bgk_spatial_convergence(BgkSetup setup, const std::vector<int> &nxs) {
  std::map<int, DistributionField<double>> solutions;
  auto solve = [&](int nx) -> const DistributionField<double> & {
    auto it = solutions.find(nx);
    if (it == solutions.end()) {
      setup.nx = nx;
      it = solutions.emplace(nx, run_bgk(setup).f).first;
    }
    return it->second;
  };
  ErrorReport report;
  for (int nx : nxs) {
    const DistributionField<double> &coarse = solve(nx);
    report.add(nx, phase_space_difference(coarse, solve(2 * nx)));
    solutions.erase(nx);
  }
  return report;
}

double TemporalScan::slope(double lo, double hi) const {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < cfl.size(); ++i) {
    if (cfl[i] < lo * (1 - 1e-12) || cfl[i] > hi * (1 + 1e-12)) continue;
    const double x = std::log(cfl[i]), y = std::log(error[i].l1);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TemporalScan temporal_scan(BgkSetup setup, const std::vector<double> &cfls,
                           double reference_cfl) {
  TemporalScan scan;
  scan.reference_cfl = reference_cfl;
  setup.cfl = reference_cfl;
  const DistributionField<double> reference = run_bgk(setup).f;
  for (double cfl : cfls) {
    setup.cfl = cfl;
    scan.cfl.push_back(cfl);
    scan.error.push_back(phase_space_difference(run_bgk(setup).f, reference));
  }
  return scan;
}

ConservationAudit conservation_audit(const BgkSetup &setup) {
  RunResult<double> result = run_bgk(setup);
  const Eigen::Vector3d drift = result.max_drift();
  return {std::move(result.history), drift};
}

EulerComparison compare_with_euler(const DistributionField<double> &f, double t) {
  const Mesh1D<double> &mesh = f.mesh();
  const MacroFields<double> U = moments(f);
  const int n = mesh.nodes_per_cell();
  auto as_field = [&](const Vector<double> &v) {
    return CellField<double>(Eigen::Map<const Matrix<double>>(v.data(), n, mesh.nx()));
  };
  const ExactRiemannSolver solver(riemann_left_state(), riemann_right_state());
  auto exact = [&](double x) { return solver.sample((x - kRiemannInterface) / t); };

  EulerComparison out;
  out.rho = field_error(as_field(U.rho()), mesh, [&](double x) { return exact(x).rho; }).l1;
  out.u = field_error(as_field(U.velocity()), mesh, [&](double x) { return exact(x).u; }).l1;
  out.T = field_error(as_field(U.temperature()), mesh, [&](double x) {
            const EulerState s = exact(x);
            return s.p / s.rho;
          }).l1;
  for (int p = 0; p < mesh.nx(); ++p)
    for (int i = 0; i < n; ++i) {
      const double x = mesh.node(p, i);
      const EulerState s = exact(x);
      out.exact.x.push_back(x);
      out.exact.rho.push_back(s.rho);
      out.exact.u.push_back(s.u);
      out.exact.T.push_back(s.p / s.rho);
      out.exact.E.push_back(0.5 * s.rho * s.u * s.u + 0.5 * s.p);
    }
  return out;
}

double advection_error(int scheme, const std::string &tableau_name, int nx, int order, double cfl,
                       double t_end) {
  const Space space = make_phase_space(build_mesh(0.0, 1.0, nx, order),
                                       VelocityGrid<double>::discrete({1.0}));
  auto wave = [](double x) { return std::sin(2 * std::numbers::pi * x); };
  DistributionField<double> f0(space);
  f0.slice(0) = interpolate(space->mesh, wave);

  StepperOptions options;
  options.scheme = scheme;
  options.limiter = LimiterMode::off;
  const BgkStepper<double> stepper(tableau<double>(tableau_name),
                                   KnudsenField<double>::constant(
                                       std::numeric_limits<double>::infinity()),
                                   options);
  try {
    const RunResult<double> r = run(stepper, std::move(f0), t_end, cfl);
    return field_error(r.f.slice(0), space->mesh,
                       [&](double x) { return wave(x - t_end); })
        .l1;
  } catch (const NonFiniteError &) {
    return std::numeric_limits<double>::infinity();
  }
}

StabilityScan scheme_stability(const std::string &tableau_name, int nx, int order,
                               const std::vector<double> &cfls, double t_end) {
  StabilityScan scan;
  for (double cfl : cfls) {
    scan.cfl.push_back(cfl);
    scan.scheme1.push_back(advection_error(1, tableau_name, nx, order, cfl, t_end));
    scan.scheme2.push_back(advection_error(2, tableau_name, nx, order, cfl, t_end));
  }
  return scan;
}

}  // namespace slbgk
