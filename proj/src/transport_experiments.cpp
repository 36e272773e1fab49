#include <cmath>
#include <numbers>

#include "slbgk/experiments.hpp"
#include "slbgk/transport.hpp"

namespace slbgk {

double transport_smooth_initial(double x) { return std::sin(x); }

double step_initial(double x) {
  if (x < -0.5) return 1.0;
  if (x < 0.0) return 0.5;
  if (x < 0.5) return -0.5;
  return -1.0;
}

double step_exact(double x, double t) {
  double y = std::fmod(x - t + 1, 2.0);
  if (y < 0) y += 2;
  return step_initial(y - 1);
}

TransportRun advect(const Mesh1D<double> &mesh, CellField<double> f0, double cfl, double t_end,
                    LimiterMode limiter) {
  const double dt = cfl * mesh.widths().minCoeff();
  TransportRun run{mesh, std::move(f0), 0.0, dt, {}};
  const ShiftOperator<double> whole(run.mesh, dt, limiter);
  for (double h : step_schedule(t_end, dt)) {
    if (h == dt)
      run.f = whole.apply(run.f, &run.stats);
    else
      run.f = ShiftOperator<double>(run.mesh, h, limiter).apply(run.f, &run.stats);
    run.t += h;
  }
  return run;
}

ErrorReport transport_convergence(int order, const std::vector<int> &nxs, double cfl,
                                  double t_end, LimiterMode limiter) {
  ErrorReport report;
  for (int nx : nxs) {
    const auto mesh = build_mesh(0.0, 2 * std::numbers::pi, nx, order);
    const TransportRun run =
        advect(mesh, interpolate(mesh, transport_smooth_initial), cfl, t_end, limiter);
    report.add(nx, field_error(run.f, run.mesh, [t = run.t](double x) {
                 return transport_smooth_initial(x - t);
               }));
  }
  return report;
}

TransportRun step_advection(int order, int nx, double cfl, double t_end, LimiterMode limiter) {
  const auto mesh = build_mesh(-1.0, 1.0, nx, order);
  return advect(mesh, l2_project(mesh, step_initial), cfl, t_end, limiter);
}

}  // namespace slbgk
