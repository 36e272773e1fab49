#ifndef SLBGK_EXPERIMENTS_HPP_
#define SLBGK_EXPERIMENTS_HPP_

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slbgk/dirk.hpp"
#include "slbgk/initial_data.hpp"
#include "slbgk/io.hpp"
#include "slbgk/norms.hpp"

namespace slbgk {

// ---------------------------------------------------------------------------
// Pure transport

/// sin(x) on [0, 2 pi], advected at unit speed.
double transport_smooth_initial(double x);
/// Piecewise constant 1, 0.5, -0.5, -1 on the quarters of [-1, 1].
double step_initial(double x);

struct TransportRun {
  Mesh1D<double> mesh;
  CellField<double> f;
  double t = 0;
  double dt = 0;
  LimiterStats stats;
};

/// Advects `f0` (already projected onto `mesh`) with speed 1 to t_end.
TransportRun advect(const Mesh1D<double> &mesh, CellField<double> f0, double cfl, double t_end,
                    LimiterMode limiter);

/// Smooth sine problem; errors against the exact solution.
ErrorReport transport_convergence(int order, const std::vector<int> &nxs, double cfl,
                                  double t_end, LimiterMode limiter);

/// Step profile, L2-projected initial data.
TransportRun step_advection(int order, int nx, double cfl, double t_end, LimiterMode limiter);

/// Exact step solution at time t (periodic on [-1, 1], unit speed).
double step_exact(double x, double t);

// ---------------------------------------------------------------------------
// BGK problems

enum class Problem { consistent, inconsistent, riemann, mixed, equilibrium };

Problem parse_problem(const std::string &name);
const char *to_string(Problem problem);

struct BgkSetup {
  Problem problem = Problem::consistent;
  int nx = 80;
  int order = 2;
  int nv = 100;
  double vmax = 15;
  double cfl = 4;
  std::string tableau = "dirk3_4stage";
  int scheme = 1;
  EpsilonSpec epsilon;
  double t_end = 0.04;
  LimiterMode limiter = LimiterMode::lmpp;
  LimiterPolicy policy = LimiterPolicy::all_transports;
  bool parallel = false;
};

/// Domain and boundary of each problem.
Mesh1D<double> problem_mesh(Problem problem, int nx, int order);
Space make_space(const BgkSetup &setup);
DistributionField<double> initial_field(const BgkSetup &setup, const Space &space);
BgkStepper<double> make_stepper(const BgkSetup &setup, const Mesh1D<double> &mesh);

using Observer = std::function<void(double, const DistributionField<double> &)>;

RunResult<double> run_bgk(const BgkSetup &setup, const Observer &observer = {});

/// Error of each Nx against the run on 2 Nx (phase-space norms).
ErrorReport bgk_spatial_convergence(BgkSetup setup, const std::vector<int> &nxs);

struct TemporalScan {
  std::vector<double> cfl;
  std::vector<ErrorNorms> error;
  double reference_cfl = 0.01;

  /// Least-squares slope of log L1 against log CFL over cfl in [lo, hi].
  double slope(double lo, double hi) const;
};

TemporalScan temporal_scan(BgkSetup setup, const std::vector<double> &cfls,
                           double reference_cfl);

struct ConservationAudit {
  std::vector<StepRecord<double>> history;
  Eigen::Vector3d max_drift;
};

ConservationAudit conservation_audit(const BgkSetup &setup);

/// L1 distances per unit length of (rho, u, T) from the exact Euler solution.
struct EulerComparison {
  double rho = 0, u = 0, T = 0;
  MacroProfile exact;
};

EulerComparison compare_with_euler(const DistributionField<double> &f, double t);

/// Pure advection f_t + f_x = 0 with the collisionless stepper, sin(2 pi x) on
/// [0, 1]; L1 error against the exact solution per CFL for both schemes.
struct StabilityScan {
  std::vector<double> cfl;
  std::vector<double> scheme1, scheme2;
};

double advection_error(int scheme, const std::string &tableau, int nx, int order, double cfl,
                       double t_end);
StabilityScan scheme_stability(const std::string &tableau, int nx, int order,
                               const std::vector<double> &cfls, double t_end);

// ---------------------------------------------------------------------------
// Experiment driver

inline const std::vector<std::string> &experiment_names() {
  static const std::vector<std::string> names = {
      "transport_convergence", "step_advection", "bgk_consistent",
      "bgk_inconsistent",      "temporal_scan",  "conservation_audit",
      "riemann_sod",           "mixed_regime",   "scheme_stability"};
  return names;
}

struct ExperimentSpec {
  std::string name = "bgk_consistent";
  std::vector<int> nx;  // one value for single runs; the refinement ladder for studies
  int order = 2;
  int nv = 100;
  double vmax = 15;
  std::vector<double> cfl;  // one value, or the scan grid
  double reference_cfl = 0.01;
  std::string tableau = "dirk3_4stage";
  int scheme = 1;
  std::string epsilon = "1e-2";
  double t_end = 0.04;
  std::vector<double> output_times;  // profile snapshots (mixed_regime)
  std::string limiter = "lmpp";
  std::string limiter_policy = "all";
  std::string out_dir = "out";
  bool parallel = false;
  long seed = 0;  // reserved

  /// Throws ConfigError when a parameter is invalid for the named experiment.
  void validate() const;
};

/// Parameters of the published setup for each experiment.
ExperimentSpec default_spec(const std::string &name);

void to_json(nlohmann::json &j, const ExperimentSpec &spec);
void from_json(const nlohmann::json &j, ExperimentSpec &spec);

/// Reads a spec from a JSON file: either a bare spec or a manifest holding
/// one under "spec". Missing keys keep the named experiment's defaults.
ExperimentSpec load_spec(const std::string &path);

/// Runs the experiment, writes its CSV files and manifest.json into
/// spec.out_dir, and returns the manifest.
nlohmann::json run_experiment(const ExperimentSpec &spec);

}  // namespace slbgk

#endif  // SLBGK_EXPERIMENTS_HPP_
