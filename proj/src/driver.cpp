#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "slbgk/experiments.hpp"

namespace slbgk {

namespace {

using nlohmann::json;

bool is_study(const std::string &name) {
  return name == "transport_convergence" || name == "bgk_consistent" ||
         name == "bgk_inconsistent" || name == "mixed_regime";
}

Problem problem_of(const std::string &name) {
  if (name == "bgk_inconsistent") return Problem::inconsistent;
  if (name == "riemann_sod") return Problem::riemann;
  if (name == "mixed_regime") return Problem::mixed;
  return Problem::consistent;
}

BgkSetup setup_from(const ExperimentSpec &spec) {
  BgkSetup s;
  s.problem = problem_of(spec.name);
  s.nx = spec.nx.front();
  s.order = spec.order;
  s.nv = spec.nv;
  s.vmax = spec.vmax;
  s.cfl = spec.cfl.front();
  s.tableau = spec.tableau;
  s.scheme = spec.scheme;
  s.epsilon = EpsilonSpec::parse(spec.epsilon);
  s.t_end = spec.t_end;
  s.limiter = parse_limiter(spec.limiter);
  s.policy = parse_limiter_policy(spec.limiter_policy);
  s.parallel = spec.parallel;
  return s;
}

json norms_json(const ErrorNorms &e) { return {{"L1", e.l1}, {"L2", e.l2}, {"Linf", e.linf}}; }

json report_json(const ErrorReport &report) {
  json rows = json::array();
  for (const auto &r : report.rows) {
    json row = {{"Nx", r.nx}, {"error", norms_json(r.error)}};
    if (r.order) row["order"] = norms_json(*r.order);
    rows.push_back(row);
  }
  return rows;
}

std::string time_tag(double t) { return "t" + format_double(t); }

template <typename T>
void read_scalar_or_list(const json &j, const char *key, std::vector<T> &out) {
  if (!j.contains(key)) return;
  const json &v = j.at(key);
  out = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
}

}  // namespace

ExperimentSpec default_spec(const std::string &name) {
  ExperimentSpec s;
  s.name = name;
  if (name == "transport_convergence") {
    s.nx = {10, 20, 40, 80, 160, 320};
    s.cfl = {2.2};
    s.t_end = 10;
  } else if (name == "step_advection") {
    s.nx = {200};
    s.cfl = {2.2};
    s.t_end = 100;
  } else if (name == "bgk_consistent") {
    s.nx = {20, 40, 80};
    s.cfl = {0.1};
    s.epsilon = "1e-2";
    s.t_end = 0.04;
  } else if (name == "bgk_inconsistent") {
    s.nx = {20, 40, 80};
    s.cfl = {4};
    s.epsilon = "1e-2";
    s.t_end = 0.1;
  } else if (name == "temporal_scan") {
    s.nx = {320};
    s.cfl = {0.1, 0.2, 0.5, 1, 2, 4, 6, 8, 10};
    s.reference_cfl = 0.01;
    s.epsilon = "1e-6";
    s.t_end = 0.04;
  } else if (name == "conservation_audit") {
    s.nx = {80};
    s.cfl = {4};
    s.epsilon = "1e-2";
    s.t_end = 0.04;
  } else if (name == "riemann_sod") {
    s.nx = {200};
    s.cfl = {2.3};
    s.epsilon = "1e-6";
    s.t_end = 0.16;
  } else if (name == "mixed_regime") {
    s.nx = {40};
    s.vmax = 10;
    s.cfl = {4};
    s.epsilon = "tanh:11";
    s.output_times = {0.1, 0.3, 0.45};
    s.t_end = 0.45;
  } else if (name == "scheme_stability") {
    s.nx = {640};
    s.order = 0;
    s.tableau = "dirk2";
    s.epsilon = "inf";
    s.limiter = "off";
    for (int i = 1; i <= 21; ++i) s.cfl.push_back(0.5 * i);
    s.t_end = 2;
  } else {
    throw ConfigError("unknown experiment: " + name);
  }
  return s;
}

void ExperimentSpec::validate() const {
  const auto &names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("unknown experiment: " + name);
  if (nx.empty()) throw ConfigError(name + ": nx is required");
  for (std::size_t i = 0; i < nx.size(); ++i) {
    if (nx[i] < 1) throw ConfigError(name + ": nx must be positive");
    if (i > 0 && nx[i] != 2 * nx[i - 1])
      throw ConfigError(name + ": nx ladder must double at each level");
  }
  if (nx.size() > 1 && !is_study(name))
    throw ConfigError(name + ": takes a single nx");
  if (order < 0 || order > 6) throw ConfigError("order must be in [0, 6]");
  if (nv < 1) throw ConfigError("nv must be positive");
  if (!(vmax > 0)) throw ConfigError("vmax must be positive");
  if (cfl.empty()) throw ConfigError(name + ": cfl is required");
  for (double c : cfl)
    if (!(c > 0)) throw ConfigError("cfl must be positive");
  if (cfl.size() > 1 && name != "temporal_scan" && name != "scheme_stability")
    throw ConfigError(name + ": takes a single cfl");
  if (!(reference_cfl > 0)) throw ConfigError("reference_cfl must be positive");
  slbgk::tableau<double>(tableau);
  if (scheme != 1 && scheme != 2) throw ConfigError("scheme must be 1 or 2");
  EpsilonSpec::parse(epsilon);
  if (!(t_end > 0)) throw ConfigError("t_end must be positive");
  if (nx.size() == 1)
    for (double t : output_times)
      if (!(t > 0) || t > t_end) throw ConfigError("output times must lie in (0, t_end]");
  if (!std::is_sorted(output_times.begin(), output_times.end()))
    throw ConfigError("output times must be increasing");
  parse_limiter(limiter);
  parse_limiter_policy(limiter_policy);
}

void to_json(json &j, const ExperimentSpec &s) {
  j = json{{"name", s.name},
           {"nx", s.nx},
           {"order", s.order},
           {"nv", s.nv},
           {"vmax", s.vmax},
           {"cfl", s.cfl},
           {"reference_cfl", s.reference_cfl},
           {"tableau", s.tableau},
           {"scheme", s.scheme},
           {"epsilon", s.epsilon},
           {"t_end", s.t_end},
           {"output_times", s.output_times},
           {"limiter", s.limiter},
           {"limiter_policy", s.limiter_policy},
           {"out_dir", s.out_dir},
           {"parallel", s.parallel},
           {"seed", s.seed}};
}

void from_json(const json &j, ExperimentSpec &s) {
  s = default_spec(j.value("name", s.name));
  read_scalar_or_list(j, "nx", s.nx);
  read_scalar_or_list(j, "cfl", s.cfl);
  read_scalar_or_list(j, "output_times", s.output_times);
  s.order = j.value("order", s.order);
  s.nv = j.value("nv", s.nv);
  s.vmax = j.value("vmax", s.vmax);
  s.reference_cfl = j.value("reference_cfl", s.reference_cfl);
  s.tableau = j.value("tableau", s.tableau);
  s.scheme = j.value("scheme", s.scheme);
  if (j.contains("epsilon")) {
    const json &e = j.at("epsilon");
    s.epsilon = e.is_string() ? e.get<std::string>() : format_double(e.get<double>());
  }
  s.t_end = j.value("t_end", s.t_end);
  s.limiter = j.value("limiter", s.limiter);
  s.limiter_policy = j.value("limiter_policy", s.limiter_policy);
  s.out_dir = j.value("out_dir", s.out_dir);
  s.parallel = j.value("parallel", s.parallel);
  s.seed = j.value("seed", s.seed);
}

ExperimentSpec load_spec(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  if (j.contains("spec")) j = j.at("spec");
  if (!j.contains("name")) throw ConfigError("config " + path + ": missing experiment name");
  return j.get<ExperimentSpec>();
}

json run_experiment(const ExperimentSpec &spec) {
  spec.validate();
  namespace fs = std::filesystem;
  const fs::path dir(spec.out_dir);
  fs::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();
  json results;
  std::vector<std::string> outputs;
  auto path = [&](const std::string &file) {
    outputs.push_back(file);
    return (dir / file).string();
  };

  try {
    const std::string &name = spec.name;
    const LimiterMode limiter = parse_limiter(spec.limiter);
    if (name == "transport_convergence") {
      const ErrorReport report =
          transport_convergence(spec.order, spec.nx, spec.cfl.front(), spec.t_end, limiter);
      report.write_csv(path("transport_convergence.csv"));
      results["errors"] = report_json(report);
    } else if (name == "step_advection") {
      const TransportRun run =
          step_advection(spec.order, spec.nx.front(), spec.cfl.front(), spec.t_end, limiter);
      CsvWriter csv(path("step_advection_profile.csv"), {"x", "f", "f_exact"});
      for (int p = 0; p < run.mesh.nx(); ++p)
        for (int i = 0; i < run.mesh.nodes_per_cell(); ++i)
          csv.row({run.mesh.node(p, i), run.f(i, p), step_exact(run.mesh.node(p, i), run.t)});
      results["min"] = run.f.minCoeff();
      results["max"] = run.f.maxCoeff();
      results["limited_cells"] = run.stats.limited;
    } else if (name == "scheme_stability") {
      const StabilityScan scan = scheme_stability(spec.tableau, spec.nx.front(), spec.order,
                                                  spec.cfl, spec.t_end);
      CsvWriter csv(path("scheme_stability.csv"), {"CFL", "L1_scheme1", "L1_scheme2"});
      for (std::size_t i = 0; i < scan.cfl.size(); ++i)
        csv.row({scan.cfl[i], scan.scheme1[i], scan.scheme2[i]});
      results["max_L1_scheme1"] = *std::max_element(scan.scheme1.begin(), scan.scheme1.end());
      results["max_L1_scheme2"] = *std::max_element(scan.scheme2.begin(), scan.scheme2.end());
    } else {
      BgkSetup setup = setup_from(spec);
      if (name == "temporal_scan") {
        const TemporalScan scan = temporal_scan(setup, spec.cfl, spec.reference_cfl);
        CsvWriter csv(path("temporal_scan.csv"), {"CFL", "L1", "L2", "Linf"});
        for (std::size_t i = 0; i < scan.cfl.size(); ++i)
          csv.row({scan.cfl[i], scan.error[i].l1, scan.error[i].l2, scan.error[i].linf});
        results["slope_cfl_4_10"] = scan.slope(4, 10);
      } else if (name == "conservation_audit") {
        const ConservationAudit audit = conservation_audit(setup);
        CsvWriter csv(path("conservation_audit.csv"),
                      {"t", "rho", "rho_u", "E", "drift_rho", "drift_rho_u", "drift_E"});
        const Eigen::Vector3d first = audit.history.front().totals;
        for (const auto &r : audit.history) {
          const Eigen::Vector3d d = r.totals - first;
          csv.row({r.t, r.totals(0), r.totals(1), r.totals(2), d(0), d(1), d(2)});
        }
        results["max_drift"] = {audit.max_drift(0), audit.max_drift(1), audit.max_drift(2)};
      } else if (name == "riemann_sod") {
        const RunResult<double> r = run_bgk(setup);
        write_profile_csv(path("riemann_sod_profile.csv"), macro_profile(r.f));
        const EulerComparison cmp = compare_with_euler(r.f, spec.t_end);
        write_profile_csv(path("riemann_sod_exact.csv"), cmp.exact);
        results["L1_vs_euler"] = {{"rho", cmp.rho}, {"u", cmp.u}, {"T", cmp.T}};
        results["steps"] = r.steps();
      } else if (spec.nx.size() > 1) {
        const ErrorReport report = bgk_spatial_convergence(setup, spec.nx);
        report.write_csv(path(name + "_errors.csv"));
        results["errors"] = report_json(report);
      } else if (name == "mixed_regime" && !spec.output_times.empty()) {
        const Space space = make_space(setup);
        const BgkStepper<double> stepper = make_stepper(setup, space->mesh);
        DistributionField<double> f = initial_field(setup, space);
        const Eigen::Vector3d initial = total_moments(f);
        Eigen::Vector3d drift = Eigen::Vector3d::Zero();
        double t = 0;
        for (double t_out : spec.output_times) {
          RunResult<double> r = run(stepper, std::move(f), t_out - t, setup.cfl);
          for (const auto &rec : r.history)
            drift = drift.cwiseMax((rec.totals - initial).cwiseAbs());
          f = std::move(r.f);
          t = t_out;
          write_profile_csv(path("mixed_regime_profile_" + time_tag(t) + ".csv"),
                            macro_profile(f));
        }
        results["max_drift"] = {drift(0), drift(1), drift(2)};
      } else {
        const RunResult<double> r = run_bgk(setup);
        write_profile_csv(path(name + "_profile.csv"), macro_profile(r.f));
        const Eigen::Vector3d drift = r.max_drift();
        results["max_drift"] = {drift(0), drift(1), drift(2)};
      }
    }
  } catch (const std::exception &e) {
    throw std::runtime_error("experiment " + spec.name + ": " + e.what());
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"spec", spec},
                   {"results", results},
                   {"outputs", outputs},
                   {"wall_clock_seconds", seconds},
                   {"csv_schema_version", 1}};
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write manifest in " + spec.out_dir);
  return manifest;
}

}  // namespace slbgk
