// Command-line driver: one subcommand per experiment, plus `run --config`.

#include <iostream>
#include <map>
#include <memory>

#include <CLI11.hpp>

#include "slbgk/experiments.hpp"

namespace {

struct Flags {
  std::vector<int> nx;
  int nv = 0;
  double vmax = 0;
  std::vector<double> cfl;
  double reference_cfl = 0;
  int order = 0;
  std::string tableau;
  int scheme = 0;
  std::string epsilon;
  double t_end = 0;
  std::vector<double> output_times;
  std::string limiter;
  std::string limiter_policy;
  std::string out_dir;
  bool parallel = false;
  long seed = 0;
  std::string config;

  std::map<std::string, CLI::Option *> options;

  void attach(CLI::App *app) {
    options["nx"] = app->add_option("--nx", nx, "cells; several values give a refinement ladder");
    options["nv"] = app->add_option("--nv", nv, "velocity points");
    options["vmax"] = app->add_option("--vmax", vmax, "velocity half-width V");
    options["cfl"] = app->add_option("--cfl", cfl, "CFL number(s)");
    options["reference_cfl"] =
        app->add_option("--reference-cfl", reference_cfl, "reference CFL (temporal_scan)");
    options["order"] = app->add_option("--order", order, "polynomial degree k");
    options["tableau"] = app->add_option("--tableau", tableau,
                                         "backward_euler | dirk2 | dirk3_4stage");
    options["scheme"] = app->add_option("--scheme", scheme, "1 or 2");
    options["epsilon"] = app->add_option("--epsilon", epsilon, "number, inf or tanh:a0");
    options["t_end"] = app->add_option("--tend", t_end, "final time");
    options["output_times"] =
        app->add_option("--output-times", output_times, "profile snapshot times");
    options["limiter"] = app->add_option("--limiter", limiter, "lmpp | off");
    options["limiter_policy"] =
        app->add_option("--limiter-policy", limiter_policy, "all | solution_only");
    options["out_dir"] = app->add_option("--out-dir", out_dir, "output directory");
    options["parallel"] = app->add_flag("--parallel", parallel, "parallel velocity sweeps");
    options["seed"] = app->add_option("--seed", seed, "reserved");
    options["config"] = app->add_option("--config", config, "JSON spec or manifest");
  }

  bool given(const std::string &key) const { return options.at(key)->count() > 0; }

  void apply(slbgk::ExperimentSpec &s) const {
    if (given("nx")) s.nx = nx;
    if (given("nv")) s.nv = nv;
    if (given("vmax")) s.vmax = vmax;
    if (given("cfl")) s.cfl = cfl;
    if (given("reference_cfl")) s.reference_cfl = reference_cfl;
    if (given("order")) s.order = order;
    if (given("tableau")) s.tableau = tableau;
    if (given("scheme")) s.scheme = scheme;
    if (given("epsilon")) s.epsilon = epsilon;
    if (given("t_end")) s.t_end = t_end;
    if (given("output_times")) s.output_times = output_times;
    if (given("limiter")) s.limiter = limiter;
    if (given("limiter_policy")) s.limiter_policy = limiter_policy;
    if (given("out_dir")) s.out_dir = out_dir;
    if (given("parallel")) s.parallel = parallel;
    if (given("seed")) s.seed = seed;
  }
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Semi-Lagrangian nodal DG solver for the 1D1V BGK equation"};
  app.require_subcommand(1);

  std::map<std::string, std::unique_ptr<Flags>> flags;
  for (const std::string &name : slbgk::experiment_names()) {
    auto *sub = app.add_subcommand(name, "run the " + name + " experiment");
    flags[name] = std::make_unique<Flags>();
    flags[name]->attach(sub);
  }
  auto *replay = app.add_subcommand("run", "run the experiment described by --config");
  flags["run"] = std::make_unique<Flags>();
  flags["run"]->attach(replay);
  flags["run"]->options["config"]->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const Flags &f = *flags.at(command);
    slbgk::ExperimentSpec spec;
    if (!f.config.empty()) {
      spec = slbgk::load_spec(f.config);
      if (command != "run" && spec.name != command)
        throw slbgk::ConfigError("config describes " + spec.name + ", not " + command);
    } else {
      spec = slbgk::default_spec(command);
    }
    f.apply(spec);
    const auto manifest = slbgk::run_experiment(spec);
    std::cout << manifest["results"].dump(2) << "\n"
              << "wrote " << spec.out_dir << "/manifest.json ("
              << manifest["wall_clock_seconds"].get<double>() << " s)\n";
  } catch (const slbgk::ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
