#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "slbgk/experiments.hpp"

using namespace slbgk;
using doctest::Approx;

namespace {

// First-order finite volumes with the HLL flux, gamma = 3, transmissive ends.
struct HllSolver {
  std::vector<double> rho, mom, energy;
  double dx;

  HllSolver(int n, EulerState left, EulerState right) : rho(n), mom(n), energy(n), dx(1.0 / n) {
    for (int i = 0; i < n; ++i) {
      const EulerState &s = (i + 0.5) * dx < 0.5 ? left : right;
      rho[i] = s.rho;
      mom[i] = s.rho * s.u;
      energy[i] = 0.5 * s.rho * s.u * s.u + s.p / (kBgkGamma - 1);
    }
  }

  double pressure(int i) const {
    return (kBgkGamma - 1) * (energy[i] - 0.5 * mom[i] * mom[i] / rho[i]);
  }

  void advance(double t_end) {
    const int n = static_cast<int>(rho.size());
    double t = 0;
    std::vector<double> f0(n + 1), f1(n + 1), f2(n + 1);
    while (t < t_end) {
      double smax = 0;
      for (int i = 0; i < n; ++i)
        smax = std::max(smax, std::abs(mom[i] / rho[i]) +
                                  std::sqrt(kBgkGamma * pressure(i) / rho[i]));
      const double dt = std::min(0.8 * dx / smax, t_end - t);
      for (int face = 0; face <= n; ++face) {
        const int l = std::max(face - 1, 0), r = std::min(face, n - 1);
        const double ul = mom[l] / rho[l], ur = mom[r] / rho[r];
        const double pl = pressure(l), pr = pressure(r);
        const double cl = std::sqrt(kBgkGamma * pl / rho[l]);
        const double cr = std::sqrt(kBgkGamma * pr / rho[r]);
        const double sl = std::min(ul - cl, ur - cr), sr = std::max(ul + cl, ur + cr);
        const double Fl[3] = {mom[l], mom[l] * ul + pl, (energy[l] + pl) * ul};
        const double Fr[3] = {mom[r], mom[r] * ur + pr, (energy[r] + pr) * ur};
        const double Ul[3] = {rho[l], mom[l], energy[l]};
        const double Ur[3] = {rho[r], mom[r], energy[r]};
        double F[3];
        for (int c = 0; c < 3; ++c) {
          if (sl >= 0)
            F[c] = Fl[c];
          else if (sr <= 0)
            F[c] = Fr[c];
          else
            F[c] = (sr * Fl[c] - sl * Fr[c] + sl * sr * (Ur[c] - Ul[c])) / (sr - sl);
        }
        f0[face] = F[0], f1[face] = F[1], f2[face] = F[2];
      }
      for (int i = 0; i < n; ++i) {
        rho[i] -= dt / dx * (f0[i + 1] - f0[i]);
        mom[i] -= dt / dx * (f1[i + 1] - f1[i]);
        energy[i] -= dt / dx * (f2[i + 1] - f2[i]);
      }
      t += dt;
    }
  }

  // Rightmost x where density crosses `level` going from high to low.
  double crossing(double level, double from, double to) const {
    const int n = static_cast<int>(rho.size());
    for (int i = n - 2; i >= 0; --i) {
      const double x = (i + 0.5) * dx;
      if (x < from || x > to) continue;
      if ((rho[i] - level) * (rho[i + 1] - level) <= 0)
        return x + dx * (rho[i] - level) / (rho[i] - rho[i + 1]);
    }
    return NAN;
  }
};

std::filesystem::path scratch_dir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("slbgk_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("exact Riemann solver: equal states") {
  const EulerState s{1.3, 0.4, 0.7};
  for (double xi : {-3.0, -0.1, 0.0, 0.5, 4.0}) {
    const EulerState out = exact_euler_riemann(s, s, xi);
    CHECK(out.rho == Approx(s.rho));
    CHECK(out.u == Approx(s.u));
    CHECK(out.p == Approx(s.p));
  }
}

TEST_CASE("exact Riemann solver: mirror symmetry") {
  const EulerState l{2.0, 0.3, 1.5}, r{0.5, -0.1, 0.2};
  const EulerState ml{r.rho, -r.u, r.p}, mr{l.rho, -l.u, l.p};
  for (double xi : {-2.0, -0.7, -0.2, 0.1, 0.6, 1.9}) {
    const EulerState a = exact_euler_riemann(l, r, xi);
    const EulerState b = exact_euler_riemann(ml, mr, -xi);
    CHECK(a.rho == Approx(b.rho).epsilon(1e-10));
    CHECK(a.u == Approx(-b.u).scale(1).epsilon(1e-10));
    CHECK(a.p == Approx(b.p).epsilon(1e-10));
  }
}

TEST_CASE("exact Riemann solver: vacuum") {
  CHECK_THROWS_AS(ExactRiemannSolver({1, -10, 1}, {1, 10, 1}), VacuumError);
}

TEST_CASE("exact Riemann solver against an HLL finite-volume oracle") {
  const EulerState l = riemann_left_state(), r = riemann_right_state();
  CHECK(l.p == Approx(2.25 * 1.125));
  CHECK(r.p == Approx(3.0 / 7 / 6));
  const ExactRiemannSolver exact(l, r);
  const double t = 0.16;
  HllSolver fv(10000, l, r);
  fv.advance(t);

  // contact: halfway between the two star densities
  const double xc = 0.5 + exact.star_velocity() * t;
  const double rho_star_l = exact.sample(exact.star_velocity() - 1e-9).rho;
  const double rho_star_r = exact.sample(exact.star_velocity() + 1e-9).rho;
  const double xs = 0.5 + exact.right_wave_speed() * t;
  const double fv_shock = fv.crossing(0.5 * (rho_star_r + r.rho), xc + 0.01, 1.0);
  const double fv_contact = fv.crossing(0.5 * (rho_star_l + rho_star_r), 0.5, xs - 0.01);
  MESSAGE("shock " << xs << " vs " << fv_shock << ", contact " << xc << " vs " << fv_contact);
  CHECK(std::abs(fv_shock - xs) < 1e-3);
  CHECK(std::abs(fv_contact - xc) < 1e-3);

  // away from the waves the states agree closely
  double l1 = 0;
  for (std::size_t i = 0; i < fv.rho.size(); ++i) {
    const double x = (i + 0.5) * fv.dx;
    l1 += std::abs(fv.rho[i] - exact.sample((x - 0.5) / t).rho) * fv.dx;
  }
  CHECK(l1 < 5e-3);
}

TEST_CASE("consistent initial data") {
  CHECK(consistent_velocity(0.1) == Approx(0.1 * (1 - 2 * std::exp(-16.0))).epsilon(1e-14));
  CHECK(std::abs(consistent_velocity(0.1) - (0.1 - 2.25e-8)) < 1e-10);
  const Space s = make_phase_space(build_mesh(-1.0, 1.0, 16, 2), VelocityGrid<double>::uniform(15.0, 100));
  const auto U = moments(init_consistent(s));
  CHECK((U.rho().array() - 1).abs().maxCoeff() < 1e-12);
  CHECK((U.temperature().array() - 1).abs().maxCoeff() < 1e-12);
  const Vector<double> u = U.velocity();
  for (int p = 0; p < 16; ++p)
    for (int i = 0; i < 3; ++i)
      CHECK(u(3 * p + i) == Approx(consistent_velocity(s->mesh.node(p, i))).scale(1).epsilon(1e-12));
}

TEST_CASE("inconsistent initial data") {
  const Space s = make_phase_space(build_mesh(-1.0, 1.0, 5, 0), VelocityGrid<double>::uniform(15.0, 100));
  const auto f = init_inconsistent(s);
  CHECK(f.values().minCoeff() > 0);
  // x = 0 is the middle node: rho~ = 1
  CHECK(moments(f).rho()(2) == Approx(0.8).epsilon(1e-12));
  CHECK(f.values()(2, 60) != Approx(f.values()(2, 39)));
}

TEST_CASE("Riemann initial data") {
  const Space s = make_phase_space(build_mesh(0.0, 1.0, 4, 1, Boundary::free_flow),
                                   VelocityGrid<double>::uniform(15.0, 100));
  const auto U = moments(init_riemann(s));
  // cell 0 is left of the interface, cell 3 right
  CHECK(U.rho()(0) == Approx(2.25).epsilon(1e-12));
  CHECK(U.temperature()(0) == Approx(1.125).epsilon(1e-12));
  CHECK(U.rho()(7) == Approx(3.0 / 7).epsilon(1e-12));
  CHECK(U.temperature()(7) == Approx(1.0 / 6).epsilon(1e-12));
  CHECK(total_moments(init_riemann(s))(0) == Approx(0.5 * (2.25 + 3.0 / 7)).epsilon(1e-12));
  CHECK(total_moments(init_riemann(s))(0) == Approx(1.3393).epsilon(1e-4));
}

TEST_CASE("epsilon profile") {
  CHECK(epsilon_profile_value(11, 0) == Approx(1e-6 + std::tanh(1.0)).epsilon(1e-15));
  CHECK(epsilon_profile_value(11, 0) == Approx(0.761595).epsilon(1e-6));
  CHECK(epsilon_profile_value(40, 0.5) == Approx(1e-6).epsilon(1e-3));
  CHECK(epsilon_profile_value(40, -0.5) == Approx(1e-6).epsilon(1e-3));
  for (double x : {0.01, 0.1, 0.3})
    CHECK(epsilon_profile_value(11, x) == epsilon_profile_value(11, -x));

  const auto mesh = build_mesh(-0.5, 0.5, 8, 2);
  const auto field = epsilon_profile(mesh, 11);
  CHECK(field(0) == Approx(epsilon_profile_value(11, mesh.node(0, 0))));

  CHECK(EpsilonSpec::parse("1e-3").value == 1e-3);
  CHECK(EpsilonSpec::parse("inf").field(mesh).collisionless());
  const auto tanh = EpsilonSpec::parse("tanh:40");
  CHECK(tanh.kind == EpsilonSpec::Kind::tanh_profile);
  CHECK(tanh.value == 40);
  CHECK(EpsilonSpec::parse(tanh.str()).value == 40);
  CHECK_THROWS_AS(EpsilonSpec::parse("0"), ConfigError);
  CHECK_THROWS_AS(EpsilonSpec::parse("-1"), ConfigError);
  CHECK_THROWS_AS(EpsilonSpec::parse("tanh:x"), ConfigError);
  CHECK_THROWS_AS(EpsilonSpec::parse("lots"), ConfigError);
}

TEST_CASE("norms") {
  const auto mesh = build_mesh(0.0, 2.0, 8, 2);
  const CellField<double> zero = CellField<double>::Zero(3, 8);
  const ErrorNorms e0 = field_error(zero, mesh, [](double) { return 0.0; });
  CHECK(e0.l1 == 0);
  CHECK(e0.l2 == 0);
  CHECK(e0.linf == 0);

  // constant offset c: every norm equals c
  const ErrorNorms c = field_error(zero, mesh, [](double) { return 0.25; });
  CHECK(c.l1 == Approx(0.25));
  CHECK(c.l2 == Approx(0.25));
  CHECK(c.linf == Approx(0.25));

  // e = x on [0, 2]: mean |e| = 1, rms = sqrt(4/3)
  const ErrorNorms lin = field_error(zero, mesh, [](double x) { return x; });
  CHECK(lin.l1 == Approx(1.0));
  CHECK(lin.l2 == Approx(std::sqrt(4.0 / 3)));

  const auto fine = build_mesh(0.0, 2.0, 16, 2);
  auto q = [](double x) { return x * x - x; };
  CHECK(field_difference(interpolate(mesh, q), mesh, interpolate(fine, q), fine).linf < 1e-13);

  CHECK(observed_order(4e-3, 1e-3) == Approx(2.0));
  ErrorReport report;
  report.add(10, {8e-3, 8e-3, 8e-3});
  report.add(20, {1e-3, 2e-3, 4e-3});
  CHECK(!report.rows[0].order);
  CHECK(report.rows[1].order->l1 == Approx(3.0));
  CHECK(report.rows[1].order->l2 == Approx(2.0));
  CHECK(report.rows[1].order->linf == Approx(1.0));

  const Space a = make_phase_space(mesh, VelocityGrid<double>::uniform(15.0, 10));
  const Space b = make_phase_space(fine, VelocityGrid<double>::uniform(15.0, 12));
  CHECK_THROWS_AS(phase_space_difference(DistributionField<double>(a), DistributionField<double>(b)),
                  ConfigError);
}

TEST_CASE("transport convergence reproduces the published table rows") {
  const auto p2 = transport_convergence(2, {10, 20}, 2.2, 10, LimiterMode::lmpp);
  CHECK(p2.rows[1].error.l1 == Approx(6.55e-5).epsilon(0.01));
  CHECK(p2.rows[1].order->l1 == Approx(2.81).epsilon(0.01));
  const auto p1 = transport_convergence(1, {160, 320}, 2.2, 10, LimiterMode::lmpp);
  CHECK(p1.rows[1].error.l1 == Approx(1.23e-5).epsilon(0.01));
  CHECK(p1.rows[1].order->l1 == Approx(2.05).epsilon(0.01));
}

TEST_CASE("step profile helpers") {
  CHECK(step_initial(-0.75) == 1);
  CHECK(step_initial(-0.25) == 0.5);
  CHECK(step_initial(0.25) == -0.5);
  CHECK(step_initial(0.75) == -1);
  CHECK(step_exact(0.25, 2.0) == -0.5);
  CHECK(step_exact(0.25, 0.5) == 0.5);
}

TEST_CASE("CSV output") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");

  const auto dir = scratch_dir("csv");
  {
    CsvWriter csv((dir / "a.csv").string(), {"x", "y"});
    csv.row({1.5, 2.0});
    CHECK_THROWS(csv.row({1.0}));
  }
  std::ifstream in(dir / "a.csv", std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "x,y\n1.5,2\n");
}

TEST_CASE("experiment specs") {
  for (const auto &name : experiment_names()) {
    const ExperimentSpec s = default_spec(name);
    CHECK_NOTHROW(s.validate());
    nlohmann::json j = s;
    const ExperimentSpec back = j.get<ExperimentSpec>();
    CHECK(nlohmann::json(back) == j);
  }
  CHECK_THROWS_AS(default_spec("nope"), ConfigError);

  ExperimentSpec s = default_spec("bgk_consistent");
  s.nx = {20, 30};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = default_spec("riemann_sod");
  s.nx = {100, 200};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = default_spec("riemann_sod");
  s.cfl = {-1};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = default_spec("riemann_sod");
  s.tableau = "rk4";
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = default_spec("mixed_regime");
  s.output_times = {0.5};
  CHECK_THROWS_AS(s.validate(), ConfigError);

  // scalar shorthands and partial configs keep the experiment's defaults
  const auto partial = nlohmann::json::parse(R"({"name": "riemann_sod", "nx": 50, "epsilon": 0.001})")
                           .get<ExperimentSpec>();
  CHECK(partial.nx == std::vector<int>{50});
  CHECK(partial.epsilon == "0.001");
  CHECK(partial.cfl == std::vector<double>{2.3});
}

TEST_CASE("run_experiment writes a manifest that replays") {
  const auto dir = scratch_dir("manifest");
  ExperimentSpec s = default_spec("riemann_sod");
  s.nx = {20};
  s.nv = 40;
  s.t_end = 0.02;
  s.out_dir = dir.string();
  const auto manifest = run_experiment(s);
  CHECK(manifest["csv_schema_version"] == 1);
  CHECK(std::filesystem::exists(dir / "riemann_sod_profile.csv"));
  CHECK(std::filesystem::exists(dir / "riemann_sod_exact.csv"));
  const ExperimentSpec replay = load_spec((dir / "manifest.json").string());
  CHECK(nlohmann::json(replay) == nlohmann::json(s));
  CHECK(manifest["results"]["L1_vs_euler"]["rho"].get<double>() < 0.2);

  CHECK_THROWS_AS(load_spec((dir / "missing.json").string()), ConfigError);
}
