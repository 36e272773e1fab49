#include <cmath>
#include <limits>

#include <doctest.h>

#include "slbgk/experiments.hpp"

using namespace slbgk;
using doctest::Approx;

namespace {

Space small_space(int nx = 20, int order = 2, int nv = 100) {
  return make_phase_space(build_mesh(-1.0, 1.0, nx, order),
                          VelocityGrid<double>::uniform(15.0, nv));
}

// Spatially uniform, non-equilibrium data: moments are constant, so the
// relaxation is the linear ODE f' = (M - f) / eps with a fixed M.
DistributionField<double> homogeneous_bumps(const Space &s) {
  DistributionField<double> f(s);
  for (int q = 0; q < s->grid.size(); ++q)
    f.values().col(q).setConstant(gaussian_density(0.5, 1.0, 1.0, s->grid(q)) +
                                  gaussian_density(0.3, -1.0, 0.5, s->grid(q)));
  return f;
}

// R(z) = 1 + z b^T (I - z A)^-1 1
double stability_function(const ButcherTableau<double> &t, double z) {
  const int s = t.stages();
  const Matrix<double> I = Matrix<double>::Identity(s, s);
  return 1 + z * t.b.dot((I - z * t.A).partialPivLu().solve(Vector<double>::Ones(s)));
}

}  // namespace

TEST_CASE("tableaus") {
  const auto be = tableau<double>("backward_euler");
  CHECK(be.stages() == 1);
  CHECK(be.A(0, 0) == 1);
  CHECK(be.b(0) == 1);
  CHECK(be.c(0) == 1);

  for (const char *name : {"dirk2", "dirk3_4stage"}) {
    const auto t = tableau<double>(name);
    CHECK((t.A.rowwise().sum() - t.c).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(t.stiffly_accurate());
    CHECK(t.b.sum() == Approx(1.0).epsilon(1e-15));
  }
  const auto d3 = tableau<double>("dirk3_4stage");
  // third-order conditions
  CHECK(d3.b.dot(d3.c) == Approx(0.5).epsilon(1e-14));
  CHECK(d3.b.dot(d3.c.cwiseProduct(d3.c)) == Approx(1.0 / 3).epsilon(1e-14));
  CHECK(d3.b.dot(d3.A * d3.c) == Approx(1.0 / 6).epsilon(1e-14));
  const auto d2 = tableau<double>("dirk2");
  CHECK(d2.b.dot(d2.c) == Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(tableau<double>("rk4"), ConfigError);
  ButcherTableau<double> bad = be;
  bad.A(0, 0) = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("Shu-Osher coefficients") {
  CHECK(shu_osher_coeffs(tableau<double>("backward_euler")).b.size() == 1);
  CHECK(shu_osher_coeffs(tableau<double>("backward_euler")).row_sum(0) == 0);
  const auto d2 = shu_osher_coeffs(tableau<double>("dirk2"));
  CHECK(d2.b(1, 0) == Approx(1 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(d2.b(1, 0) == Approx(2.414214).epsilon(1e-6));
  ButcherTableau<double> bad = tableau<double>("dirk2");
  bad.A(1, 1) = 0;
  CHECK_THROWS_AS(shu_osher_coeffs(bad), ConfigError);
}

TEST_CASE("relax_solve") {
  Eigen::ArrayXd fstar(3), m(3);
  fstar << 1, 2, 3;
  m << 3, 2, 1;
  CHECK((relax_solve(fstar, m, 0.5, 1.0, std::numeric_limits<double>::infinity()) - fstar).abs().maxCoeff() == 0);
  CHECK((relax_solve(fstar, m, 0.5, 0.0, 1e-3) - fstar).abs().maxCoeff() == 0);
  CHECK((relax_solve(m, m, 0.5, 0.1, 1e-3) - m).abs().maxCoeff() < 1e-15);
  CHECK((relax_solve(fstar, m, 0.5, 2.0, 1.0) - (fstar + m) / 2).abs().maxCoeff() < 1e-15);
}

TEST_CASE("homogeneous relaxation follows the DIRK stability function") {
  const Space s = small_space(4, 1, 60);
  const DistributionField<double> f0 = homogeneous_bumps(s);
  const Matrix<double> M = maxwellian_values(moments(f0), s->grid);
  const double dt = 0.05;
  for (const char *name : {"backward_euler", "dirk2", "dirk3_4stage"})
    for (double eps : {1e-6, 0.02, 0.5}) {
      const auto tab = tableau<double>(name);
      const auto eps_field = KnudsenField<double>::constant(eps);
      const double R = stability_function(tab, -dt / eps);
      const Matrix<double> oracle = M + R * (f0.values() - M);
      const auto f1 = step_scheme1(f0, dt, tab, eps_field);
      const auto f2 = step_scheme2(f0, dt, tab, eps_field);
      CHECK((f1.values() - oracle).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((f2.values() - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("equilibrium is a fixed point") {
  const Space s = small_space(10, 2);
  const auto f0 = init_equilibrium(s, 1.0, 0.3, 0.8);
  for (const char *name : {"backward_euler", "dirk2", "dirk3_4stage"})
    for (double eps : {1e-6, 1e-2, 1.0})
      for (int scheme : {1, 2}) {
        StepperOptions options;
        options.scheme = scheme;
        const BgkStepper<double> stepper(tableau<double>(name),
                                         KnudsenField<double>::constant(eps), options);
        const double dt = 4 * s->mesh.width(0) / s->grid.vmax();
        const auto f1 = stepper.step(f0, dt);
        CHECK((f1.values() - f0.values()).cwiseAbs().maxCoeff() < 1e-12);
      }
}

TEST_CASE("backward Euler: both schemes agree bitwise") {
  const Space s = small_space();
  const auto f0 = init_inconsistent(s);
  const auto tab = tableau<double>("backward_euler");
  for (double eps : {1e-6, 1e-2, 1.0}) {
    const auto e = KnudsenField<double>::constant(eps);
    const double dt = 4 * s->mesh.width(0) / s->grid.vmax();
    CHECK(step_scheme1(f0, dt, tab, e).values() == step_scheme2(f0, dt, tab, e).values());
  }
}

TEST_CASE("asymptotic collapse onto the local Maxwellian") {
  const Space s = small_space(40, 2);
  const auto f0 = init_inconsistent(s);
  const double eps = 1e-6, dt = 4 * s->mesh.width(0) / s->grid.vmax();
  const BgkStepper<double> stepper(tableau<double>("backward_euler"),
                                   KnudsenField<double>::constant(eps));
  const Matrix<double> fstar = stepper.transport(f0, f0.values(), dt, true, nullptr);
  const Matrix<double> M = maxwellian_values(MacroFields<double>{fstar * s->grid.collision_invariants()},
                                             s->grid);
  const auto f1 = stepper.step(f0, dt);
  CHECK((f1.values() - M).cwiseAbs().maxCoeff() < 1e-5);

  // L1 distance bounded by the contraction factor eps / (eps + dt)
  auto l1 = [&](const Matrix<double> &d) {
    return (d.cwiseAbs().transpose() * s->node_weights()).sum() * s->grid.dv();
  };
  const double predicted = eps / (eps + dt) * l1(fstar - M);
  CHECK(l1(f1.values() - M) <= 10 * predicted);
}

TEST_CASE("collisionless stepper is pure transport") {
  const Space s = small_space(16, 2, 8);
  const auto f0 = init_inconsistent(s);
  StepperOptions options;
  options.limiter = LimiterMode::off;
  const BgkStepper<double> stepper(tableau<double>("dirk3_4stage"),
                                   KnudsenField<double>::constant(std::numeric_limits<double>::infinity()), options);
  const double dt = 0.031;
  const auto f1 = stepper.step(f0, dt);
  for (int q = 0; q < s->grid.size(); ++q)
    CHECK((f1.slice(q) - sl_ndg_step(f0.slice(q), s->grid(q), dt, s->mesh)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("conservation on the consistent problem") {
  BgkSetup setup;
  setup.nx = 20;
  setup.cfl = 4;
  setup.epsilon = EpsilonSpec::parse("1e-6");
  for (const char *name : {"backward_euler", "dirk2", "dirk3_4stage"}) {
    setup.tableau = name;
    const auto result = run_bgk(setup);
    const Eigen::Vector3d drift = result.max_drift();
    const Eigen::Vector3d scale = result.history.front().totals.cwiseAbs().cwiseMax(1.0);
    CHECK(drift.cwiseQuotient(scale).maxCoeff() < 1e-12);
    CHECK(result.f.values().allFinite());
    CHECK(result.history.back().t == Approx(0.04).epsilon(1e-14));
  }
}

TEST_CASE("schemes 1 and 2 agree at small epsilon") {
  BgkSetup setup;
  setup.nx = 40;
  setup.cfl = 1;
  setup.epsilon = EpsilonSpec::parse("1e-6");
  const auto one = run_bgk(setup).f;
  setup.scheme = 2;
  const auto two = run_bgk(setup).f;
  setup.nx = 80;
  setup.scheme = 1;
  const auto fine = run_bgk(setup).f;
  const double gap = phase_space_difference(one, two).l1;
  const double discretization = phase_space_difference(one, fine).l1;
  MESSAGE("scheme gap " << gap << ", discretization " << discretization);
  CHECK(gap < discretization);
}

TEST_CASE("step_schedule") {
  const auto whole = step_schedule(1.0, 0.25);
  CHECK(whole.size() == 4);
  CHECK(whole.back() == 0.25);
  const auto partial = step_schedule(2.5, 1.0);
  REQUIRE(partial.size() == 3);
  CHECK(partial[2] == Approx(0.5));
  CHECK_THROWS_AS(step_schedule(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(step_schedule(1.0, -1.0), ConfigError);
}

TEST_CASE("realizability failure reports the stage") {
  const Space s = small_space(4, 1, 10);
  DistributionField<double> f(s);
  f.values().setConstant(-1.0);
  const BgkStepper<double> stepper(tableau<double>("dirk2"), KnudsenField<double>::constant(1.0));
  try {
    stepper.step(f, 0.01);
    FAIL("expected PhysicalStateError");
  } catch (const PhysicalStateError &e) {
    CHECK(e.stage() == 1);
  }
  f.values()(0, 0) = NAN;
  CHECK_THROWS_AS(stepper.step(f, 0.01), NonFiniteError);
  CHECK_THROWS_AS(BgkStepper<double>(tableau<double>("dirk2"), KnudsenField<double>::constant(1.0),
                                     StepperOptions{3}),
                  ConfigError);
  CHECK_THROWS_AS(KnudsenField<double>::constant(0.0), ConfigError);
}
