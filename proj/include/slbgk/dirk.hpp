#ifndef SLBGK_DIRK_HPP_
#define SLBGK_DIRK_HPP_

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slbgk/errors.hpp"
#include "slbgk/kinetics.hpp"
#include "slbgk/limiter.hpp"
#include "slbgk/transport.hpp"

namespace slbgk {

template <typename Scalar>
struct ButcherTableau {
  std::string name;
  Matrix<Scalar> A;
  Vector<Scalar> b;
  Vector<Scalar> c;

  int stages() const { return static_cast<int>(b.size()); }

  bool stiffly_accurate(Scalar tol = 1e-14) const {
    const int s = stages();
    return std::abs(c(s - 1) - 1) <= tol && (A.row(s - 1).transpose() - b).cwiseAbs().maxCoeff() <= tol;
  }

  /// Lower triangular with positive diagonal, c = A 1, stiffly accurate.
  void validate(Scalar tol = 1e-14) const {
    const int s = stages();
    if (s < 1 || A.rows() != s || A.cols() != s || c.size() != s)
      throw ConfigError("tableau " + name + ": inconsistent sizes");
    for (int i = 0; i < s; ++i) {
      if (!(A(i, i) > 0)) throw ConfigError("tableau " + name + ": diagonal must be positive");
      for (int j = i + 1; j < s; ++j)
        if (A(i, j) != 0) throw ConfigError("tableau " + name + ": not diagonally implicit");
      if (std::abs(A.row(i).sum() - c(i)) > tol)
        throw ConfigError("tableau " + name + ": row sums differ from c");
    }
    if (!stiffly_accurate(tol)) throw ConfigError("tableau " + name + ": not stiffly accurate");
  }
};

/// backward_euler, dirk2 (nu = 1 - sqrt(2)/2) or dirk3_4stage.
template <typename Scalar = double>
ButcherTableau<Scalar> tableau(std::string_view name) {
  ButcherTableau<Scalar> t;
  t.name = std::string(name);
  if (name == "backward_euler") {
    t.A = Matrix<Scalar>::Ones(1, 1);
    t.b = Vector<Scalar>::Ones(1);
    t.c = Vector<Scalar>::Ones(1);
  } else if (name == "dirk2") {
    const Scalar nu = 1 - std::sqrt(Scalar(2)) / 2;
    t.A.resize(2, 2);
    t.A << nu, 0, 1 - nu, nu;
    t.b.resize(2);
    t.b << 1 - nu, nu;
    t.c.resize(2);
    t.c << nu, 1;
  } else if (name == "dirk3_4stage") {
    t.A.resize(4, 4);
    t.A << Scalar(1) / 4, 0, 0, 0,
           Scalar(1) / 7, Scalar(1) / 4, 0, 0,
           Scalar(61) / 144, Scalar(-49) / 144, Scalar(1) / 4, 0,
           0, 0, Scalar(3) / 4, Scalar(1) / 4;
    t.b.resize(4);
    t.b << 0, 0, Scalar(3) / 4, Scalar(1) / 4;
    t.c.resize(4);
    t.c << Scalar(1) / 4, Scalar(11) / 28, Scalar(1) / 3, 1;
  } else {
    throw ConfigError("unknown tableau: " + std::string(name));
  }
  t.validate();
  return t;
}

/// Shu-Osher coefficients b_kj (k > j), stored strictly lower triangular:
///   b_kj = a_kj / a_jj - sum_{l=j+1}^{k-1} a_kl b_lj / a_ll.
template <typename Scalar>
struct ShuOsherCoefficients {
  Matrix<Scalar> b;

  Scalar row_sum(int k) const { return k > 0 ? b.row(k).head(k).sum() : Scalar(0); }
};

template <typename Scalar>
ShuOsherCoefficients<Scalar> shu_osher_coeffs(const ButcherTableau<Scalar> &tab) {
  const int s = tab.stages();
  for (int i = 0; i < s; ++i)
    if (!(tab.A(i, i) != 0)) throw ConfigError("shu_osher_coeffs: zero diagonal entry");
  ShuOsherCoefficients<Scalar> so{Matrix<Scalar>::Zero(s, s)};
  for (int k = 1; k < s; ++k) {
    for (int j = 0; j < k; ++j) {
      Scalar v = tab.A(k, j) / tab.A(j, j);
      for (int l = j + 1; l < k; ++l) v -= tab.A(k, l) * so.b(l, j) / tab.A(l, l);
      so.b(k, j) = v;
    }
  }
  return so;
}

/// Knudsen number per spatial node: a constant (possibly +inf, the
/// collisionless limit) or values sampled at the Gauss nodes.
template <typename Scalar>
class KnudsenField {
 public:
  static KnudsenField constant(Scalar eps) {
    if (!(eps > 0)) throw ConfigError("Knudsen number must be positive");
    KnudsenField k;
    k.constant_ = eps;
    return k;
  }

  template <typename F>
  static KnudsenField sampled(const Mesh1D<Scalar> &mesh, F &&eps_of_x) {
    KnudsenField k;
    k.constant_ = std::numeric_limits<Scalar>::quiet_NaN();
    k.values_.resize(mesh.num_nodes());
    for (int p = 0; p < mesh.nx(); ++p)
      for (int i = 0; i < mesh.nodes_per_cell(); ++i) {
        const Scalar e = eps_of_x(mesh.node(p, i));
        if (!(e > 0)) throw ConfigError("Knudsen number must be positive");
        k.values_(static_cast<long>(p) * mesh.nodes_per_cell() + i) = e;
      }
    return k;
  }

  bool is_constant() const { return values_.size() == 0; }
  bool collisionless() const { return is_constant() && std::isinf(constant_); }
  Scalar operator()(long node) const { return is_constant() ? constant_ : values_(node); }

  Vector<Scalar> values(long num_nodes) const {
    if (is_constant()) return Vector<Scalar>::Constant(num_nodes, constant_);
    if (values_.size() != num_nodes) throw ConfigError("Knudsen field sampled on another mesh");
    return values_;
  }

 private:
  Scalar constant_ = 1;
  Vector<Scalar> values_;
};

/// Convex weights of the pointwise implicit relaxation solve
///   f = eps/(eps + h) f* + h/(eps + h) M,   h = a_kk dt.
template <typename Scalar>
std::pair<Scalar, Scalar> relaxation_weights(Scalar h, Scalar eps) {
  if (std::isinf(eps)) return {Scalar(1), Scalar(0)};
  return {eps / (eps + h), h / (eps + h)};
}

template <typename D1, typename D2, typename Scalar>
auto relax_solve(const Eigen::ArrayBase<D1> &fstar, const Eigen::ArrayBase<D2> &maxwellian,
                 Scalar a_kk, Scalar dt, Scalar eps) {
  const auto [wf, wm] = relaxation_weights(a_kk * dt, eps);
  return (wf * fstar + wm * maxwellian).eval();
}

enum class LimiterPolicy { all_transports, solution_only };

inline LimiterPolicy parse_limiter_policy(std::string_view name) {
  if (name == "all") return LimiterPolicy::all_transports;
  if (name == "solution_only") return LimiterPolicy::solution_only;
  throw ConfigError("unknown limiter policy: " + std::string(name));
}

inline const char *to_string(LimiterPolicy policy) {
  return policy == LimiterPolicy::all_transports ? "all" : "solution_only";
}

struct StepperOptions {
  int scheme = 1;  // 1: stage relaxation terms transported; 2: Shu-Osher form
  LimiterMode limiter = LimiterMode::lmpp;
  LimiterPolicy policy = LimiterPolicy::all_transports;
  // Clip the lower limiter bound of transported distributions at 0. The
  // polynomial through nonnegative nodal values can dip below 0 between
  // nodes; without the clip that dip becomes a negative bound.
  bool positive_bounds = true;
  MaxwellianOptions maxwellian;
  bool parallel = false;
};

struct StepStats {
  LimiterStats limiter;
  long transports = 0;

  StepStats &operator+=(const StepStats &o) {
    limiter += o.limiter;
    transports += o.transports;
    return *this;
  }
};

/// Full BGK step: SL NDG transport along characteristics plus a stiffly
/// accurate DIRK treatment of the relaxation, solved pointwise through the
/// conservation of the relaxation operator (stage moments = moments of the
/// transported prediction).
template <typename Scalar>
class BgkStepper {
 public:
  BgkStepper(ButcherTableau<Scalar> tab, KnudsenField<Scalar> eps, StepperOptions options = {})
      : tab_(std::move(tab)), eps_(std::move(eps)), options_(options) {
    tab_.validate();
    if (options_.scheme != 1 && options_.scheme != 2)
      throw ConfigError("scheme must be 1 or 2");
    shu_osher_ = shu_osher_coeffs(tab_);
  }

  const ButcherTableau<Scalar> &tableau() const { return tab_; }
  const ShuOsherCoefficients<Scalar> &shu_osher() const { return shu_osher_; }
  const KnudsenField<Scalar> &knudsen() const { return eps_; }
  const StepperOptions &options() const { return options_; }

  DistributionField<Scalar> step(const DistributionField<Scalar> &fn, Scalar dt,
                                 StepStats *stats = nullptr) const {
    DistributionField<Scalar> out =
        options_.scheme == 1 ? step_characteristic(fn, dt, stats) : step_shu_osher(fn, dt, stats);
    out.check_finite("step output");
    return out;
  }

  /// SL NDG(v_q, dt){f(., v_q)} for every velocity. `distribution` marks
  /// values that are nonnegative by construction (not relaxation terms).
  Matrix<Scalar> transport(const DistributionField<Scalar> &like, const Matrix<Scalar> &values,
                           Scalar dt, bool limit, StepStats *stats,
                           bool distribution = true) const {
    if (dt == 0) return values;
    const Mesh1D<Scalar> &mesh = like.mesh();
    const VelocityGrid<Scalar> &grid = like.grid();
    const int n = mesh.nodes_per_cell(), nx = mesh.nx(), nv = grid.size();
    const LimiterMode mode =
        limit && options_.limiter == LimiterMode::lmpp ? LimiterMode::lmpp : LimiterMode::off;
    const Scalar floor = distribution && options_.positive_bounds
                             ? Scalar(0)
                             : -std::numeric_limits<Scalar>::infinity();
    Matrix<Scalar> out(values.rows(), values.cols());
    std::vector<LimiterStats> per_velocity(nv);
#pragma omp parallel for schedule(static) if (options_.parallel)
    for (int q = 0; q < nv; ++q) {
      Eigen::Map<const Matrix<Scalar>> in(values.col(q).data(), n, nx);
      Eigen::Map<Matrix<Scalar>>(out.col(q).data(), n, nx) =
          ShiftOperator<Scalar>(mesh, grid(q) * dt, mode, floor).apply(in, &per_velocity[q]);
    }
    if (stats) {
      for (const auto &s : per_velocity) stats->limiter += s;
      ++stats->transports;
    }
    return out;
  }

 private:
  struct Relaxed {
    Matrix<Scalar> f;
    Matrix<Scalar> g;  // (M - f) / eps, evaluated as (M - f*) / (eps + h)
  };

  // f = eps/(eps+h) f* + h/(eps+h) M with M the Maxwellian of moments(f*).
  Relaxed relax(const DistributionField<Scalar> &like, Matrix<Scalar> fstar, Scalar h,
                int stage, bool want_g) const {
    if (!fstar.allFinite())
      throw NonFiniteError("non-finite prediction at stage " + std::to_string(stage + 1));
    Relaxed r;
    if (eps_.collisionless() || h == 0) {
      r.f = std::move(fstar);
      if (want_g) r.g = Matrix<Scalar>::Zero(r.f.rows(), r.f.cols());
      return r;
    }
    const long n = like.space().num_nodes();
    const MacroFields<Scalar> U{fstar * like.grid().collision_invariants()};
    Matrix<Scalar> m;
    try {
      m = maxwellian_values(U, like.grid(), options_.maxwellian);
    } catch (const PhysicalStateError &e) {
      throw e.at_stage(stage + 1);
    }
    const Vector<Scalar> eps = eps_.values(n);
    Eigen::Array<Scalar, Eigen::Dynamic, 1> wf(n), wm(n), inv(n);
    for (long i = 0; i < n; ++i) {
      std::tie(wf(i), wm(i)) = relaxation_weights(h, eps(i));
      inv(i) = std::isinf(eps(i)) ? Scalar(0) : 1 / (eps(i) + h);
    }
    if (want_g) r.g = ((m - fstar).array().colwise() * inv).matrix();
    r.f = (fstar.array().colwise() * wf + m.array().colwise() * wm).matrix();
    return r;
  }

  DistributionField<Scalar> step_characteristic(const DistributionField<Scalar> &fn, Scalar dt,
                                                StepStats *stats) const {
    const int s = tab_.stages();
    const bool limit_relaxation = options_.policy == LimiterPolicy::all_transports;
    std::vector<Matrix<Scalar>> g(s);
    Matrix<Scalar> f_stage;
    for (int k = 0; k < s; ++k) {
      Matrix<Scalar> fstar = transport(fn, fn.values(), tab_.c(k) * dt, true, stats);
      for (int j = 0; j < k; ++j) {
        if (tab_.A(k, j) == 0) continue;
        const Scalar lag = (tab_.c(k) - tab_.c(j)) * dt;
        if (lag == 0)
          fstar.noalias() += (dt * tab_.A(k, j)) * g[j];
        else
          fstar.noalias() +=
              (dt * tab_.A(k, j)) * transport(fn, g[j], lag, limit_relaxation, stats, false);
      }
      Relaxed r = relax(fn, std::move(fstar), tab_.A(k, k) * dt, k, k + 1 < s);
      g[k] = std::move(r.g);
      f_stage = std::move(r.f);
    }
    return {fn.space_ptr(), std::move(f_stage)};
  }

  DistributionField<Scalar> step_shu_osher(const DistributionField<Scalar> &fn, Scalar dt,
                                           StepStats *stats) const {
    const int s = tab_.stages();
    std::vector<Matrix<Scalar>> f(s);
    for (int k = 0; k < s; ++k) {
      Matrix<Scalar> fhat = transport(fn, fn.values(), tab_.c(k) * dt, true, stats);
      if (k > 0) {
        fhat *= 1 - shu_osher_.row_sum(k);
        for (int j = 0; j < k; ++j) {
          const Scalar bkj = shu_osher_.b(k, j);
          if (bkj == 0) continue;
          fhat.noalias() += bkj * transport(fn, f[j], (tab_.c(k) - tab_.c(j)) * dt, true, stats);
        }
      }
      f[k] = relax(fn, std::move(fhat), tab_.A(k, k) * dt, k, false).f;
    }
    return {fn.space_ptr(), std::move(f[s - 1])};
  }

  ButcherTableau<Scalar> tab_;
  KnudsenField<Scalar> eps_;
  StepperOptions options_;
  ShuOsherCoefficients<Scalar> shu_osher_;
};

template <typename Scalar>
DistributionField<Scalar> step_scheme1(const DistributionField<Scalar> &fn, Scalar dt,
                                       const ButcherTableau<Scalar> &tab,
                                       const KnudsenField<Scalar> &eps,
                                       StepperOptions options = {}) {
  options.scheme = 1;
  return BgkStepper<Scalar>(tab, eps, options).step(fn, dt);
}

template <typename Scalar>
DistributionField<Scalar> step_scheme2(const DistributionField<Scalar> &fn, Scalar dt,
                                       const ButcherTableau<Scalar> &tab,
                                       const KnudsenField<Scalar> &eps,
                                       StepperOptions options = {}) {
  options.scheme = 2;
  return BgkStepper<Scalar>(tab, eps, options).step(fn, dt);
}

/// Step sizes reaching t_end: whole steps of dt and a final shortened one.
template <typename Scalar>
std::vector<Scalar> step_schedule(Scalar t_end, Scalar dt) {
  if (!(t_end > 0) || !(dt > 0)) throw ConfigError("step_schedule: need t_end > 0, dt > 0");
  const long n = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-10)));
  std::vector<Scalar> steps(n, dt);
  steps.back() = t_end - (n - 1) * dt;
  return steps;
}

template <typename Scalar>
struct StepRecord {
  Scalar t;
  Eigen::Matrix<Scalar, 3, 1> totals;
};

template <typename Scalar>
struct RunResult {
  DistributionField<Scalar> f;
  std::vector<StepRecord<Scalar>> history;  // initial state first
  Scalar dt = 0;
  StepStats stats;

  long steps() const { return static_cast<long>(history.size()) - 1; }

  /// max over the run of |totals(t) - totals(0)|, per component.
  Eigen::Matrix<Scalar, 3, 1> max_drift() const {
    Eigen::Matrix<Scalar, 3, 1> d = Eigen::Matrix<Scalar, 3, 1>::Zero();
    for (const auto &r : history) d = d.cwiseMax((r.totals - history.front().totals).cwiseAbs());
    return d;
  }
};

/// Advance to t_end with dt = CFL dx / V.
template <typename Scalar>
RunResult<Scalar> run(const BgkStepper<Scalar> &stepper, DistributionField<Scalar> f0,
                      Scalar t_end, Scalar cfl,
                      const std::function<void(Scalar, const DistributionField<Scalar> &)>
                          &observer = {}) {
  if (!(cfl > 0)) throw ConfigError("run: CFL must be positive");
  const Scalar dt = cfl * f0.mesh().widths().minCoeff() / f0.grid().vmax();
  RunResult<Scalar> result{std::move(f0), {}, dt, {}};
  Scalar t = 0;
  result.history.push_back({t, total_moments(result.f)});
  for (Scalar h : step_schedule(t_end, dt)) {
    result.f = stepper.step(result.f, h, &result.stats);
    t += h;
    result.history.push_back({t, total_moments(result.f)});
    if (observer) observer(t, result.f);
  }
  return result;
}

}  // namespace slbgk

#endif  // SLBGK_DIRK_HPP_
