#ifndef SLBGK_KINETICS_HPP_
#define SLBGK_KINETICS_HPP_

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slbgk/errors.hpp"
#include "slbgk/mesh.hpp"

namespace slbgk {

/// Velocity nodes with a common quadrature weight dv. The uniform grid uses
/// midpoints v_q = -V + (q - 1/2) dv, dv = 2V / Nv.
template <typename Scalar>
class VelocityGrid {
 public:
  static VelocityGrid uniform(Scalar vmax, int nv) {
    if (!(vmax > 0)) throw ConfigError("velocity grid: need V > 0");
    if (nv < 1) throw ConfigError("velocity grid: need Nv >= 1");
    VelocityGrid grid;
    grid.vmax_ = vmax;
    grid.dv_ = 2 * vmax / nv;
    grid.nodes_.resize(nv);
    for (int q = 0; q < nv; ++q) grid.nodes_(q) = -vmax + (q + Scalar(0.5)) * grid.dv_;
    return grid;
  }

  /// Arbitrary nodes, e.g. a single advection speed for pure transport runs.
  static VelocityGrid discrete(std::vector<Scalar> nodes, Scalar dv = 1) {
    if (nodes.empty()) throw ConfigError("velocity grid: no nodes");
    VelocityGrid grid;
    grid.dv_ = dv;
    grid.nodes_ = Eigen::Map<const Vector<Scalar>>(nodes.data(), nodes.size());
    grid.vmax_ = grid.nodes_.cwiseAbs().maxCoeff();
    return grid;
  }

  /// Half-width V; the largest |v| for discrete grids. Sets dt = CFL dx / V.
  Scalar vmax() const { return vmax_; }
  Scalar dv() const { return dv_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Vector<Scalar> &nodes() const { return nodes_; }
  Scalar operator()(int q) const { return nodes_(q); }

  /// Nv x 3 matrix phi(v_q) dv with phi = (1, v, v^2/2), so that
  /// moments = f * collision_invariants().
  Matrix<Scalar> collision_invariants() const {
    Matrix<Scalar> phi(size(), 3);
    phi.col(0).setConstant(dv_);
    phi.col(1) = nodes_ * dv_;
    phi.col(2) = nodes_.array().square().matrix() * (dv_ / 2);
    return phi;
  }

 private:
  Scalar vmax_ = 0, dv_ = 0;
  Vector<Scalar> nodes_;
};

template <typename Scalar>
struct PhaseSpace {
  Mesh1D<Scalar> mesh;
  VelocityGrid<Scalar> grid;

  long num_nodes() const { return mesh.num_nodes(); }

  /// dx_p w_i for each flattened spatial node p*(k+1)+i.
  Vector<Scalar> node_weights() const {
    const Matrix<Scalar> w = mesh.weights() * mesh.widths().transpose();
    return w.reshaped();
  }
};

template <typename Scalar>
std::shared_ptr<const PhaseSpace<Scalar>> make_phase_space(Mesh1D<Scalar> mesh,
                                                           VelocityGrid<Scalar> grid) {
  return std::make_shared<const PhaseSpace<Scalar>>(
      PhaseSpace<Scalar>{std::move(mesh), std::move(grid)});
}

/// Nodal values f(x_{p,i}, v_q). Row p*(k+1)+i, column q; a column viewed as
/// (k+1) x Nx is the per-velocity CellField.
template <typename Scalar>
class DistributionField {
 public:
  explicit DistributionField(std::shared_ptr<const PhaseSpace<Scalar>> space)
      : space_(std::move(space)),
        values_(Matrix<Scalar>::Zero(space_->num_nodes(), space_->grid.size())) {}

  DistributionField(std::shared_ptr<const PhaseSpace<Scalar>> space, Matrix<Scalar> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (values_.rows() != space_->num_nodes() || values_.cols() != space_->grid.size())
      throw std::invalid_argument("DistributionField: shape must be (Nx*(k+1)) x Nv");
  }

  const PhaseSpace<Scalar> &space() const { return *space_; }
  const std::shared_ptr<const PhaseSpace<Scalar>> &space_ptr() const { return space_; }
  const Mesh1D<Scalar> &mesh() const { return space_->mesh; }
  const VelocityGrid<Scalar> &grid() const { return space_->grid; }

  Matrix<Scalar> &values() { return values_; }
  const Matrix<Scalar> &values() const { return values_; }

  Eigen::Map<Matrix<Scalar>> slice(int q) {
    return {values_.col(q).data(), mesh().nodes_per_cell(), mesh().nx()};
  }
  Eigen::Map<const Matrix<Scalar>> slice(int q) const {
    return {values_.col(q).data(), mesh().nodes_per_cell(), mesh().nx()};
  }

  void check_finite(const std::string &context = "distribution") const {
    if (!values_.allFinite()) throw NonFiniteError(context + ": non-finite value");
  }

 private:
  std::shared_ptr<const PhaseSpace<Scalar>> space_;
  Matrix<Scalar> values_;
};

/// Conserved fields (rho, rho u, E) per spatial node, with d = 1:
/// E = rho u^2 / 2 + d rho T / 2.
template <typename Scalar>
struct MacroFields {
  Matrix<Scalar> conserved;  // N x 3

  long size() const { return conserved.rows(); }
  auto rho() const { return conserved.col(0); }
  auto momentum() const { return conserved.col(1); }
  auto energy() const { return conserved.col(2); }

  Vector<Scalar> velocity() const { return momentum().cwiseQuotient(rho()); }
  Vector<Scalar> temperature() const {
    constexpr int d = 1;
    return ((2 * energy().array() - momentum().array().square() / rho().array()) /
            (d * rho().array()))
        .matrix();
  }

  static MacroFields from_primitive(const Vector<Scalar> &rho, const Vector<Scalar> &u,
                                    const Vector<Scalar> &temperature) {
    MacroFields m;
    m.conserved.resize(rho.size(), 3);
    m.conserved.col(0) = rho;
    m.conserved.col(1) = rho.cwiseProduct(u);
    m.conserved.col(2) =
        (Scalar(0.5) * rho.array() * (u.array().square() + temperature.array())).matrix();
    return m;
  }
};

/// U_{p,i} = sum_q f(v_q) phi(v_q) dv.
template <typename Scalar>
MacroFields<Scalar> moments(const DistributionField<Scalar> &f) {
  return {f.values() * f.grid().collision_invariants()};
}

struct MaxwellianOptions {
  bool floor_temperature = false;  // exploratory runs only
  double temperature_floor = 1e-12;
};

/// rho / sqrt(2 pi T) exp(-(v - u)^2 / (2T)) at every node and velocity.
template <typename Scalar>
Matrix<Scalar> maxwellian_values(const MacroFields<Scalar> &U, const VelocityGrid<Scalar> &grid,
                                 const MaxwellianOptions &options = {}) {
  const long n = U.size();
  const Vector<Scalar> rho = U.rho();
  const Vector<Scalar> u = U.velocity();
  Vector<Scalar> temperature = U.temperature();
  for (long i = 0; i < n; ++i) {
    if (options.floor_temperature && !(temperature(i) > 0) && rho(i) > 0)
      temperature(i) = Scalar(options.temperature_floor);
    if (!(rho(i) > 0) || !(temperature(i) > 0))
      throw PhysicalStateError("non-realizable macroscopic state at node " + std::to_string(i) +
                                   " (rho=" + std::to_string(double(rho(i))) +
                                   ", T=" + std::to_string(double(temperature(i))) + ")",
                               i, double(rho(i)), double(temperature(i)));
  }
  const Eigen::Array<Scalar, Eigen::Dynamic, 1> prefactor =
      rho.array() / (2 * std::numbers::pi_v<Scalar> * temperature.array()).sqrt();
  const Eigen::Array<Scalar, Eigen::Dynamic, 1> inv_2t = Scalar(0.5) / temperature.array();
  Matrix<Scalar> out(n, grid.size());
  for (int q = 0; q < grid.size(); ++q)
    out.col(q) = (prefactor * (-(grid(q) - u.array()).square() * inv_2t).exp()).matrix();
  return out;
}

template <typename Scalar>
DistributionField<Scalar> maxwellian(const MacroFields<Scalar> &U,
                                     std::shared_ptr<const PhaseSpace<Scalar>> space,
                                     const MaxwellianOptions &options = {}) {
  Matrix<Scalar> values = maxwellian_values(U, space->grid, options);
  return {std::move(space), std::move(values)};
}

/// <(M_U - f) phi> per node, N x 3. Vanishes for the continuous Maxwellian;
/// the discrete value measures the midpoint-rule/truncation deviation.
template <typename Scalar>
Matrix<Scalar> collision_invariant_residual(const DistributionField<Scalar> &f,
                                            const MacroFields<Scalar> &U) {
  const Matrix<Scalar> phi = f.grid().collision_invariants();
  return (maxwellian_values(U, f.grid()) - f.values()) * phi;
}

/// <(M_U - f) log f> per node over the entries with f > 0. Non-positive for
/// the continuous model; diagnostic only.
template <typename Scalar>
Vector<Scalar> entropy_dissipation(const DistributionField<Scalar> &f,
                                   const MacroFields<Scalar> &U) {
  const Matrix<Scalar> m = maxwellian_values(U, f.grid());
  const auto &fv = f.values().array();
  const Matrix<Scalar> integrand =
      (fv > 0).select((m.array() - fv) * fv.max(std::numeric_limits<Scalar>::min()).log(), 0);
  return integrand.rowwise().sum() * f.grid().dv();
}

/// Phase-space totals sum dx_p w_i dv f phi over all nodes and velocities.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> total_moments(const DistributionField<Scalar> &f) {
  const MacroFields<Scalar> U = moments(f);
  return U.conserved.transpose() * f.space().node_weights();
}

}  // namespace slbgk

#endif  // SLBGK_KINETICS_HPP_
