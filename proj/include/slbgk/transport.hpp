#ifndef SLBGK_TRANSPORT_HPP_
#define SLBGK_TRANSPORT_HPP_

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "slbgk/limiter.hpp"
#include "slbgk/mesh.hpp"
#include "slbgk/upstream.hpp"

namespace slbgk {

/// Lagrange basis at the mesh's Gauss nodes evaluated at a reference point:
/// row vector (L_0(xi), ..., L_k(xi)).
template <typename Scalar>
Eigen::Matrix<Scalar, 1, Eigen::Dynamic> lagrange_row(const Mesh1D<Scalar> &mesh, Scalar xi) {
  const int n = mesh.nodes_per_cell();
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> mono(n);
  Scalar power = 1;
  for (int j = 0; j < n; ++j, power *= xi) mono(j) = power;
  return mono * mesh.inverse_vandermonde();
}

/// Nodal weights of one upstream piece on a uniform mesh:
///   W(i, j) = 1/(2 w_i) * int_lo^hi L_j(xi) L_i(xi + delta) dxi,
/// where [lo, hi] is the piece in source-cell reference coordinates and
/// xi + delta its image in the target cell. The (k+1)-point Gauss rule on the
/// piece is exact (degree 2k integrand); the 1/(2 w_i) factor is the inverse
/// of the diagonal Lagrange mass matrix.
template <typename Scalar>
Matrix<Scalar> piece_weights(const Mesh1D<Scalar> &mesh, Scalar lo, Scalar hi, Scalar delta) {
  const int n = mesh.nodes_per_cell();
  Matrix<Scalar> w = Matrix<Scalar>::Zero(n, n);
  const Scalar half = (hi - lo) / 2, mid = (hi + lo) / 2;
  for (int g = 0; g < n; ++g) {
    const Scalar xi = mid + half * mesh.reference_nodes()(g);
    const Scalar weight = (hi - lo) * mesh.weights()(g);
    w.noalias() += weight * lagrange_row(mesh, xi + delta).transpose() * lagrange_row(mesh, xi);
  }
  return w.array().colwise() / (2 * mesh.weights().array());
}

/// One semi-Lagrangian nodal DG step over a fixed shift s = v * dt on a
/// uniform mesh. With s = (m + alpha) dx, the upstream interval of cell p is
/// the right part of cell p-m-1 (length alpha dx) and the left part of cell
/// p-m, so the update is
///   f_new(:, p) = W_left f(:, p-m-1) + W_right f(:, p-m),
/// optionally followed by the LMPP limiter with bounds from those two cells.
/// Holds a reference to the mesh.
template <typename Scalar>
class ShiftOperator {
 public:
  /// The limiter lower bound is raised to at least `floor`: 0 for distribution
  /// functions, whose global minimum is 0.
  ShiftOperator(const Mesh1D<Scalar> &mesh, Scalar shift, LimiterMode limiter = LimiterMode::off,
                Scalar floor = -std::numeric_limits<Scalar>::infinity())
      : mesh_(&mesh), shift_(shift), limiter_(limiter), floor_(floor) {
    const Scalar dx = mesh.width(0);
    if ((mesh.widths().array() - dx).abs().maxCoeff() > 1e-12 * dx)
      throw ConfigError("ShiftOperator: uniform mesh required");
    const Scalar cells = shift / dx;
    Scalar whole = std::floor(cells);
    fraction_ = cells - whole;
    constexpr Scalar snap = 64 * std::numeric_limits<Scalar>::epsilon();
    if (fraction_ < snap) fraction_ = 0;
    if (fraction_ > 1 - snap) fraction_ = 0, whole += 1;
    offset_ = static_cast<long>(whole);
    identity_ = shift == 0;

    const int n = mesh.nodes_per_cell();
    if (fraction_ == 0) {
      right_ = Matrix<Scalar>::Identity(n, n);
      left_ = Matrix<Scalar>::Zero(n, n);
    } else {
      const Scalar a2 = 2 * fraction_;
      left_ = piece_weights(mesh, 1 - a2, Scalar(1), -(2 - a2));
      right_ = piece_weights(mesh, Scalar(-1), 1 - a2, a2);
    }
  }

  Scalar shift() const { return shift_; }
  long cell_offset() const { return offset_; }
  Scalar fraction() const { return fraction_; }
  const Matrix<Scalar> &left_weights() const { return left_; }
  const Matrix<Scalar> &right_weights() const { return right_; }

  template <typename Derived>
  CellField<Scalar> apply(const Eigen::MatrixBase<Derived> &nodal,
                          LimiterStats *stats = nullptr) const {
    const Mesh1D<Scalar> &mesh = *mesh_;
    const int n = mesh.nodes_per_cell(), nx = mesh.nx();
    if (nodal.rows() != n || nodal.cols() != nx)
      throw std::invalid_argument("ShiftOperator::apply: field shape mismatch");
    if (identity_) return nodal;
    if (limiter_ == LimiterMode::lmpp && std::isfinite(floor_)) {
      CellField<Scalar> lifted = nodal;
      lift_to_floor(lifted, stats);
      return advance(lifted, stats);
    }
    return advance(nodal, stats);
  }

 private:
  // Scale each source polynomial dipping below floor_ about its cell average
  // so that it stays above floor_. Cell averages, hence mass, are unchanged.
  void lift_to_floor(CellField<Scalar> &nodal, LimiterStats *stats) const {
    const Mesh1D<Scalar> &mesh = *mesh_;
    CellField<Scalar> modal = mesh.inverse_vandermonde() * nodal;
    for (long p = 0; p < mesh.nx(); ++p) {
      auto coeffs = modal.col(p);
      const Scalar lo = polynomial_range(coeffs).first;
      if (lo >= floor_) continue;
      Scalar average = 0;
      for (Eigen::Index j = 0; j < coeffs.size(); j += 2) average += coeffs(j) / (j + 1);
      if (!(average > floor_)) continue;
      scale_about_average(coeffs, average, (average - floor_) / (average - lo));
      nodal.col(p).noalias() = mesh.vandermonde() * coeffs;
      if (stats) ++stats->lifted;
    }
  }

  template <typename Derived>
  CellField<Scalar> advance(const Eigen::MatrixBase<Derived> &nodal, LimiterStats *stats) const {
    const Mesh1D<Scalar> &mesh = *mesh_;
    const int n = mesh.nodes_per_cell(), nx = mesh.nx();
    const bool periodic = mesh.boundary() == Boundary::periodic;
    Scalar ghost_left = 0, ghost_right = 0;
    if (!periodic) {
      ghost_left = lagrange_row(mesh, Scalar(-1)).dot(nodal.col(0));
      ghost_right = lagrange_row(mesh, Scalar(1)).dot(nodal.col(nx - 1));
    }

    CellField<Scalar> src(n, nx);
    gather(nodal, offset_, ghost_left, ghost_right, src);
    CellField<Scalar> out(n, nx);
    out.noalias() = right_ * src;
    if (fraction_ > 0) {
      CellField<Scalar> src_left(n, nx);
      if (periodic) {
        src_left.rightCols(nx - 1) = src.leftCols(nx - 1);
        src_left.col(0) = src.col(nx - 1);
      } else {
        gather(nodal, offset_ + 1, ghost_left, ghost_right, src_left);
      }
      out.noalias() += left_ * src_left;
    }
    if (limiter_ == LimiterMode::lmpp) limit(nodal, ghost_left, ghost_right, out, stats);
    return out;
  }

  // dst(:, p) = source cell p - shift_cells (wrapped, or ghost constant).
  template <typename Derived>
  void gather(const Eigen::MatrixBase<Derived> &nodal, long shift_cells, Scalar ghost_left,
              Scalar ghost_right, CellField<Scalar> &dst) const {
    const long nx = mesh_->nx();
    if (mesh_->boundary() == Boundary::periodic) {
      const long m = ((shift_cells % nx) + nx) % nx;
      dst.rightCols(nx - m) = nodal.leftCols(nx - m);
      dst.leftCols(m) = nodal.rightCols(m);
      return;
    }
    for (long p = 0; p < nx; ++p) {
      const long q = p - shift_cells;
      if (q < 0)
        dst.col(p).setConstant(ghost_left);
      else if (q >= nx)
        dst.col(p).setConstant(ghost_right);
      else
        dst.col(p) = nodal.col(q);
    }
  }

  template <typename Derived>
  void limit(const Eigen::MatrixBase<Derived> &nodal, Scalar ghost_left, Scalar ghost_right,
             CellField<Scalar> &out, LimiterStats *stats) const {
    const Mesh1D<Scalar> &mesh = *mesh_;
    const long nx = mesh.nx();
    const bool periodic = mesh.boundary() == Boundary::periodic;

    const CellField<Scalar> old_modal = mesh.inverse_vandermonde() * nodal;
    Vector<Scalar> lo(nx), hi(nx);
    for (long q = 0; q < nx; ++q) std::tie(lo(q), hi(q)) = polynomial_range(old_modal.col(q));

    auto widen = [&](long q, Scalar &lower, Scalar &upper) {
      if (periodic) q = ((q % nx) + nx) % nx;
      if (q < 0) {
        lower = std::min(lower, ghost_left), upper = std::max(upper, ghost_left);
      } else if (q >= nx) {
        lower = std::min(lower, ghost_right), upper = std::max(upper, ghost_right);
      } else {
        lower = std::min(lower, lo(q)), upper = std::max(upper, hi(q));
      }
    };

    CellField<Scalar> modal = mesh.inverse_vandermonde() * out;
    for (long p = 0; p < nx; ++p) {
      Scalar lower = std::numeric_limits<Scalar>::infinity();
      Scalar upper = -lower;
      widen(p - offset_, lower, upper);
      if (fraction_ > 0) widen(p - offset_ - 1, lower, upper);
      lower = std::max(lower, floor_);
      auto coeffs = modal.col(p);
      Scalar average = 0;
      for (Eigen::Index j = 0; j < coeffs.size(); j += 2) average += coeffs(j) / (j + 1);
      const Scalar theta = lmpp_theta(coeffs, average, lower, upper, stats);
      if (theta < 1) {
        scale_about_average(coeffs, average, theta);
        out.col(p).noalias() = mesh.vandermonde() * coeffs;
      }
    }
  }

  const Mesh1D<Scalar> *mesh_;
  Scalar shift_;
  LimiterMode limiter_;
  Scalar floor_;
  long offset_ = 0;
  Scalar fraction_ = 0;
  bool identity_ = false;
  Matrix<Scalar> left_, right_;
};

/// SL NDG(v, dt){f}: transport one velocity slice over x - v dt.
template <typename Scalar, typename Derived>
CellField<Scalar> sl_ndg_step(const Eigen::MatrixBase<Derived> &nodal, Scalar v, Scalar dt,
                              const Mesh1D<Scalar> &mesh,
                              LimiterMode limiter = LimiterMode::off,
                              LimiterStats *stats = nullptr) {
  return ShiftOperator<Scalar>(mesh, v * dt, limiter).apply(nodal, stats);
}

/// sum_{p,i} dx_p w_i f_{p,i}
template <typename Scalar, typename Derived>
Scalar total_mass(const Eigen::MatrixBase<Derived> &nodal, const Mesh1D<Scalar> &mesh) {
  return (mesh.weights().transpose() * nodal * mesh.widths())(0);
}

}  // namespace slbgk

#endif  // SLBGK_TRANSPORT_HPP_
