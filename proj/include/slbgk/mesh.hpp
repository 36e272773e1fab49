#ifndef SLBGK_MESH_HPP_
#define SLBGK_MESH_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "slbgk/errors.hpp"
#include "slbgk/quadrature.hpp"

namespace slbgk {

enum class Boundary { periodic, free_flow };

inline Boundary parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "free_flow") return Boundary::free_flow;
  throw ConfigError("unknown boundary kind: " + std::string(name));
}

inline const char *to_string(Boundary bc) {
  return bc == Boundary::periodic ? "periodic" : "free_flow";
}

/// Per-velocity DG field: column p holds the k+1 values (nodal or modal) of
/// cell p, so a cell is a contiguous block.
template <typename Scalar>
using CellField = Matrix<Scalar>;

/// 1D mesh of [x_a, x_b] with a (k+1)-point Gauss-Legendre rule per cell and
/// the nodal <-> modal transforms. The local modal basis is the monomials
/// xi^j in the reference coordinate xi in [-1, 1]. Immutable once built.
template <typename Scalar>
class Mesh1D {
 public:
  Mesh1D(Scalar x_a, Scalar x_b, int nx, int degree, Boundary bc)
      : x_a_(x_a), x_b_(x_b), nx_(nx), degree_(degree), bc_(bc) {
    if (!(x_a < x_b)) throw ConfigError("mesh: need x_a < x_b");
    if (nx < 1) throw ConfigError("mesh: need at least one cell");
    if (degree < 0) throw ConfigError("mesh: polynomial degree must be >= 0");
    const int n = degree + 1;
    boundaries_.resize(nx + 1);
    const Scalar dx = (x_b - x_a) / nx;
    for (int p = 0; p <= nx; ++p) boundaries_(p) = x_a + p * dx;
    boundaries_(nx) = x_b;
    widths_ = boundaries_.tail(nx) - boundaries_.head(nx);

    const GaussRule<Scalar> rule = gauss_legendre<Scalar>(n);
    ref_nodes_ = rule.nodes;
    weights_ = rule.weights;
    nodes_.resize(n, nx);
    for (int p = 0; p < nx; ++p)
      nodes_.col(p) = (center(p) + half_width(p) * ref_nodes_.array()).matrix();

    vandermonde_.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) vandermonde_(i, j) = std::pow(ref_nodes_(i), j);
    inverse_vandermonde_ = vandermonde_.fullPivLu().inverse();
  }

  Scalar x_a() const { return x_a_; }
  Scalar x_b() const { return x_b_; }
  Scalar length() const { return x_b_ - x_a_; }
  int nx() const { return nx_; }
  int degree() const { return degree_; }
  int nodes_per_cell() const { return degree_ + 1; }
  long num_nodes() const { return static_cast<long>(nx_) * (degree_ + 1); }
  Boundary boundary() const { return bc_; }

  const Vector<Scalar> &boundaries() const { return boundaries_; }
  const Vector<Scalar> &widths() const { return widths_; }
  Scalar width(int p) const { return widths_(p); }
  Scalar half_width(int p) const { return widths_(p) / 2; }
  Scalar center(int p) const { return (boundaries_(p) + boundaries_(p + 1)) / 2; }
  Scalar left(int p) const { return boundaries_(p); }
  Scalar right(int p) const { return boundaries_(p + 1); }

  /// Reference Gauss nodes on [-1, 1].
  const Vector<Scalar> &reference_nodes() const { return ref_nodes_; }
  /// Reference Gauss weights, summing to one.
  const Vector<Scalar> &weights() const { return weights_; }
  /// Physical nodes x_{p,i}: (k+1) x nx.
  const Matrix<Scalar> &nodes() const { return nodes_; }
  Scalar node(int p, int i) const { return nodes_(i, p); }

  /// V(i, j) = xi_i^j; nodal = V * modal.
  const Matrix<Scalar> &vandermonde() const { return vandermonde_; }
  const Matrix<Scalar> &inverse_vandermonde() const { return inverse_vandermonde_; }

  Scalar to_reference(int p, Scalar x) const {
    return (x - center(p)) / half_width(p);
  }

  /// Map x into [x_a, x_b) on periodic meshes; identity for free flow.
  Scalar wrap(Scalar x) const {
    if (bc_ != Boundary::periodic) return x;
    Scalar y = x - length() * std::floor((x - x_a_) / length());
    if (y >= x_b_) y -= length();
    if (y < x_a_) y = x_a_;
    return y;
  }

  /// Cell owning x under the half-open convention [x_{p-1/2}, x_{p+1/2}),
  /// with the last cell closed. Points outside are clamped to the boundary
  /// cells.
  int owning_cell(Scalar x) const {
    if (x <= x_a_) return 0;
    if (x >= x_b_) return nx_ - 1;
    const auto *first = boundaries_.data();
    const auto *it = std::upper_bound(first, first + nx_ + 1, x);
    return std::clamp(static_cast<int>(it - first) - 1, 0, nx_ - 1);
  }

 private:
  Scalar x_a_, x_b_;
  int nx_, degree_;
  Boundary bc_;
  Vector<Scalar> boundaries_, widths_;
  Vector<Scalar> ref_nodes_, weights_;
  Matrix<Scalar> nodes_;
  Matrix<Scalar> vandermonde_, inverse_vandermonde_;
};

template <typename Scalar = double>
Mesh1D<Scalar> build_mesh(Scalar x_a, Scalar x_b, int nx, int degree,
                          Boundary bc = Boundary::periodic) {
  return Mesh1D<Scalar>(x_a, x_b, nx, degree, bc);
}

/// Horner evaluation of sum_j c_j xi^j.
template <typename Derived>
typename Derived::Scalar eval_monomials(const Eigen::MatrixBase<Derived> &coeffs,
                                        typename Derived::Scalar xi) {
  typename Derived::Scalar value = 0;
  for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) value = value * xi + coeffs(j);
  return value;
}

/// Degree-k polynomial on one cell in the monomial basis of the reference
/// coordinate xi = (x - center_p) / (dx_p / 2).
template <typename Scalar>
struct CellPolynomial {
  int cell = 0;
  Vector<Scalar> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Scalar operator()(Scalar xi) const { return eval_monomials(coeffs, xi); }
  Scalar at(Scalar x, const Mesh1D<Scalar> &mesh) const {
    return (*this)(mesh.to_reference(cell, x));
  }
  /// Exact cell average: (1/2) * integral over [-1, 1].
  Scalar average() const {
    Scalar avg = 0;
    for (int j = 0; j < coeffs.size(); j += 2) avg += coeffs(j) / (j + 1);
    return avg;
  }
};

template <typename Scalar, typename Derived>
CellPolynomial<Scalar> nodal_to_modal(const Eigen::MatrixBase<Derived> &values, int cell,
                                      const Mesh1D<Scalar> &mesh) {
  if (values.size() != mesh.nodes_per_cell())
    throw std::invalid_argument("nodal_to_modal: expected k+1 nodal values");
  return {cell, mesh.inverse_vandermonde() * values};
}

template <typename Scalar>
Vector<Scalar> modal_to_nodal(const CellPolynomial<Scalar> &poly, const Mesh1D<Scalar> &mesh) {
  if (poly.coeffs.size() != mesh.nodes_per_cell())
    throw std::invalid_argument("modal_to_nodal: expected k+1 coefficients");
  return mesh.vandermonde() * poly.coeffs;
}

/// Whole-field transforms: one column per cell.
template <typename Scalar, typename Derived>
auto to_modal(const Eigen::MatrixBase<Derived> &nodal, const Mesh1D<Scalar> &mesh) {
  return mesh.inverse_vandermonde() * nodal;
}

template <typename Scalar, typename Derived>
auto to_nodal(const Eigen::MatrixBase<Derived> &modal, const Mesh1D<Scalar> &mesh) {
  return mesh.vandermonde() * modal;
}

/// Evaluate a modal field at x. Periodic meshes wrap x; free-flow meshes
/// extend the boundary cells' endpoint values as constants outside the domain.
template <typename Scalar, typename Derived>
Scalar eval_piecewise(const Eigen::MatrixBase<Derived> &modal, const Mesh1D<Scalar> &mesh,
                      Scalar x) {
  if (mesh.boundary() == Boundary::periodic) {
    x = mesh.wrap(x);
  } else if (x < mesh.x_a()) {
    return eval_monomials(modal.col(0), Scalar(-1));
  } else if (x > mesh.x_b()) {
    return eval_monomials(modal.col(mesh.nx() - 1), Scalar(1));
  }
  const int p = mesh.owning_cell(x);
  return eval_monomials(modal.col(p), mesh.to_reference(p, x));
}

/// Nodal values by interpolation at the Gauss nodes.
template <typename Scalar, typename F>
CellField<Scalar> interpolate(const Mesh1D<Scalar> &mesh, F &&f) {
  CellField<Scalar> out(mesh.nodes_per_cell(), mesh.nx());
  for (int p = 0; p < mesh.nx(); ++p)
    for (int i = 0; i < mesh.nodes_per_cell(); ++i) out(i, p) = f(mesh.node(p, i));
  return out;
}

/// Nodal values of the cellwise L2 projection, integrating with an
/// `points`-point Gauss rule per cell. The Lagrange mass matrix at Gauss nodes
/// is diagonal (dx_p w_i), so the projection is a weighted moment per node.
template <typename Scalar, typename F>
CellField<Scalar> l2_project(const Mesh1D<Scalar> &mesh, F &&f, int points = 6) {
  const int n = mesh.nodes_per_cell();
  const GaussRule<Scalar> rule = gauss_legendre<Scalar>(points);
  // Lagrange basis values at the projection points.
  Matrix<Scalar> mono(points, n);
  for (int g = 0; g < points; ++g)
    for (int j = 0; j < n; ++j) mono(g, j) = std::pow(rule.nodes(g), j);
  const Matrix<Scalar> lagrange = mono * mesh.inverse_vandermonde();  // points x n
  CellField<Scalar> out(n, mesh.nx());
  for (int p = 0; p < mesh.nx(); ++p) {
    Vector<Scalar> samples(points);
    for (int g = 0; g < points; ++g)
      samples(g) = f(mesh.center(p) + mesh.half_width(p) * rule.nodes(g));
    out.col(p) = (lagrange.transpose() * rule.weights.cwiseProduct(samples))
                     .cwiseQuotient(mesh.weights());
  }
  return out;
}

}  // namespace slbgk

#endif  // SLBGK_MESH_HPP_
