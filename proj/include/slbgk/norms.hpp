#ifndef SLBGK_NORMS_HPP_
#define SLBGK_NORMS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slbgk/kinetics.hpp"
#include "slbgk/mesh.hpp"

namespace slbgk {

/// Error norms normalized by the domain length: L1 = |Omega|^-1 int |e|,
/// L2 = (|Omega|^-1 int e^2)^(1/2). Spatial integrals use six Gauss points per
/// cell; phase-space norms add the midpoint rule in v.
struct ErrorNorms {
  double l1 = 0;
  double l2 = 0;
  double linf = 0;
};

inline constexpr int kNormPoints = 6;

/// Field (nodal values on `mesh`) against an exact function.
ErrorNorms field_error(const CellField<double> &nodal, const Mesh1D<double> &mesh,
                       const std::function<double(double)> &exact);

/// Two fields on nested meshes, both evaluated at `mesh_a`'s norm points.
ErrorNorms field_difference(const CellField<double> &a, const Mesh1D<double> &mesh_a,
                            const CellField<double> &b, const Mesh1D<double> &mesh_b);

/// Phase-space difference; velocity grids must coincide. Evaluated at the
/// norm points of `coarse`'s mesh.
ErrorNorms phase_space_difference(const DistributionField<double> &coarse,
                                  const DistributionField<double> &reference);

/// log2(coarse / fine) for a mesh doubling.
double observed_order(double coarse_error, double fine_error);

struct ErrorRow {
  int nx = 0;
  ErrorNorms error;
  std::optional<ErrorNorms> order;  // vs the previous row
};

struct ErrorReport {
  std::vector<ErrorRow> rows;

  void add(int nx, const ErrorNorms &error);
  /// Header Nx,L1,order1,L2,order2,Linf,orderinf.
  void write_csv(const std::string &path) const;
};

}  // namespace slbgk

#endif  // SLBGK_NORMS_HPP_
