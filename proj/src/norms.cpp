#include "slbgk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "slbgk/io.hpp"

namespace slbgk {

namespace {

struct Accumulator {
  double l1 = 0, l2 = 0, linf = 0;

  void add(double weight, double e) {
    e = std::abs(e);
    l1 += weight * e;
    l2 += weight * e * e;
    linf = std::max(linf, e);
  }

  ErrorNorms finish(double length) const { return {l1 / length, std::sqrt(l2 / length), linf}; }
};

}  // namespace

ErrorNorms field_error(const CellField<double> &nodal, const Mesh1D<double> &mesh,
                       const std::function<double(double)> &exact) {
  const GaussRule<double> rule = gauss_legendre<double>(kNormPoints);
  const CellField<double> modal = mesh.inverse_vandermonde() * nodal;
  Accumulator acc;
  for (int p = 0; p < mesh.nx(); ++p)
    for (int g = 0; g < rule.size(); ++g) {
      const double xi = rule.nodes(g);
      const double x = mesh.center(p) + mesh.half_width(p) * xi;
      acc.add(mesh.width(p) * rule.weights(g), eval_monomials(modal.col(p), xi) - exact(x));
    }
  return acc.finish(mesh.length());
}

ErrorNorms field_difference(const CellField<double> &a, const Mesh1D<double> &mesh_a,
                            const CellField<double> &b, const Mesh1D<double> &mesh_b) {
  const CellField<double> modal_b = mesh_b.inverse_vandermonde() * b;
  return field_error(a, mesh_a, [&](double x) { return eval_piecewise(modal_b, mesh_b, x); });
}

ErrorNorms phase_space_difference(const DistributionField<double> &coarse,
                                  const DistributionField<double> &reference) {
  const auto &grid = coarse.grid();
  if (grid.size() != reference.grid().size() ||
      (grid.nodes() - reference.grid().nodes()).cwiseAbs().maxCoeff() > 1e-14)
    throw ConfigError("phase_space_difference: velocity grids differ");
  const Mesh1D<double> &mesh = coarse.mesh();
  const Mesh1D<double> &ref_mesh = reference.mesh();
  const GaussRule<double> rule = gauss_legendre<double>(kNormPoints);

  // Norm points and, for each, the owning reference cell and local coordinate.
  const long npts = static_cast<long>(mesh.nx()) * rule.size();
  std::vector<int> ref_cell(npts);
  Vector<double> xi_coarse(npts), xi_ref(npts), weight(npts);
  std::vector<int> coarse_cell(npts);
  for (int p = 0, idx = 0; p < mesh.nx(); ++p)
    for (int g = 0; g < rule.size(); ++g, ++idx) {
      const double x = mesh.center(p) + mesh.half_width(p) * rule.nodes(g);
      coarse_cell[idx] = p;
      xi_coarse(idx) = rule.nodes(g);
      weight(idx) = mesh.width(p) * rule.weights(g);
      const int r = ref_mesh.owning_cell(x);
      ref_cell[idx] = r;
      xi_ref(idx) = ref_mesh.to_reference(r, x);
    }

  Accumulator acc;
  for (int q = 0; q < grid.size(); ++q) {
    const CellField<double> ma = mesh.inverse_vandermonde() * coarse.slice(q);
    const CellField<double> mb = ref_mesh.inverse_vandermonde() * reference.slice(q);
    for (long i = 0; i < npts; ++i) {
      const double e = eval_monomials(ma.col(coarse_cell[i]), xi_coarse(i)) -
                       eval_monomials(mb.col(ref_cell[i]), xi_ref(i));
      acc.add(grid.dv() * weight(i), e);
    }
  }
  ErrorNorms n = acc.finish(mesh.length());
  return n;
}

double observed_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

void ErrorReport::add(int nx, const ErrorNorms &error) {
  ErrorRow row{nx, error, std::nullopt};
  if (!rows.empty()) {
    const ErrorNorms &prev = rows.back().error;
    row.order = ErrorNorms{observed_order(prev.l1, error.l1), observed_order(prev.l2, error.l2),
                           observed_order(prev.linf, error.linf)};
  }
  rows.push_back(row);
}

void ErrorReport::write_csv(const std::string &path) const {
  CsvWriter csv(path, {"Nx", "L1", "order1", "L2", "order2", "Linf", "orderinf"});
  for (const auto &row : rows) {
    csv.row({std::to_string(row.nx), format_double(row.error.l1),
             row.order ? format_double(row.order->l1) : "", format_double(row.error.l2),
             row.order ? format_double(row.order->l2) : "", format_double(row.error.linf),
             row.order ? format_double(row.order->linf) : ""});
  }
}

}  // namespace slbgk
