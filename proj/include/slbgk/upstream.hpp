#ifndef SLBGK_UPSTREAM_HPP_
#define SLBGK_UPSTREAM_HPP_

#include <cmath>
#include <vector>

#include "slbgk/mesh.hpp"

namespace slbgk {

/// Piece of an upstream interval lying in one Eulerian cell. `a` and `b` are
/// in the owning cell's coordinates (wrapped into the domain on periodic
/// meshes). A point x of the segment is carried to x + to_target in the
/// target cell.
template <typename Scalar>
struct Segment {
  Scalar a = 0, b = 0;
  int cell = 0;
  bool ghost = false;  // outside a free-flow domain: constant extension
  Scalar to_target = 0;

  Scalar length() const { return b - a; }
};

/// Backward characteristic image of cell p over a shift s = v * dt.
template <typename Scalar>
struct UpstreamInterval {
  int cell = 0;
  Scalar shift = 0;
  Scalar left = 0, right = 0;  // x_{p-1/2} - s, x_{p+1/2} - s, unwrapped
  std::vector<Segment<Scalar>> segments;

  Scalar total_length() const {
    Scalar sum = 0;
    for (const auto &seg : segments) sum += seg.length();
    return sum;
  }
};

namespace detail {

// Split [a, end) into cell pieces; a must lie inside the domain.
template <typename Scalar>
void walk_cells(const Mesh1D<Scalar> &mesh, Scalar a, Scalar end, Scalar to_target,
                std::vector<Segment<Scalar>> &out) {
  const bool periodic = mesh.boundary() == Boundary::periodic;
  int q = mesh.owning_cell(a);
  while (a < end) {
    if (q == mesh.nx()) {
      if (!periodic) break;
      // crossed x_b: continue from x_a
      q = 0;
      end -= mesh.length();
      to_target += mesh.length();
      a = mesh.x_a();
    }
    const Scalar b = std::min(end, mesh.right(q));
    if (b > a) out.push_back({a, b, q, false, to_target});
    a = b;
    ++q;
  }
}

}  // namespace detail

/// Trace the faces of cell p back along x - v*dt and split the upstream
/// interval against the Eulerian cells. Any number of cells may be crossed;
/// the sign of v*dt is arbitrary (negative shifts appear in DIRK stage
/// differences c_k - c_j < 0).
template <typename Scalar>
UpstreamInterval<Scalar> trace_upstream(int p, Scalar v, Scalar dt, const Mesh1D<Scalar> &mesh) {
  UpstreamInterval<Scalar> up;
  up.cell = p;
  up.shift = v * dt;
  up.left = mesh.left(p) - up.shift;
  up.right = mesh.right(p) - up.shift;

  if (mesh.boundary() == Boundary::periodic) {
    const Scalar a = mesh.wrap(up.left);
    const Scalar wrap = a - up.left;
    detail::walk_cells(mesh, a, up.right + wrap, up.shift - wrap, up.segments);
    return up;
  }

  Scalar a = up.left;
  if (a < mesh.x_a()) {
    const Scalar b = std::min(up.right, mesh.x_a());
    up.segments.push_back({a, b, 0, true, up.shift});
    a = b;
  }
  const Scalar interior_end = std::min(up.right, mesh.x_b());
  if (a < interior_end) detail::walk_cells(mesh, a, interior_end, up.shift, up.segments);
  if (up.right > mesh.x_b()) {
    up.segments.push_back({std::max(up.left, mesh.x_b()), up.right, mesh.nx() - 1, true,
                           up.shift});
  }
  return up;
}

}  // namespace slbgk

#endif  // SLBGK_UPSTREAM_HPP_
