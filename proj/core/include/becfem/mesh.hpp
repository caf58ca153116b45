#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace becfem
{

using Index = std::int32_t;

/// Axis-aligned rectangular computational domain.
struct Domain
{
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
};

enum class FaceOrientation
{
  Horizontal,  // edge parallel to the x axis, normal along y
  Vertical     // edge parallel to the y axis, normal along x
};

/// One mesh face (cell edge). Interior faces store the lower/left cell
/// first, so the first cell's outward normal points along +x or +y.
/// Boundary faces store the single adjacent cell as `cells[0]` and -1.
struct Face
{
  FaceOrientation orientation;
  std::array<Index, 2> cells;

  bool is_boundary() const { return cells[1] < 0; }
};

/// Uniform tensor-product mesh of a rectangle. Cells are numbered
/// row-major; horizontal faces come first (row-major), then vertical
/// faces (column-major). Immutable after build_mesh.
struct Mesh
{
  Domain domain;
  Index nx = 0;
  Index ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  std::vector<std::array<Index, 2>> cells;  // (i, j) index pairs
  std::vector<Face> faces;

  Index cell_count() const { return nx * ny; }
  Index face_count() const { return static_cast<Index>(faces.size()); }
  Index horizontal_face_count() const { return nx * (ny + 1); }

  Index cell_id(Index i, Index j) const { return j * nx + i; }
  Index horizontal_face_id(Index i, Index j) const { return j * nx + i; }
  Index vertical_face_id(Index i, Index j) const
  {
    return horizontal_face_count() + i * ny + j;
  }

  /// Larger of the two cell extents; the mesh size reported in studies.
  double h() const { return hx > hy ? hx : hy; }

  std::array<double, 2> cell_origin(Index cell) const
  {
    const Index i = cells[cell][0];
    const Index j = cells[cell][1];
    return {domain.xmin + i * hx, domain.ymin + j * hy};
  }

  std::array<double, 2> cell_center(Index cell) const
  {
    const auto o = cell_origin(cell);
    return {o[0] + 0.5 * hx, o[1] + 0.5 * hy};
  }

  /// Map a reference point in [-1,1]^2 to physical coordinates of `cell`.
  std::array<double, 2> map_to_physical(Index cell, double xhat, double yhat) const
  {
    const auto c = cell_center(cell);
    return {c[0] + 0.5 * hx * xhat, c[1] + 0.5 * hy * yhat};
  }

  /// Map physical coordinates to the reference cell of `cell`.
  std::array<double, 2> map_to_reference(Index cell, double x, double y) const
  {
    const auto c = cell_center(cell);
    return {(x - c[0]) * 2.0 / hx, (y - c[1]) * 2.0 / hy};
  }

  /// Cell containing (x, y); points on cell boundaries resolve to the
  /// lower/left cell, indices clamp to the mesh.
  Index locate(double x, double y) const;

  /// Midpoint of a face.
  std::array<double, 2> face_center(Index face) const;

  /// Length of a face (hx for horizontal faces, hy for vertical ones).
  double face_length(Index face) const
  {
    return faces[face].orientation == FaceOrientation::Horizontal ? hx : hy;
  }

  /// Outward unit normal of the first stored cell on `face`.
  std::array<double, 2> face_normal_first(Index face) const;
};

/// Build a uniform nx-by-ny mesh of `domain`. Throws std::invalid_argument
/// for non-positive cell counts or a degenerate domain.
Mesh build_mesh(const Domain& domain, Index nx, Index ny);

/// For nested meshes over the same domain, the coarse cell containing each
/// fine cell. Throws std::invalid_argument if the meshes are not nested.
std::vector<Index> refine_map(const Mesh& coarse, const Mesh& fine);

}  // namespace becfem
