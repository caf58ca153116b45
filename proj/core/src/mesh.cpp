#include "becfem/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace becfem
{

Index Mesh::locate(double x, double y) const
{
  auto clamp = [](Index v, Index n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); };
  const Index i = clamp(static_cast<Index>(std::floor((x - domain.xmin) / hx)), nx);
  const Index j = clamp(static_cast<Index>(std::floor((y - domain.ymin) / hy)), ny);
  return cell_id(i, j);
}

std::array<double, 2> Mesh::face_center(Index face) const
{
  const Index nh = horizontal_face_count();
  if (face < nh)
  {
    const Index i = face % nx;
    const Index j = face / nx;
    return {domain.xmin + (i + 0.5) * hx, domain.ymin + j * hy};
  }
  const Index v = face - nh;
  const Index i = v / ny;
  const Index j = v % ny;
  return {domain.xmin + i * hx, domain.ymin + (j + 0.5) * hy};
}

std::array<double, 2> Mesh::face_normal_first(Index face) const
{
  const Face& f = faces[face];
  if (f.orientation == FaceOrientation::Horizontal)
  {
    // Interior and top-boundary faces store the cell below; the bottom
    // boundary has only the cell above, whose outward normal is -y.
    const Index nh_row = face / nx;
    const bool bottom_boundary = (nh_row == 0);
    return {0.0, bottom_boundary ? -1.0 : 1.0};
  }
  const Index col = (face - horizontal_face_count()) / ny;
  const bool left_boundary = (col == 0);
  return {left_boundary ? -1.0 : 1.0, 0.0};
}

Mesh build_mesh(const Domain& domain, Index nx, Index ny)
{
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("build_mesh: cell counts must be positive");
  if (!(domain.xmin < domain.xmax) || !(domain.ymin < domain.ymax))
    throw std::invalid_argument("build_mesh: degenerate domain");

  Mesh mesh;
  mesh.domain = domain;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.hx = domain.width() / nx;
  mesh.hy = domain.height() / ny;

  mesh.cells.reserve(static_cast<std::size_t>(nx) * ny);
  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < nx; ++i)
      mesh.cells.push_back({i, j});

  mesh.faces.reserve(static_cast<std::size_t>(nx) * (ny + 1) +
                     static_cast<std::size_t>(ny) * (nx + 1));
  // Horizontal faces, row-major over rows j = 0..ny.
  for (Index j = 0; j <= ny; ++j)
  {
    for (Index i = 0; i < nx; ++i)
    {
      Face f;
      f.orientation = FaceOrientation::Horizontal;
      const Index below = (j > 0) ? mesh.cell_id(i, j - 1) : -1;
      const Index above = (j < ny) ? mesh.cell_id(i, j) : -1;
      // Lower cell first so its outward normal is +y on interior faces.
      f.cells = (below >= 0) ? std::array<Index, 2>{below, above}
                             : std::array<Index, 2>{above, Index{-1}};
      mesh.faces.push_back(f);
    }
  }
  // Vertical faces, column-major over columns i = 0..nx.
  for (Index i = 0; i <= nx; ++i)
  {
    for (Index j = 0; j < ny; ++j)
    {
      Face f;
      f.orientation = FaceOrientation::Vertical;
      const Index left = (i > 0) ? mesh.cell_id(i - 1, j) : -1;
      const Index right = (i < nx) ? mesh.cell_id(i, j) : -1;
      f.cells = (left >= 0) ? std::array<Index, 2>{left, right}
                            : std::array<Index, 2>{right, Index{-1}};
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

std::vector<Index> refine_map(const Mesh& coarse, const Mesh& fine)
{
  const auto& cd = coarse.domain;
  const auto& fd = fine.domain;
  if (cd.xmin != fd.xmin || cd.xmax != fd.xmax || cd.ymin != fd.ymin || cd.ymax != fd.ymax)
    throw std::invalid_argument("refine_map: meshes cover different domains");
  if (fine.nx % coarse.nx != 0 || fine.ny % coarse.ny != 0)
    throw std::invalid_argument("refine_map: fine mesh is not a nested refinement");

  const Index rx = fine.nx / coarse.nx;
  const Index ry = fine.ny / coarse.ny;
  std::vector<Index> map(fine.cell_count());
  for (Index c = 0; c < fine.cell_count(); ++c)
  {
    const Index fi = fine.cells[c][0];
    const Index fj = fine.cells[c][1];
    map[c] = coarse.cell_id(fi / rx, fj / ry);
  }
  return map;
}

}  // namespace becfem
