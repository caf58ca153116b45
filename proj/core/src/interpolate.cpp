#include "becfem/interpolate.hpp"

namespace becfem
{

DiscreteField interpolate(const FeSpace& space, const ScalarFunction& f)
{
  const Mesh& mesh = space.mesh();
  DiscreteField out = space.make_field();

  auto set_free = [&](Index global, double value) {
    const Index fr = space.free_index(global);
    if (fr >= 0)
      out.coeffs[fr] = value;
  };

  if (space.kind() == ElementKind::EQ1Rot)
  {
    const GaussRule& rule = space.edge_rule();
    for (Index face = 0; face < mesh.face_count(); ++face)
    {
      const auto center = mesh.face_center(face);
      const bool horizontal = mesh.faces[face].orientation == FaceOrientation::Horizontal;
      const double half = 0.5 * (horizontal ? mesh.hx : mesh.hy);
      double avg = 0.0;
      for (int q = 0; q < rule.size(); ++q)
      {
        const double t = rule.points[q] * half;
        avg += rule.weights[q] *
               (horizontal ? f(center[0] + t, center[1]) : f(center[0], center[1] + t));
      }
      set_free(face, 0.5 * avg);  // Gauss weights sum to 2
    }
    const Quadrature& quad = space.quadrature();
    for (Index c = 0; c < mesh.cell_count(); ++c)
    {
      double avg = 0.0;
      for (int q = 0; q < quad.size(); ++q)
      {
        const auto p = mesh.map_to_physical(c, quad.x[q], quad.y[q]);
        avg += quad.w[q] * f(p[0], p[1]);
      }
      set_free(mesh.face_count() + c, 0.25 * avg);
    }
    return out;
  }

  // Q2: values on the (2nx+1) x (2ny+1) node grid.
  const Index nnx = 2 * mesh.nx + 1;
  const Index nny = 2 * mesh.ny + 1;
  for (Index iy = 0; iy < nny; ++iy)
    for (Index ix = 0; ix < nnx; ++ix)
      set_free(iy * nnx + ix,
               f(mesh.domain.xmin + 0.5 * ix * mesh.hx, mesh.domain.ymin + 0.5 * iy * mesh.hy));
  return out;
}

}  // namespace becfem
