#include "becfem/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "becfem/parallel.hpp"

namespace becfem
{

namespace
{

// Sums per-cell contributions in cell order; the partials may be computed
// concurrently.
template <typename CellValue>
double sum_over_cells(Index ncells, CellValue&& cell_value)
{
  std::vector<double> partial(ncells);
  parallel_for(static_cast<std::size_t>(ncells), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c)
      partial[c] = cell_value(static_cast<Index>(c));
  });
  double total = 0.0;
  for (Index c = 0; c < ncells; ++c)
    total += partial[c];
  return total;
}

struct FaceTrace
{
  Index cell;
  int edge;  // reference edge of `cell` lying on the face
};

// Traces of the one or two cells adjacent to a face, first cell first.
std::array<FaceTrace, 2> face_traces(const Mesh& mesh, Index face)
{
  const Face& f = mesh.faces[face];
  std::array<FaceTrace, 2> out{FaceTrace{-1, 0}, FaceTrace{-1, 0}};
  for (int s = 0; s < 2; ++s)
  {
    const Index c = f.cells[s];
    if (c < 0)
      continue;
    int edge;
    if (f.orientation == FaceOrientation::Horizontal)
    {
      const Index row = face / mesh.nx;
      edge = (mesh.cells[c][1] == row) ? 0 : 2;  // bottom or top edge of the cell
    }
    else
    {
      const Index col = (face - mesh.horizontal_face_count()) / mesh.ny;
      edge = (mesh.cells[c][0] == col) ? 3 : 1;  // left or right edge of the cell
    }
    out[s] = FaceTrace{c, edge};
  }
  return out;
}

std::array<double, 2> edge_reference_point(int edge, double t)
{
  switch (edge)
  {
    case 0: return {t, -1.0};
    case 1: return {1.0, t};
    case 2: return {t, 1.0};
    default: return {-1.0, t};
  }
}

}  // namespace

// -- CellField implementations ----------------------------------------------

FeCellField::FeCellField(const FeSpace& space, const DiscreteField& f)
    : space_(space), field_(f)
{
  space.check_field(f);
}

double FeCellField::value(Index cell, double xhat, double yhat) const
{
  const int nl = space_.local_size();
  std::array<double, 9> local{};
  space_.gather(field_, cell, std::span<double>(local.data(), nl));
  double v = 0.0;
  for (int i = 0; i < nl; ++i)
    v += local[i] * space_.basis().value(i, xhat, yhat);
  return v;
}

std::array<double, 2> FeCellField::gradient(Index cell, double xhat, double yhat) const
{
  const int nl = space_.local_size();
  std::array<double, 9> local{};
  space_.gather(field_, cell, std::span<double>(local.data(), nl));
  double gx = 0.0, gy = 0.0;
  for (int i = 0; i < nl; ++i)
  {
    const auto g = space_.basis().gradient(i, xhat, yhat);
    gx += local[i] * g[0];
    gy += local[i] * g[1];
  }
  return {gx * 2.0 / space_.mesh().hx, gy * 2.0 / space_.mesh().hy};
}

double FeCellField::mixed_derivative(Index cell, double xhat, double yhat) const
{
  const int nl = space_.local_size();
  std::array<double, 9> local{};
  space_.gather(field_, cell, std::span<double>(local.data(), nl));
  double m = 0.0;
  for (int i = 0; i < nl; ++i)
    m += local[i] * space_.basis().mixed_xy(i, xhat, yhat);
  return m * 4.0 / (space_.mesh().hx * space_.mesh().hy);
}

SmoothCellField::SmoothCellField(const Mesh& mesh, ScalarFunction value,
                                 std::function<std::array<double, 2>(double, double)> gradient,
                                 ScalarFunction mixed)
    : mesh_(mesh), value_(std::move(value)), gradient_(std::move(gradient)),
      mixed_(std::move(mixed))
{
}

double SmoothCellField::value(Index cell, double xhat, double yhat) const
{
  const auto p = mesh_.map_to_physical(cell, xhat, yhat);
  return value_(p[0], p[1]);
}

std::array<double, 2> SmoothCellField::gradient(Index cell, double xhat, double yhat) const
{
  if (!gradient_)
    throw std::logic_error("SmoothCellField: gradient not provided");
  const auto p = mesh_.map_to_physical(cell, xhat, yhat);
  return gradient_(p[0], p[1]);
}

double SmoothCellField::mixed_derivative(Index cell, double xhat, double yhat) const
{
  if (!mixed_)
    throw std::logic_error("SmoothCellField: mixed derivative not provided");
  const auto p = mesh_.map_to_physical(cell, xhat, yhat);
  return mixed_(p[0], p[1]);
}

// -- FieldEvaluator ----------------------------------------------------------

FieldEvaluator::FieldEvaluator(const FeSpace& space, const DiscreteField& f)
    : space_(space), field_(f)
{
  space.check_field(f);
}

double FieldEvaluator::value(double x, double y) const
{
  const Index cell = space_.mesh().locate(x, y);
  const auto r = space_.mesh().map_to_reference(cell, x, y);
  return FeCellField(space_, field_).value(cell, r[0], r[1]);
}

std::array<double, 2> FieldEvaluator::gradient(double x, double y) const
{
  const Index cell = space_.mesh().locate(x, y);
  const auto r = space_.mesh().map_to_reference(cell, x, y);
  return FeCellField(space_, field_).gradient(cell, r[0], r[1]);
}

std::array<double, 3> FieldEvaluator::hessian(double x, double y) const
{
  const Index cell = space_.mesh().locate(x, y);
  const auto r = space_.mesh().map_to_reference(cell, x, y);
  const int nl = space_.local_size();
  std::array<double, 9> local{};
  space_.gather(field_, cell, std::span<double>(local.data(), nl));
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
  for (int i = 0; i < nl; ++i)
  {
    const auto d2 = space_.basis().second_derivatives(i, r[0], r[1]);
    hxx += local[i] * d2[0];
    hxy += local[i] * d2[1];
    hyy += local[i] * d2[2];
  }
  const double sx = 2.0 / space_.mesh().hx;
  const double sy = 2.0 / space_.mesh().hy;
  return {hxx * sx * sx, hxy * sx * sy, hyy * sy * sy};
}

ScalarFunction FieldEvaluator::as_function() const
{
  return [this](double x, double y) { return value(x, y); };
}

VectorField gradient_field(const FieldEvaluator& eval)
{
  VectorField g;
  g.x = [&eval](double x, double y) { return eval.gradient(x, y)[0]; };
  g.y = [&eval](double x, double y) { return eval.gradient(x, y)[1]; };
  g.divergence = [&eval](double x, double y) {
    const auto h = eval.hessian(x, y);
    return h[0] + h[2];
  };
  return g;
}

// -- interpolation operators -------------------------------------------------

DiscreteField interpolate_pi_h(const FeSpace& space, const ScalarFunction& f)
{
  if (space.kind() != ElementKind::EQ1Rot)
    throw std::invalid_argument("interpolate_pi_h: space is not EQ1Rot");
  return interpolate(space, f);
}

DiscreteField interpolate_pi_h(const FeSpace& space, const FeSpace& fine_space,
                               const DiscreteField& fine_field)
{
  if (space.kind() != ElementKind::EQ1Rot)
    throw std::invalid_argument("interpolate_pi_h: space is not EQ1Rot");
  fine_space.check_field(fine_field);
  const std::vector<Index> cell_map = refine_map(space.mesh(), fine_space.mesh());

  const Mesh& mesh = space.mesh();
  const Mesh& fmesh = fine_space.mesh();
  const FieldEvaluator eval(fine_space, fine_field);
  DiscreteField out = space.make_field();
  auto set_free = [&](Index global, double value) {
    const Index fr = space.free_index(global);
    if (fr >= 0)
      out.coeffs[fr] = value;
  };

  // Face means by composite Gauss over the fine sub-segments of each face.
  const GaussRule& rule = space.edge_rule();
  for (Index face = 0; face < mesh.face_count(); ++face)
  {
    const bool horizontal = mesh.faces[face].orientation == FaceOrientation::Horizontal;
    const auto center = mesh.face_center(face);
    const double length = mesh.face_length(face);
    const double fine_h = horizontal ? fmesh.hx : fmesh.hy;
    const int nsub = static_cast<int>(std::llround(length / fine_h));
    double avg = 0.0;
    for (int s = 0; s < nsub; ++s)
    {
      const double sub_center = -0.5 * length + (s + 0.5) * fine_h;
      for (int q = 0; q < rule.size(); ++q)
      {
        const double t = sub_center + 0.5 * fine_h * rule.points[q];
        avg += rule.weights[q] *
               (horizontal ? eval.value(center[0] + t, center[1])
                           : eval.value(center[0], center[1] + t));
      }
    }
    set_free(face, avg * 0.5 * fine_h / length);
  }

  // Cell means as exact sums over the nested fine cells.
  const int nlf = fine_space.local_size();
  const int nq = fine_space.quadrature().size();
  std::vector<double> sums(mesh.cell_count(), 0.0);
  std::vector<double> local(nlf);
  for (Index fc = 0; fc < fmesh.cell_count(); ++fc)
  {
    fine_space.gather(fine_field, fc, local);
    double acc = 0.0;
    for (int q = 0; q < nq; ++q)
    {
      const double* val = &fine_space.tab_values()[static_cast<std::size_t>(q) * nlf];
      double u = 0.0;
      for (int i = 0; i < nlf; ++i)
        u += local[i] * val[i];
      acc += fine_space.quadrature().w[q] * u;
    }
    sums[cell_map[fc]] += acc * 0.25 * fmesh.hx * fmesh.hy;
  }
  const double cell_area = mesh.hx * mesh.hy;
  for (Index c = 0; c < mesh.cell_count(); ++c)
    set_free(mesh.face_count() + c, sums[c] / cell_area);
  return out;
}

std::vector<double> project_pi0(const FeSpace& space, const DiscreteField& v)
{
  space.check_field(v);
  const Index ncells = space.mesh().cell_count();
  const int nl = space.local_size();
  const int nq = space.quadrature().size();
  std::vector<double> means(ncells);
  parallel_for(static_cast<std::size_t>(ncells), [&](std::size_t begin, std::size_t end) {
    std::array<double, 9> local{};
    for (std::size_t c = begin; c < end; ++c)
    {
      space.gather(v, static_cast<Index>(c), std::span<double>(local.data(), nl));
      double acc = 0.0;
      for (int q = 0; q < nq; ++q)
      {
        const double* val = &space.tab_values()[static_cast<std::size_t>(q) * nl];
        double u = 0.0;
        for (int i = 0; i < nl; ++i)
          u += local[i] * val[i];
        acc += space.quadrature().w[q] * u;
      }
      means[c] = 0.25 * acc;  // reference cell area is 4
    }
  });
  return means;
}

double pi0_deviation(const FeSpace& space, const DiscreteField& v)
{
  const std::vector<double> means = project_pi0(space, v);
  const int nl = space.local_size();
  const int nq = space.quadrature().size();
  const double jac = 0.25 * space.mesh().hx * space.mesh().hy;
  const double sq = sum_over_cells(space.mesh().cell_count(), [&](Index c) {
    std::array<double, 9> local{};
    space.gather(v, c, std::span<double>(local.data(), nl));
    double acc = 0.0;
    for (int q = 0; q < nq; ++q)
    {
      const double* val = &space.tab_values()[static_cast<std::size_t>(q) * nl];
      double u = -means[c];
      for (int i = 0; i < nl; ++i)
        u += local[i] * val[i];
      acc += space.quadrature().w[q] * u * u;
    }
    return acc * jac;
  });
  return std::sqrt(sq);
}

// -- broken norms -------------------------------------------------------------

namespace
{

// Integrates val^2 (and optionally derivative quantities) over all cells.
template <typename PointValue>
double sqrt_cell_integral(const FeSpace& space, const DiscreteField& v, PointValue&& f)
{
  space.check_field(v);
  const int nl = space.local_size();
  const int nq = space.quadrature().size();
  const double jac = 0.25 * space.mesh().hx * space.mesh().hy;
  const double total = sum_over_cells(space.mesh().cell_count(), [&](Index c) {
    std::array<double, 9> local{};
    space.gather(v, c, std::span<double>(local.data(), nl));
    double acc = 0.0;
    for (int q = 0; q < nq; ++q)
      acc += space.quadrature().w[q] * f(local.data(), q);
    return acc * jac;
  });
  return std::sqrt(std::max(0.0, total));
}

}  // namespace

double l2_norm(const FeSpace& space, const DiscreteField& v)
{
  const int nl = space.local_size();
  return sqrt_cell_integral(space, v, [&](const double* local, int q) {
    const double* val = &space.tab_values()[static_cast<std::size_t>(q) * nl];
    double u = 0.0;
    for (int i = 0; i < nl; ++i)
      u += local[i] * val[i];
    return u * u;
  });
}

double broken_h1_seminorm(const FeSpace& space, const DiscreteField& v)
{
  const int nl = space.local_size();
  const double sx = 2.0 / space.mesh().hx;
  const double sy = 2.0 / space.mesh().hy;
  return sqrt_cell_integral(space, v, [&](const double* local, int q) {
    const double* dx = &space.tab_dx()[static_cast<std::size_t>(q) * nl];
    const double* dy = &space.tab_dy()[static_cast<std::size_t>(q) * nl];
    double gx = 0.0, gy = 0.0;
    for (int i = 0; i < nl; ++i)
    {
      gx += local[i] * dx[i];
      gy += local[i] * dy[i];
    }
    gx *= sx;
    gy *= sy;
    return gx * gx + gy * gy;
  });
}

double broken_h1_norm(const FeSpace& space, const DiscreteField& v)
{
  const double l2 = l2_norm(space, v);
  const double h1 = broken_h1_seminorm(space, v);
  return std::sqrt(l2 * l2 + h1 * h1);
}

double mixed_derivative_l2norm(const FeSpace& space, const DiscreteField& v)
{
  const int nl = space.local_size();
  const double s = 4.0 / (space.mesh().hx * space.mesh().hy);
  return sqrt_cell_integral(space, v, [&](const double* local, int q) {
    double m = 0.0;
    for (int i = 0; i < nl; ++i)
      m += local[i] * space.basis().mixed_xy(i, space.quadrature().x[q], space.quadrature().y[q]);
    m *= s;
    return m * m;
  });
}

double hessian_seminorm(const FeSpace& space, const DiscreteField& v)
{
  const int nl = space.local_size();
  const double sx = 2.0 / space.mesh().hx;
  const double sy = 2.0 / space.mesh().hy;
  return sqrt_cell_integral(space, v, [&](const double* local, int q) {
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
    for (int i = 0; i < nl; ++i)
    {
      const auto d2 =
          space.basis().second_derivatives(i, space.quadrature().x[q], space.quadrature().y[q]);
      hxx += local[i] * d2[0];
      hxy += local[i] * d2[1];
      hyy += local[i] * d2[2];
    }
    hxx *= sx * sx;
    hxy *= sx * sy;
    hyy *= sy * sy;
    return hxx * hxx + 2.0 * hxy * hxy + hyy * hyy;
  });
}

// -- consistency functional and jumps -----------------------------------------

double consistency_functional(const FeSpace& space, const CellField& v_h,
                              const VectorField& g)
{
  const Mesh& mesh = space.mesh();
  const Quadrature& quad = space.quadrature();
  const double jac = 0.25 * mesh.hx * mesh.hy;
  return sum_over_cells(mesh.cell_count(), [&](Index c) {
    double acc = 0.0;
    for (int q = 0; q < quad.size(); ++q)
    {
      const auto p = mesh.map_to_physical(c, quad.x[q], quad.y[q]);
      const double v = v_h.value(c, quad.x[q], quad.y[q]);
      const auto grad = v_h.gradient(c, quad.x[q], quad.y[q]);
      acc += quad.w[q] * (v * g.divergence(p[0], p[1]) + g.x(p[0], p[1]) * grad[0] +
                          g.y(p[0], p[1]) * grad[1]);
    }
    return acc * jac;
  });
}

namespace
{

// Applies fn(face, q, jump, physical point, weight) over all face
// quadrature points; weight includes the edge Jacobian.
template <typename FaceFn>
void for_each_face_point(const FeSpace& space, const CellField& v_h, FaceFn&& fn)
{
  const Mesh& mesh = space.mesh();
  const GaussRule& rule = space.edge_rule();
  for (Index face = 0; face < mesh.face_count(); ++face)
  {
    const auto traces = face_traces(mesh, face);
    const double half = 0.5 * mesh.face_length(face);
    const auto center = mesh.face_center(face);
    const bool horizontal = mesh.faces[face].orientation == FaceOrientation::Horizontal;
    for (int q = 0; q < rule.size(); ++q)
    {
      const double t = rule.points[q];
      const auto p0 = edge_reference_point(traces[0].edge, t);
      double jump = v_h.value(traces[0].cell, p0[0], p0[1]);
      if (traces[1].cell >= 0)
      {
        const auto p1 = edge_reference_point(traces[1].edge, t);
        jump -= v_h.value(traces[1].cell, p1[0], p1[1]);
      }
      const std::array<double, 2> phys =
          horizontal ? std::array<double, 2>{center[0] + t * half, center[1]}
                     : std::array<double, 2>{center[0], center[1] + t * half};
      fn(face, jump, phys, rule.weights[q] * half);
    }
  }
}

}  // namespace

double consistency_functional_faces(const FeSpace& space, const CellField& v_h,
                                    const VectorField& g)
{
  double total = 0.0;
  for_each_face_point(space, v_h,
                      [&](Index face, double jump, const std::array<double, 2>& p, double w) {
                        const auto n = space.mesh().face_normal_first(face);
                        const double gn = g.x(p[0], p[1]) * n[0] + g.y(p[0], p[1]) * n[1];
                        total += w * jump * gn;
                      });
  return total;
}

double jump_seminorm(const FeSpace& space, const CellField& v_h)
{
  double total = 0.0;
  for_each_face_point(space, v_h,
                      [&](Index, double jump, const std::array<double, 2>&, double w) {
                        total += w * jump * jump;
                      });
  return std::sqrt(total / space.mesh().h());
}

double mixed_derivative_check(const FeSpace& space, const CellField& v_h)
{
  const Index ncells = space.mesh().cell_count();
  const Quadrature& quad = space.quadrature();
  std::vector<double> partial(ncells);
  parallel_for(static_cast<std::size_t>(ncells), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c)
    {
      double m = 0.0;
      for (int q = 0; q < quad.size(); ++q)
        m = std::max(m, std::abs(v_h.mixed_derivative(static_cast<Index>(c), quad.x[q], quad.y[q])));
      partial[c] = m;
    }
  });
  double worst = 0.0;
  for (Index c = 0; c < ncells; ++c)
    worst = std::max(worst, partial[c]);
  return worst;
}

// -- errors against a nested reference ----------------------------------------

FieldErrors compute_errors(const FeSpace& coarse_space, const DiscreteField& coarse,
                           const FeSpace& reference_space, const DiscreteField& reference)
{
  coarse_space.check_field(coarse);
  reference_space.check_field(reference);
  const std::vector<Index> cell_map = refine_map(coarse_space.mesh(), reference_space.mesh());

  const Mesh& fmesh = reference_space.mesh();
  const Quadrature& quad = reference_space.quadrature();
  const int nlf = reference_space.local_size();
  const int nlc = coarse_space.local_size();
  const double jac = 0.25 * fmesh.hx * fmesh.hy;
  const double fsx = 2.0 / fmesh.hx, fsy = 2.0 / fmesh.hy;
  const double csx = 2.0 / coarse_space.mesh().hx, csy = 2.0 / coarse_space.mesh().hy;

  // Per-cell moments: ip, |uc|^2, |ur|^2, (guc, gur), |guc|^2, |gur|^2.
  struct Moments
  {
    double ip, cc, rr, gcr, gcc, grr;
  };
  std::vector<Moments> partial(fmesh.cell_count());
  parallel_for(static_cast<std::size_t>(fmesh.cell_count()),
               [&](std::size_t begin, std::size_t end) {
                 std::array<double, 9> lref{}, lco{};
                 for (std::size_t fc = begin; fc < end; ++fc)
                 {
                   const Index cc_id = cell_map[fc];
                   reference_space.gather(reference, static_cast<Index>(fc),
                                          std::span<double>(lref.data(), nlf));
                   coarse_space.gather(coarse, cc_id, std::span<double>(lco.data(), nlc));
                   Moments m{0, 0, 0, 0, 0, 0};
                   for (int q = 0; q < quad.size(); ++q)
                   {
                     const double* val = &reference_space.tab_values()[static_cast<std::size_t>(q) * nlf];
                     const double* dx = &reference_space.tab_dx()[static_cast<std::size_t>(q) * nlf];
                     const double* dy = &reference_space.tab_dy()[static_cast<std::size_t>(q) * nlf];
                     double ur = 0.0, urx = 0.0, ury = 0.0;
                     for (int i = 0; i < nlf; ++i)
                     {
                       ur += lref[i] * val[i];
                       urx += lref[i] * dx[i];
                       ury += lref[i] * dy[i];
                     }
                     urx *= fsx;
                     ury *= fsy;

                     const auto p = fmesh.map_to_physical(static_cast<Index>(fc), quad.x[q], quad.y[q]);
                     const auto rc = coarse_space.mesh().map_to_reference(cc_id, p[0], p[1]);
                     double uc = 0.0, ucx = 0.0, ucy = 0.0;
                     for (int i = 0; i < nlc; ++i)
                     {
                       uc += lco[i] * coarse_space.basis().value(i, rc[0], rc[1]);
                       const auto gb = coarse_space.basis().gradient(i, rc[0], rc[1]);
                       ucx += lco[i] * gb[0];
                       ucy += lco[i] * gb[1];
                     }
                     ucx *= csx;
                     ucy *= csy;

                     const double w = quad.w[q];
                     m.ip += w * uc * ur;
                     m.cc += w * uc * uc;
                     m.rr += w * ur * ur;
                     m.gcr += w * (ucx * urx + ucy * ury);
                     m.gcc += w * (ucx * ucx + ucy * ucy);
                     m.grr += w * (urx * urx + ury * ury);
                   }
                   partial[fc] = m;
                 }
               });

  Moments total{0, 0, 0, 0, 0, 0};
  for (const auto& m : partial)
  {
    total.ip += m.ip;
    total.cc += m.cc;
    total.rr += m.rr;
    total.gcr += m.gcr;
    total.gcc += m.gcc;
    total.grr += m.grr;
  }
  const double sign = total.ip >= 0.0 ? 1.0 : -1.0;
  const double l2sq = jac * (total.cc - 2.0 * sign * total.ip + total.rr);
  const double h1semisq = jac * (total.gcc - 2.0 * sign * total.gcr + total.grr);
  FieldErrors err;
  err.l2 = std::sqrt(std::max(0.0, l2sq));
  err.h1 = std::sqrt(std::max(0.0, l2sq + h1semisq));
  return err;
}

FieldErrors compute_errors(const FeSpace& coarse_space, const GroundState& coarse,
                           const FeSpace& reference_space, const GroundState& reference)
{
  return compute_errors(coarse_space, coarse.u, reference_space, reference.u);
}

double nested_gradient_defect(const FeSpace& fine_space, const DiscreteField& a,
                              const FeSpace& coarse_space, const DiscreteField& b,
                              const DiscreteField& c)
{
  fine_space.check_field(a);
  coarse_space.check_field(b);
  coarse_space.check_field(c);
  const std::vector<Index> cell_map = refine_map(coarse_space.mesh(), fine_space.mesh());

  const Mesh& fmesh = fine_space.mesh();
  const Quadrature& quad = fine_space.quadrature();
  const int nlf = fine_space.local_size();
  const int nlc = coarse_space.local_size();
  const double jac = 0.25 * fmesh.hx * fmesh.hy;
  const double fsx = 2.0 / fmesh.hx, fsy = 2.0 / fmesh.hy;
  const double csx = 2.0 / coarse_space.mesh().hx, csy = 2.0 / coarse_space.mesh().hy;

  return jac * sum_over_cells(fmesh.cell_count(), [&](Index fc) {
    std::array<double, 9> la{}, lb{}, lc{};
    fine_space.gather(a, fc, std::span<double>(la.data(), nlf));
    const Index cc_id = cell_map[fc];
    coarse_space.gather(b, cc_id, std::span<double>(lb.data(), nlc));
    coarse_space.gather(c, cc_id, std::span<double>(lc.data(), nlc));
    double acc = 0.0;
    for (int q = 0; q < quad.size(); ++q)
    {
      const double* dx = &fine_space.tab_dx()[static_cast<std::size_t>(q) * nlf];
      const double* dy = &fine_space.tab_dy()[static_cast<std::size_t>(q) * nlf];
      double ax = 0.0, ay = 0.0;
      for (int i = 0; i < nlf; ++i)
      {
        ax += la[i] * dx[i];
        ay += la[i] * dy[i];
      }
      ax *= fsx;
      ay *= fsy;

      const auto p = fmesh.map_to_physical(fc, quad.x[q], quad.y[q]);
      const auto rc = coarse_space.mesh().map_to_reference(cc_id, p[0], p[1]);
      double bx = 0.0, by = 0.0, cx = 0.0, cy = 0.0;
      for (int i = 0; i < nlc; ++i)
      {
        const auto gb = coarse_space.basis().gradient(i, rc[0], rc[1]);
        bx += lb[i] * gb[0];
        by += lb[i] * gb[1];
        cx += lc[i] * gb[0];
        cy += lc[i] * gb[1];
      }
      bx *= csx;
      by *= csy;
      cx *= csx;
      cy *= csy;
      acc += quad.w[q] * ((ax - bx) * cx + (ay - by) * cy);
    }
    return acc;
  });
}

std::optional<double> eoc(double error_coarse, double error_fine)
{
  if (error_coarse <= 0.0 || error_fine <= 0.0)
    return std::nullopt;
  return std::log2(error_coarse / error_fine);
}

LowerBoundReport lower_bound_check(const std::vector<double>& nonconforming_energies,
                                   double conforming_fine_energy)
{
  LowerBoundReport report;
  report.below.reserve(nonconforming_energies.size());
  report.margins.reserve(nonconforming_energies.size());
  report.all_below = true;
  for (double e : nonconforming_energies)
  {
    const double margin = conforming_fine_energy - e;
    report.margins.push_back(margin);
    report.below.push_back(margin >= 0.0);
    if (margin < 0.0)
      report.all_below = false;
  }
  for (int i = static_cast<int>(report.below.size()) - 1; i >= 0; --i)
  {
    if (!report.below[i])
      break;
    report.threshold_index = i;
  }
  report.monotone_nondecreasing = true;
  report.min_step_increase = std::numeric_limits<double>::infinity();
  if (nonconforming_energies.size() < 2)
    report.min_step_increase = 0.0;
  for (std::size_t i = 1; i < nonconforming_energies.size(); ++i)
  {
    const double step = nonconforming_energies[i] - nonconforming_energies[i - 1];
    report.min_step_increase = std::min(report.min_step_increase, step);
    if (step < -1e-10)
      report.monotone_nondecreasing = false;
  }
  return report;
}

}  // namespace becfem
