#include "becfem/elements.hpp"

#include <cstring>
#include <stdexcept>

#include <Eigen/Dense>

namespace becfem
{

namespace
{

// Structural identity: two spaces built from the same parameters are the
// same space, so fields may flow between equal rebuilds.
std::uint64_t space_hash(const Mesh& mesh, ElementKind kind, int quad_order,
                         const SpaceOptions& options)
{
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  auto mix_double = [&](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    mix(bits);
  };
  mix(static_cast<std::uint64_t>(kind));
  mix(static_cast<std::uint64_t>(mesh.nx));
  mix(static_cast<std::uint64_t>(mesh.ny));
  mix_double(mesh.domain.xmin);
  mix_double(mesh.domain.xmax);
  mix_double(mesh.domain.ymin);
  mix_double(mesh.domain.ymax);
  mix(static_cast<std::uint64_t>(quad_order));
  mix(options.constrain_boundary ? 1 : 2);
  mix_double(options.basis_perturbation);
  return h;
}

// 1D quadratic Lagrange basis on {-1, 0, 1} and its derivatives.
inline double lag(int a, double t)
{
  switch (a)
  {
    case 0: return 0.5 * t * (t - 1.0);
    case 1: return 1.0 - t * t;
    default: return 0.5 * t * (t + 1.0);
  }
}

inline double dlag(int a, double t)
{
  switch (a)
  {
    case 0: return t - 0.5;
    case 1: return -2.0 * t;
    default: return t + 0.5;
  }
}

}  // namespace

ReferenceBasis::ReferenceBasis(ElementKind kind, double debug_perturbation) : kind_(kind)
{
  if (kind_ != ElementKind::EQ1Rot)
    return;

  // Moment matrix of {1, x, y, x^2, y^2} against the five averaging
  // functionals: mean over the bottom, right, top, left edge, cell mean.
  Eigen::Matrix<double, 5, 5> moments;
  moments << 1, 0, -1, 1.0 / 3.0, 1,          // y = -1
      1, 1, 0, 1, 1.0 / 3.0,                  // x = +1
      1, 0, 1, 1.0 / 3.0, 1,                  // y = +1
      1, -1, 0, 1, 1.0 / 3.0,                 // x = -1
      1, 0, 0, 1.0 / 3.0, 1.0 / 3.0;          // cell

  const Eigen::Matrix<double, 5, 5> coeffs =
      moments.fullPivLu().solve(Eigen::Matrix<double, 5, 5>::Identity());
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k)
      coeff_[i][k] = coeffs(k, i);

  if (debug_perturbation != 0.0)
    coeff_[0][3] += debug_perturbation;
}

double ReferenceBasis::value(int i, double x, double y) const
{
  if (kind_ == ElementKind::EQ1Rot)
  {
    const auto& c = coeff_[i];
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * y * y;
  }
  return lag(i % 3, x) * lag(i / 3, y);
}

std::array<double, 2> ReferenceBasis::gradient(int i, double x, double y) const
{
  if (kind_ == ElementKind::EQ1Rot)
  {
    const auto& c = coeff_[i];
    return {c[1] + 2.0 * c[3] * x, c[2] + 2.0 * c[4] * y};
  }
  return {dlag(i % 3, x) * lag(i / 3, y), lag(i % 3, x) * dlag(i / 3, y)};
}

double ReferenceBasis::mixed_xy(int i, double x, double y) const
{
  if (kind_ == ElementKind::EQ1Rot)
    return 0.0;  // no xy monomial in span{1, x, y, x^2, y^2}
  return dlag(i % 3, x) * dlag(i / 3, y);
}

std::array<double, 3> ReferenceBasis::second_derivatives(int i, double x, double y) const
{
  if (kind_ == ElementKind::EQ1Rot)
  {
    const auto& c = coeff_[i];
    return {2.0 * c[3], 0.0, 2.0 * c[4]};
  }
  auto ddlag = [](int a) { return a == 1 ? -2.0 : 1.0; };
  const int a = i % 3, b = i / 3;
  return {ddlag(a) * lag(b, y), dlag(a, x) * dlag(b, y), lag(a, x) * ddlag(b)};
}

FeSpace::FeSpace(Mesh mesh, ElementKind kind, int quad_order, SpaceOptions options)
    : mesh_(std::move(mesh)),
      kind_(kind),
      quad_(Quadrature::tensor(quad_order)),
      edge_rule_(gauss_legendre(quad_order)),
      basis_(kind, options.basis_perturbation),
      id_(space_hash(mesh_, kind, quad_order, options))
{
  const Index nc = mesh_.cell_count();
  const int nl = local_size();
  dof_map_.resize(static_cast<std::size_t>(nc) * nl);
  std::vector<char> masked;

  if (kind_ == ElementKind::EQ1Rot)
  {
    total_dofs_ = mesh_.face_count() + nc;
    masked.assign(total_dofs_, 0);
    for (Index c = 0; c < nc; ++c)
    {
      const Index i = mesh_.cells[c][0];
      const Index j = mesh_.cells[c][1];
      Index* dofs = &dof_map_[static_cast<std::size_t>(c) * nl];
      dofs[0] = mesh_.horizontal_face_id(i, j);      // bottom
      dofs[1] = mesh_.vertical_face_id(i + 1, j);    // right
      dofs[2] = mesh_.horizontal_face_id(i, j + 1);  // top
      dofs[3] = mesh_.vertical_face_id(i, j);        // left
      dofs[4] = mesh_.face_count() + c;              // cell mean
    }
    if (options.constrain_boundary)
      for (Index f = 0; f < mesh_.face_count(); ++f)
        if (mesh_.faces[f].is_boundary())
          masked[f] = 1;
  }
  else
  {
    const Index nnx = 2 * mesh_.nx + 1;
    const Index nny = 2 * mesh_.ny + 1;
    total_dofs_ = nnx * nny;
    masked.assign(total_dofs_, 0);
    for (Index c = 0; c < nc; ++c)
    {
      const Index i = mesh_.cells[c][0];
      const Index j = mesh_.cells[c][1];
      Index* dofs = &dof_map_[static_cast<std::size_t>(c) * nl];
      for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 3; ++a)
          dofs[b * 3 + a] = (2 * j + b) * nnx + (2 * i + a);
    }
    if (options.constrain_boundary)
      for (Index iy = 0; iy < nny; ++iy)
        for (Index ix = 0; ix < nnx; ++ix)
          if (ix == 0 || ix == nnx - 1 || iy == 0 || iy == nny - 1)
            masked[iy * nnx + ix] = 1;
  }

  global_to_free_.assign(total_dofs_, -1);
  for (Index g = 0; g < total_dofs_; ++g)
  {
    if (!masked[g])
    {
      global_to_free_[g] = static_cast<Index>(free_to_global_.size());
      free_to_global_.push_back(g);
    }
  }

  // Tabulate shape values and reference gradients at the quadrature points.
  const int nq = quad_.size();
  tab_val_.resize(static_cast<std::size_t>(nq) * nl);
  tab_dx_.resize(static_cast<std::size_t>(nq) * nl);
  tab_dy_.resize(static_cast<std::size_t>(nq) * nl);
  for (int q = 0; q < nq; ++q)
  {
    for (int i = 0; i < nl; ++i)
    {
      tab_val_[static_cast<std::size_t>(q) * nl + i] = basis_.value(i, quad_.x[q], quad_.y[q]);
      const auto g = basis_.gradient(i, quad_.x[q], quad_.y[q]);
      tab_dx_[static_cast<std::size_t>(q) * nl + i] = g[0];
      tab_dy_[static_cast<std::size_t>(q) * nl + i] = g[1];
    }
  }
  for (int e = 0; e < 4; ++e)
  {
    tab_edge_[e].resize(static_cast<std::size_t>(edge_rule_.size()) * nl);
    for (int q = 0; q < edge_rule_.size(); ++q)
    {
      const auto p = edge_point(e, q);
      for (int i = 0; i < nl; ++i)
        tab_edge_[e][static_cast<std::size_t>(q) * nl + i] = basis_.value(i, p[0], p[1]);
    }
  }
}

std::array<double, 2> FeSpace::edge_point(int edge, int q) const
{
  const double t = edge_rule_.points[q];
  switch (edge)
  {
    case 0: return {t, -1.0};
    case 1: return {1.0, t};
    case 2: return {t, 1.0};
    default: return {-1.0, t};
  }
}

void FeSpace::gather(const DiscreteField& f, Index cell, std::span<double> local) const
{
  const int nl = local_size();
  for (int i = 0; i < nl; ++i)
  {
    const Index fr = global_to_free_[cell_dof(cell, i)];
    local[i] = fr >= 0 ? f.coeffs[fr] : 0.0;
  }
}

void FeSpace::check_field(const DiscreteField& f) const
{
  if (f.space_id != id_ || f.coeffs.size() != free_to_global_.size())
    throw std::invalid_argument("field does not belong to this space");
}

FeSpace build_space(const Mesh& mesh, ElementKind kind, int quad_order)
{
  if (quad_order < 1)
    throw std::invalid_argument("build_space: quadrature order must be positive");
  return FeSpace(mesh, kind, quad_order);
}

EvalResult eval_field(const FeSpace& space, const DiscreteField& f, Index cell,
                      std::span<const std::array<double, 2>> ref_points)
{
  space.check_field(f);
  if (cell < 0 || cell >= space.mesh().cell_count())
    throw std::invalid_argument("eval_field: cell index out of range");

  const int nl = space.local_size();
  std::vector<double> local(nl);
  space.gather(f, cell, local);

  const double sx = 2.0 / space.mesh().hx;
  const double sy = 2.0 / space.mesh().hy;
  EvalResult out;
  out.values.reserve(ref_points.size());
  out.gradients.reserve(ref_points.size());
  for (const auto& p : ref_points)
  {
    double v = 0.0, gx = 0.0, gy = 0.0;
    for (int i = 0; i < nl; ++i)
    {
      v += local[i] * space.basis().value(i, p[0], p[1]);
      const auto g = space.basis().gradient(i, p[0], p[1]);
      gx += local[i] * g[0];
      gy += local[i] * g[1];
    }
    out.values.push_back(v);
    out.gradients.push_back({gx * sx, gy * sy});
  }
  return out;
}

}  // namespace becfem
