#include "becfem/linalg.hpp"

#include <cassert>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace becfem
{

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& a)
{
  return std::sqrt(dot(a, a));
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y)
{
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] += alpha * x[i];
}

void scale(double alpha, std::vector<double>& x)
{
  for (double& v : x)
    v *= alpha;
}

SolverConfig SolverConfig::default_for(Index n)
{
  SolverConfig cfg;
  cfg.strategy = n <= 2000000 ? SolverStrategy::DirectCholesky : SolverStrategy::PcgJacobi;
  return cfg;
}

namespace
{

using EigenSparse = Eigen::SparseMatrix<double>;

// A symmetric CSR matrix has identical arrays as CSC, so the copy into
// Eigen's column-major storage is a straight transfer.
EigenSparse to_eigen(const SparseMatrix& A)
{
  EigenSparse out(A.n, A.n);
  out.reserve(static_cast<Eigen::Index>(A.nonzeros()));
  std::copy(A.row_offsets.begin(), A.row_offsets.end(), out.outerIndexPtr());
  std::copy(A.cols.begin(), A.cols.end(), out.innerIndexPtr());
  std::copy(A.vals.begin(), A.vals.end(), out.valuePtr());
  out.resizeNonZeros(static_cast<Eigen::Index>(A.nonzeros()));
  return out;
}

}  // namespace

struct SpdSolver::Impl
{
  SparseMatrix matrix;  // kept for residual checks and PCG
  std::vector<double> inv_diag;
  std::unique_ptr<Eigen::SimplicialLLT<EigenSparse>> llt;
  bool analyzed = false;

  void factorize(const SparseMatrix& A)
  {
    matrix = A;
    if (!llt)
      llt = std::make_unique<Eigen::SimplicialLLT<EigenSparse>>();
    const EigenSparse es = to_eigen(A);
    if (!analyzed)
    {
      llt->analyzePattern(es);
      analyzed = true;
    }
    llt->factorize(es);
    if (llt->info() != Eigen::Success)
      throw NotPositiveDefinite("Cholesky factorization failed: matrix not SPD");
  }

  void prepare_pcg(const SparseMatrix& A)
  {
    matrix = A;
    inv_diag.assign(A.n, 0.0);
    for (Index r = 0; r < A.n; ++r)
    {
      const std::ptrdiff_t k = A.find(r, r);
      if (k < 0 || A.vals[k] <= 0.0)
        throw NotPositiveDefinite("PCG: nonpositive diagonal entry");
      inv_diag[r] = 1.0 / A.vals[k];
    }
  }
};

SpdSolver::SpdSolver(const SparseMatrix& A, SolverConfig config)
    : config_(config), impl_(std::make_unique<Impl>())
{
  update_values(A);
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

void SpdSolver::update_values(const SparseMatrix& A)
{
  if (config_.strategy == SolverStrategy::DirectCholesky)
    impl_->factorize(A);
  else
    impl_->prepare_pcg(A);
}

std::vector<double> SpdSolver::solve(const std::vector<double>& b) const
{
  return solve(b, std::vector<double>(b.size(), 0.0));
}

std::vector<double> SpdSolver::solve(const std::vector<double>& b,
                                     const std::vector<double>& initial_guess) const
{
  const SparseMatrix& A = impl_->matrix;
  assert(static_cast<Index>(b.size()) == A.n);
  const double bnorm = norm2(b);
  if (bnorm == 0.0)
    return std::vector<double>(b.size(), 0.0);

  if (config_.strategy == SolverStrategy::DirectCholesky)
  {
    const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = impl_->llt->solve(rhs);

    // One step of iterative refinement if the backsolve residual misses
    // the contract.
    std::vector<double> xv(x.data(), x.data() + x.size());
    std::vector<double> r = A.multiply(xv);
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = b[i] - r[i];
    if (norm2(r) > 1e-13 * bnorm)
    {
      const Eigen::Map<const Eigen::VectorXd> rm(r.data(), static_cast<Eigen::Index>(r.size()));
      const Eigen::VectorXd dx = impl_->llt->solve(rm);
      for (std::size_t i = 0; i < xv.size(); ++i)
        xv[i] += dx[i];
    }
    return xv;
  }

  // Preconditioned conjugate gradients with the Jacobi preconditioner.
  std::vector<double> x = initial_guess;
  std::vector<double> r = A.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = b[i] - r[i];
  std::vector<double> z(r.size()), p(r.size()), q(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    z[i] = impl_->inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double rnorm = norm2(r);
  const double target = config_.tolerance * bnorm;

#ifndef NDEBUG
  // The CG iterate minimizes the energy functional over a growing Krylov
  // space, so phi must be nonincreasing.
  auto phi = [&A, &b](const std::vector<double>& v) {
    return 0.5 * dot(v, A.multiply(v)) - dot(b, v);
  };
  double last_phi = phi(x);
#endif

  for (int it = 0; it < config_.max_iterations; ++it)
  {
    if (rnorm <= target)
      return x;
    A.multiply(p.data(), q.data());
    const double pq = dot(p, q);
    if (pq <= 0.0)
      throw NotPositiveDefinite("PCG: direction with nonpositive curvature");
    const double alpha = rz / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    for (std::size_t i = 0; i < r.size(); ++i)
      z[i] = impl_->inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = z[i] + beta * p[i];
    rnorm = norm2(r);
#ifndef NDEBUG
    const double cur_phi = phi(x);
    assert(cur_phi <= last_phi + 1e-12 * (1.0 + std::abs(last_phi)));
    last_phi = cur_phi;
#endif
  }
  if (rnorm <= target)
    return x;
  throw SolverFailure("PCG did not reach the requested tolerance", rnorm / bnorm);
}

std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              const SolverConfig& config)
{
  return SpdSolver(A, config).solve(b);
}

}  // namespace becfem
