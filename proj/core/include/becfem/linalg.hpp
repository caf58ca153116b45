#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "becfem/sparse.hpp"

namespace becfem
{

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
/// y += alpha * x
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);
void scale(double alpha, std::vector<double>& x);

enum class SolverStrategy
{
  DirectCholesky,
  PcgJacobi
};

struct SolverConfig
{
  SolverStrategy strategy = SolverStrategy::DirectCholesky;
  double tolerance = 1e-13;  // relative residual for PCG
  int max_iterations = 50000;

  /// Direct Cholesky while the factorization stays cheap, PCG beyond.
  static SolverConfig default_for(Index n);
};

struct SolverFailure : std::runtime_error
{
  SolverFailure(const std::string& what, double residual_)
      : std::runtime_error(what), residual(residual_)
  {
  }
  double residual;
};

struct NotPositiveDefinite : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Solver for symmetric positive definite systems. Holds the symbolic
/// analysis so that repeated solves with matrices sharing one pattern only
/// redo the numeric factorization. Solves are deterministic: fixed
/// iteration order, serial reductions.
class SpdSolver
{
public:
  SpdSolver(const SparseMatrix& A, SolverConfig config);
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  /// Replace the matrix values (same pattern) and refactorize if direct.
  void update_values(const SparseMatrix& A);

  std::vector<double> solve(const std::vector<double>& b) const;
  std::vector<double> solve(const std::vector<double>& b,
                            const std::vector<double>& initial_guess) const;

  const SolverConfig& config() const { return config_; }

private:
  struct Impl;
  SolverConfig config_;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper.
std::vector<double> solve_spd(const SparseMatrix& A, const std::vector<double>& b,
                              const SolverConfig& config);

}  // namespace becfem
