#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "brls/linop.hpp"

namespace brls {

/// The normal matrix A^T A + lambda I could not be factorized.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CgConfig {
  int max_iterations = 100;
  /// Stop once ||A^T(d - Ax) - lambda x|| / ||A^T d|| drops below this.
  double tolerance = 1e-6;
  /// Tikhonov weight on ||x||^2.
  double lambda = 0.0;
  /// Optional diagonal model-space preconditioner D (x = D z). With a
  /// preconditioner, lambda penalizes ||z||^2. Entries must be nonzero.
  std::optional<Vector> diagonal_preconditioner;

  /// Throws std::invalid_argument on non-positive tolerance, max_iterations < 1
  /// or negative lambda.
  void validate() const;
};

struct CgReport {
  int iterations_run = 0;
  /// Relative normal-equation residual, initial value first.
  std::vector<double> normal_residual_history;
  /// ||Ax - d||^2 + lambda ||x||^2 per iterate, initial value first.
  std::vector<double> objective_history;
  bool converged = false;
};

struct CgResult {
  Vector x;
  CgReport report;
};

/**
 * CGLS for min ||A x - d||^2 + lambda ||x||^2, using only forward and
 * adjoint applications of A.
 *
 * `x0` defaults to zero. `reference_norm`, when given, replaces ||A^T d|| as
 * the denominator of the stopping test; a correction solve against a data
 * residual uses it to keep the tolerance relative to the full data.
 * Throws NumericalError on non-finite d or x0 and DimensionError on size
 * mismatch.
 */
CgResult cgls(const LinearOperator& op, const Vector& d, const CgConfig& config,
              const std::optional<Vector>& x0 = std::nullopt,
              std::optional<double> reference_norm = std::nullopt);

/// (A^T A + lambda I)^{-1} A^T d by dense Cholesky. Oracle for small systems.
/// Throws SingularSystemError when the normal matrix is not positive definite.
Vector closed_form_ls(const DenseOperator& op, const Vector& d, double lambda);

}  // namespace brls
