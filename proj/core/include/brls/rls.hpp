#pragma once

#include <Eigen/Core>

#include "brls/linop.hpp"

namespace brls {

/// Explicit recursive least-squares state for small dense problems.
struct RlsState {
  /// Inverse of the accumulated normal matrix, sum_i A_i^T A_i + lambda I.
  Eigen::MatrixXd p_matrix;
  Vector estimate;
  Index samples_seen = 0;
};

/// Batch start: P = (A0^T A0 + lambda I)^{-1}, estimate = P A0^T d0.
/// Throws SingularSystemError if the normal matrix cannot be inverted.
RlsState rls_init(const DenseOperator& a0, const Vector& d0, double lambda);

/**
 * Append the rows (a1, d1). The new P is formed literally as
 * (P^{-1} + A1^T A1)^{-1} and the estimate moves along the gain P1 A1^T
 * applied to the innovation d1 - A1 m0.
 */
RlsState rls_update_block(const RlsState& state, const DenseOperator& a1, const Vector& d1);

/// Single-row update by the Sherman-Morrison identity; no matrix inversion.
/// Throws NumericalError when 1 + a^T P a is not safely positive.
RlsState rls_update_rank1_mil(const RlsState& state, const Vector& a_row, double d_point);

}  // namespace brls
