#include "brls/rls.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "brls/solver.hpp"

namespace brls {

namespace {

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& a, const char* where) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  const double max_diag = a.diagonal().cwiseAbs().maxCoeff();
  if (llt.info() != Eigen::Success ||
      !(llt.matrixLLT().diagonal().cwiseAbs2().minCoeff() > 1e-14 * max_diag)) {
    std::ostringstream msg;
    msg << where << ": normal matrix is singular; supply lambda > 0 or more rows";
    throw SingularSystemError(msg.str());
  }
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  return 0.5 * (inv + inv.transpose());
}

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* what) {
  if (!m.allFinite()) {
    std::ostringstream msg;
    msg << what << " contains non-finite values";
    throw NumericalError(msg.str());
  }
}

}  // namespace

RlsState rls_init(const DenseOperator& a0, const Vector& d0, double lambda) {
  if (d0.size() != a0.data_dim()) throw DimensionError("rls_init: data length != rows of A0");
  if (!(lambda >= 0.0)) throw std::invalid_argument("rls_init: lambda must be >= 0");
  require_finite(a0.entries(), "rls_init: A0");
  require_finite(d0, "rls_init: d0");

  const auto& a = a0.entries();
  Eigen::MatrixXd normal = a.transpose() * a;
  normal.diagonal().array() += lambda;

  RlsState state;
  state.p_matrix = spd_inverse(normal, "rls_init");
  state.estimate = state.p_matrix * (a.transpose() * d0);
  state.samples_seen = a.rows();
  return state;
}

RlsState rls_update_block(const RlsState& state, const DenseOperator& a1, const Vector& d1) {
  const Index m = state.estimate.size();
  if (a1.model_dim() != m) throw DimensionError("rls_update_block: A1 columns != model size");
  if (d1.size() != a1.data_dim()) throw DimensionError("rls_update_block: data length != rows of A1");
  require_finite(a1.entries(), "rls_update_block: A1");
  require_finite(d1, "rls_update_block: d1");

  const auto& a = a1.entries();
  const Eigen::MatrixXd information = spd_inverse(state.p_matrix, "rls_update_block") +
                                      Eigen::MatrixXd(a.transpose() * a);

  RlsState next;
  next.p_matrix = spd_inverse(information, "rls_update_block");
  const Vector innovation = d1 - a * state.estimate;
  next.estimate = state.estimate + next.p_matrix * (a.transpose() * innovation);
  next.samples_seen = state.samples_seen + a.rows();
  return next;
}

RlsState rls_update_rank1_mil(const RlsState& state, const Vector& a_row, double d_point) {
  const Index m = state.estimate.size();
  if (a_row.size() != m) throw DimensionError("rls_update_rank1_mil: row length != model size");
  if (!a_row.allFinite() || !std::isfinite(d_point))
    throw NumericalError("rls_update_rank1_mil: non-finite input");

  const Vector pa = state.p_matrix * a_row;
  const double denom = 1.0 + a_row.dot(pa);
  if (!(denom > DBL_EPSILON)) throw NumericalError("rls_update_rank1_mil: degenerate denominator 1 + a^T P a");

  RlsState next;
  next.p_matrix = state.p_matrix - (pa * pa.transpose()) / denom;
  // P_new a = P a / (1 + a^T P a)
  const Vector gain = pa / denom;
  next.estimate = state.estimate + gain * (d_point - a_row.dot(state.estimate));
  next.samples_seen = state.samples_seen + 1;
  return next;
}

}  // namespace brls
