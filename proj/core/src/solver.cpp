#include "brls/solver.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

namespace brls {

namespace {

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

void CgConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("cg: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("cg: tolerance must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("cg: lambda must be finite and >= 0");
  if (diagonal_preconditioner) {
    const Vector& p = *diagonal_preconditioner;
    if (!p.allFinite() || (p.array() == 0.0).any())
      throw std::invalid_argument("cg: preconditioner entries must be finite and nonzero");
  }
}

CgResult cgls(const LinearOperator& op, const Vector& d, const CgConfig& config,
              const std::optional<Vector>& x0, std::optional<double> reference_norm) {
  config.validate();
  if (d.size() != op.data_dim()) {
    std::ostringstream msg;
    msg << "cgls: data has length " << d.size() << ", operator data_dim is " << op.data_dim();
    throw DimensionError(msg.str());
  }
  if (!all_finite(d)) throw NumericalError("cgls: data contains non-finite values");
  if (x0) {
    if (x0->size() != op.model_dim()) {
      std::ostringstream msg;
      msg << "cgls: x0 has length " << x0->size() << ", operator model_dim is "
          << op.model_dim();
      throw DimensionError(msg.str());
    }
    if (!all_finite(*x0)) throw NumericalError("cgls: x0 contains non-finite values");
  }

  const Index m = op.model_dim();
  const double lambda = config.lambda;
  const bool preconditioned = config.diagonal_preconditioner.has_value();
  const Vector* diag = preconditioned ? &*config.diagonal_preconditioner : nullptr;
  if (diag && diag->size() != m) throw DimensionError("cgls: preconditioner length != model_dim");

  // Iterate on z with x = D z.
  Vector z = x0 ? *x0 : Vector::Zero(m);
  if (diag) z = z.cwiseQuotient(*diag);
  auto to_model = [&](const Vector& v) -> Vector { return diag ? Vector(v.cwiseProduct(*diag)) : v; };

  Vector x = to_model(z);
  Vector r = d - op.apply_forward(x);
  Vector grad(m);
  auto normal_residual = [&]() {
    op.adjoint(r, grad);
    if (diag) grad = grad.cwiseProduct(*diag);
    grad -= lambda * z;
  };
  normal_residual();

  double ref = 0.0;
  if (reference_norm) {
    ref = *reference_norm;
  } else {
    Vector atd = op.apply_adjoint(d);
    if (diag) atd = atd.cwiseProduct(*diag);
    ref = atd.norm();
  }
  if (!(ref > 0.0)) ref = grad.norm();

  CgResult result;
  CgReport& report = result.report;
  auto objective = [&]() { return r.squaredNorm() + lambda * z.squaredNorm(); };

  double gamma = grad.squaredNorm();
  if (ref == 0.0) {
    // Zero right-hand side and a stationary start: nothing to do.
    report.normal_residual_history.push_back(0.0);
    report.objective_history.push_back(objective());
    report.converged = true;
    result.x = std::move(x);
    return result;
  }

  report.normal_residual_history.push_back(std::sqrt(gamma) / ref);
  report.objective_history.push_back(objective());
  if (report.normal_residual_history.back() < config.tolerance) {
    report.converged = true;
    result.x = std::move(x);
    return result;
  }

  Vector p = grad;
  Vector q(op.data_dim());
  for (int it = 0; it < config.max_iterations; ++it) {
    op.forward(to_model(p), q);
    const double delta = q.squaredNorm() + lambda * p.squaredNorm();
    if (!(delta > 0.0) || !std::isfinite(delta)) break;
    const double alpha = gamma / delta;
    z += alpha * p;
    r -= alpha * q;
    normal_residual();
    const double gamma_next = grad.squaredNorm();
    if (!std::isfinite(gamma_next)) throw NumericalError("cgls: iteration produced non-finite values");

    ++report.iterations_run;
    report.normal_residual_history.push_back(std::sqrt(gamma_next) / ref);
    report.objective_history.push_back(objective());
    if (report.normal_residual_history.back() < config.tolerance) {
      report.converged = true;
      break;
    }
    p = grad + (gamma_next / gamma) * p;
    gamma = gamma_next;
  }

  result.x = to_model(z);
  return result;
}

Vector closed_form_ls(const DenseOperator& op, const Vector& d, double lambda) {
  if (d.size() != op.data_dim()) throw DimensionError("closed_form_ls: data length != data_dim");
  if (!(lambda >= 0.0)) throw std::invalid_argument("closed_form_ls: lambda must be >= 0");
  const auto& a = op.entries();
  Eigen::MatrixXd normal = a.transpose() * a;
  normal.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success)
    throw SingularSystemError("closed_form_ls: normal matrix is singular; retry with lambda > 0");
  // LLT succeeds on numerically singular PSD matrices with a tiny pivot.
  const double max_diag = normal.diagonal().maxCoeff();
  const double min_pivot = llt.matrixL().toDenseMatrix().diagonal().minCoeff();
  if (!(min_pivot * min_pivot > 1e-14 * max_diag))
    throw SingularSystemError("closed_form_ls: normal matrix is singular; retry with lambda > 0");
  return llt.solve(a.transpose() * d);
}

}  // namespace brls
