#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace brls {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using VectorRef = Eigen::Ref<Vector>;
using ConstVectorRef = Eigen::Ref<const Vector>;

/// Raised when a vector does not match the space an operator acts on.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for NaN/Inf input or any other numerically unusable state.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * A real linear map A from model space (length model_dim) to data space
 * (length data_dim), together with its adjoint.
 *
 * Implementations override the unchecked kernels `forward` and `adjoint`,
 * which overwrite `out`. Operators are immutable after construction and may
 * be applied from several threads at once.
 */
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index model_dim() const = 0;
  virtual Index data_dim() const = 0;

  /// out = A * in. `in` has model_dim entries, `out` has data_dim entries.
  virtual void forward(ConstVectorRef in, VectorRef out) const = 0;
  /// out = A^T * in.
  virtual void adjoint(ConstVectorRef in, VectorRef out) const = 0;

  /// Checked A * m.
  Vector apply_forward(const Vector& m) const;
  /// Checked A^T * d.
  Vector apply_adjoint(const Vector& d) const;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

class IdentityOperator final : public LinearOperator {
 public:
  explicit IdentityOperator(Index n);

  Index model_dim() const override { return n_; }
  Index data_dim() const override { return n_; }
  void forward(ConstVectorRef in, VectorRef out) const override { out = in; }
  void adjoint(ConstVectorRef in, VectorRef out) const override { out = in; }

 private:
  Index n_;
};

/// Explicit N x M matrix, row-major.
class DenseOperator final : public LinearOperator {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  explicit DenseOperator(Matrix entries);

  Index model_dim() const override { return entries_.cols(); }
  Index data_dim() const override { return entries_.rows(); }
  void forward(ConstVectorRef in, VectorRef out) const override;
  void adjoint(ConstVectorRef in, VectorRef out) const override;

  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

/// Rows of several operators sharing one model space, stacked in order.
class StackedOperator final : public LinearOperator {
 public:
  explicit StackedOperator(std::vector<OperatorPtr> blocks);

  Index model_dim() const override { return model_dim_; }
  Index data_dim() const override { return offsets_.back(); }
  void forward(ConstVectorRef in, VectorRef out) const override;
  /// Block adjoints are summed in block order, so the result is reproducible.
  void adjoint(ConstVectorRef in, VectorRef out) const override;

  const std::vector<OperatorPtr>& blocks() const { return blocks_; }
  /// First data row of block i; offsets()[size] is the total data_dim.
  const std::vector<Index>& offsets() const { return offsets_; }

 private:
  std::vector<OperatorPtr> blocks_;
  std::vector<Index> offsets_;
  Index model_dim_ = 0;
};

/// Stack the rows of `ops` into one operator. Throws DimensionError on an
/// empty list or when model dimensions disagree.
std::shared_ptr<const StackedOperator> stack_rows(std::vector<OperatorPtr> ops);

/// Wraps an operator and flips the sign of the first adjoint input entry.
/// Only useful to check that dot_test catches a broken adjoint.
OperatorPtr with_corrupted_adjoint(OperatorPtr op);

struct DotTestResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error = 0.0;
};

/**
 * Adjoint check <A x, y> against <x, A^T y>.
 *
 * x and y are drawn from std::mt19937_64 seeded with `seed`: x first
 * (model_dim draws), then y (data_dim draws). Each 64-bit draw u maps to
 * (u >> 11) * 2^-53 * 2 - 1, uniform on [-1, 1). The relative error is
 * |lhs - rhs| / max(|lhs|, |rhs|, DBL_MIN).
 */
DotTestResult dot_test(const LinearOperator& op, std::uint64_t seed);

/// Fill a vector with the dot_test draw sequence for `seed`.
Vector uniform_vector(Index n, std::uint64_t seed);

}  // namespace brls
