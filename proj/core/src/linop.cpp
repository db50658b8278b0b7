#include "brls/linop.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <random>
#include <sstream>

namespace brls {

namespace {

void check_length(const char* what, Index expected, Index got) {
  if (expected != got) {
    std::ostringstream msg;
    msg << what << ": expected vector of length " << expected << ", got " << got;
    throw DimensionError(msg.str());
  }
}

double uniform_draw(std::mt19937_64& rng) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

class CorruptedAdjoint final : public LinearOperator {
 public:
  explicit CorruptedAdjoint(OperatorPtr inner) : inner_(std::move(inner)) {}

  Index model_dim() const override { return inner_->model_dim(); }
  Index data_dim() const override { return inner_->data_dim(); }
  void forward(ConstVectorRef in, VectorRef out) const override { inner_->forward(in, out); }
  void adjoint(ConstVectorRef in, VectorRef out) const override {
    Vector flipped = in;
    if (flipped.size() > 0) flipped[0] = -flipped[0];
    inner_->adjoint(flipped, out);
  }

 private:
  OperatorPtr inner_;
};

}  // namespace

Vector LinearOperator::apply_forward(const Vector& m) const {
  check_length("apply_forward", model_dim(), m.size());
  Vector d(data_dim());
  forward(m, d);
  return d;
}

Vector LinearOperator::apply_adjoint(const Vector& d) const {
  check_length("apply_adjoint", data_dim(), d.size());
  Vector m(model_dim());
  adjoint(d, m);
  return m;
}

IdentityOperator::IdentityOperator(Index n) : n_(n) {
  if (n <= 0) throw DimensionError("identity operator needs a positive dimension");
}

DenseOperator::DenseOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0)
    throw DimensionError("dense operator must have at least one row and one column");
}

void DenseOperator::forward(ConstVectorRef in, VectorRef out) const {
  out.noalias() = entries_ * in;
}

void DenseOperator::adjoint(ConstVectorRef in, VectorRef out) const {
  out.noalias() = entries_.transpose() * in;
}

StackedOperator::StackedOperator(std::vector<OperatorPtr> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DimensionError("stack_rows: empty operator list");
  model_dim_ = blocks_.front()->model_dim();
  offsets_.reserve(blocks_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (!blocks_[i]) throw DimensionError("stack_rows: null operator");
    if (blocks_[i]->model_dim() != model_dim_) {
      std::ostringstream msg;
      msg << "stack_rows: block " << i << " has model_dim " << blocks_[i]->model_dim()
          << ", expected " << model_dim_;
      throw DimensionError(msg.str());
    }
    offsets_.push_back(offsets_.back() + blocks_[i]->data_dim());
  }
}

void StackedOperator::forward(ConstVectorRef in, VectorRef out) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    blocks_[i]->forward(in, out.segment(offsets_[i], offsets_[i + 1] - offsets_[i]));
  }
}

void StackedOperator::adjoint(ConstVectorRef in, VectorRef out) const {
  out.setZero();
  Vector part(model_dim_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    blocks_[i]->adjoint(in.segment(offsets_[i], offsets_[i + 1] - offsets_[i]), part);
    out += part;
  }
}

std::shared_ptr<const StackedOperator> stack_rows(std::vector<OperatorPtr> ops) {
  return std::make_shared<const StackedOperator>(std::move(ops));
}

OperatorPtr with_corrupted_adjoint(OperatorPtr op) {
  return std::make_shared<const CorruptedAdjoint>(std::move(op));
}

Vector uniform_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = uniform_draw(rng);
  return v;
}

DotTestResult dot_test(const LinearOperator& op, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector x(op.model_dim());
  Vector y(op.data_dim());
  for (Index i = 0; i < x.size(); ++i) x[i] = uniform_draw(rng);
  for (Index i = 0; i < y.size(); ++i) y[i] = uniform_draw(rng);

  const Vector ax = op.apply_forward(x);
  const Vector aty = op.apply_adjoint(y);

  DotTestResult result;
  result.lhs = ax.dot(y);
  result.rhs = x.dot(aty);
  const double scale = std::max({std::abs(result.lhs), std::abs(result.rhs), DBL_MIN});
  result.relative_error = std::abs(result.lhs - result.rhs) / scale;
  return result;
}

}  // namespace brls
