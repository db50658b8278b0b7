#include <gtest/gtest.h>

#include <random>

#include "brls/linop.hpp"

using namespace brls;

namespace {

DenseOperator::Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::normal_distribution<double> g;
  DenseOperator::Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = g(gen);
  return a;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(Identity, ForwardAndAdjointPassThrough) {
  IdentityOperator id3(3);
  EXPECT_EQ(id3.apply_forward(vec({1, 2, 3})), vec({1, 2, 3}));
  IdentityOperator id2(2);
  EXPECT_EQ(id2.apply_adjoint(vec({4, 5})), vec({4, 5}));
}

TEST(Dense, HandArithmetic) {
  DenseOperator::Matrix a(2, 2);
  a << 1, 1, 0, 1;
  DenseOperator op(a);
  EXPECT_EQ(op.apply_forward(vec({1, 1})), vec({2, 1}));
  EXPECT_EQ(op.apply_adjoint(vec({1, 0})), vec({1, 1}));
}

TEST(Dense, ZeroMapsToZero) {
  DenseOperator op(random_matrix(5, 3, 7));
  EXPECT_EQ(op.apply_forward(Vector::Zero(3)), Vector::Zero(5));
  EXPECT_EQ(op.apply_adjoint(Vector::Zero(5)), Vector::Zero(3));
}

TEST(Dense, MatchesMatrixProducts) {
  const auto a = random_matrix(6, 4, 3);
  DenseOperator op(a);
  const Vector x = uniform_vector(4, 11);
  const Vector y = uniform_vector(6, 12);
  Vector ax(6), aty(4);
  for (Index i = 0; i < 6; ++i) {
    ax[i] = 0;
    for (Index j = 0; j < 4; ++j) ax[i] += a(i, j) * x[j];
  }
  for (Index j = 0; j < 4; ++j) {
    aty[j] = 0;
    for (Index i = 0; i < 6; ++i) aty[j] += a(i, j) * y[i];
  }
  EXPECT_LT((op.apply_forward(x) - ax).norm(), 1e-13 * ax.norm());
  EXPECT_LT((op.apply_adjoint(y) - aty).norm(), 1e-13 * aty.norm());
}

TEST(Operators, DimensionMismatchNamesSizes) {
  DenseOperator op(random_matrix(3, 2, 1));
  try {
    op.apply_forward(Vector::Zero(5));
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find('5'), std::string::npos) << msg;
    EXPECT_NE(msg.find('2'), std::string::npos) << msg;
  }
  EXPECT_THROW(op.apply_adjoint(Vector::Zero(2)), DimensionError);
}

TEST(Operators, RepeatedApplicationIsIdentical) {
  DenseOperator op(random_matrix(7, 5, 2));
  const Vector x = uniform_vector(5, 4);
  EXPECT_EQ(op.apply_forward(x), op.apply_forward(x));
}

TEST(DotTest, IdentityIsExact) {
  IdentityOperator id(17);
  for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_EQ(dot_test(id, seed).relative_error, 0.0);
}

TEST(DotTest, DenseBelowRoundoff) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DenseOperator op(random_matrix(12, 9, seed + 100));
    EXPECT_LT(dot_test(op, seed).relative_error, 1e-12);
  }
}

TEST(DotTest, CorruptedAdjointFails) {
  auto op = std::make_shared<const DenseOperator>(random_matrix(8, 6, 5));
  const auto bad = with_corrupted_adjoint(op);
  EXPECT_GT(dot_test(*bad, 3).relative_error, 1e-6);
}

TEST(DotTest, ReproducibleForSeed) {
  DenseOperator op(random_matrix(4, 4, 9));
  const auto a = dot_test(op, 42);
  const auto b = dot_test(op, 42);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
  EXPECT_NE(a.lhs, dot_test(op, 43).lhs);
}

TEST(Stack, IdentityPair) {
  auto id = std::make_shared<const IdentityOperator>(2);
  const auto st = stack_rows({id, id});
  EXPECT_EQ(st->data_dim(), 4);
  EXPECT_EQ(st->apply_forward(vec({1, 2})), vec({1, 2, 1, 2}));
  EXPECT_EQ(st->apply_adjoint(vec({1, 2, 3, 4})), vec({4, 6}));
}

TEST(Stack, BlocksReproduceSingleForwards) {
  auto a0 = std::make_shared<const DenseOperator>(random_matrix(3, 4, 1));
  auto a1 = std::make_shared<const DenseOperator>(random_matrix(5, 4, 2));
  const auto st = stack_rows({a0, a1});
  const Vector m = uniform_vector(4, 8);
  const Vector y = st->apply_forward(m);
  EXPECT_EQ(Vector(y.head(3)), a0->apply_forward(m));
  EXPECT_EQ(Vector(y.tail(5)), a1->apply_forward(m));
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_LT(dot_test(*st, seed).relative_error, 1e-10);
}

TEST(Stack, RejectsBadInput) {
  EXPECT_THROW(stack_rows({}), std::invalid_argument);
  auto a = std::make_shared<const DenseOperator>(random_matrix(2, 3, 1));
  auto b = std::make_shared<const DenseOperator>(random_matrix(2, 4, 1));
  EXPECT_THROW(stack_rows({a, b}), std::invalid_argument);
}

TEST(Linearity, DenseAndStacked) {
  auto a0 = std::make_shared<const DenseOperator>(random_matrix(6, 5, 21));
  auto a1 = std::make_shared<const DenseOperator>(random_matrix(4, 5, 22));
  const auto st = stack_rows({a0, a1});
  const Vector x = uniform_vector(5, 1), y = uniform_vector(5, 2);
  const double alpha = 0.7, beta = -1.3;
  for (const LinearOperator* op : {static_cast<const LinearOperator*>(a0.get()),
                                   static_cast<const LinearOperator*>(st.get())}) {
    const Vector lhs = op->apply_forward(alpha * x + beta * y);
    const Vector rhs = alpha * op->apply_forward(x) + beta * op->apply_forward(y);
    EXPECT_LT((lhs - rhs).norm() / lhs.norm(), 1e-12);
  }
}
