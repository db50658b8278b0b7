#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "brls/metrics.hpp"
#include "brls/solver.hpp"
#include "brls/synth.hpp"

using namespace brls;

namespace {

std::vector<DataBlock> dense_blocks(const Vector& truth, int count) {
  std::vector<DataBlock> blocks;
  for (int b = 0; b < count; ++b) {
    DenseOperator::Matrix a(3, truth.size());
    for (Index i = 0; i < a.rows(); ++i) a.row(i) = uniform_vector(truth.size(), 10 * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(i)).transpose();
    auto op = std::make_shared<const DenseOperator>(a);
    blocks.push_back({b, op, op->apply_forward(truth)});
  }
  return blocks;
}

Reflectivity random_truth(Index nz, Index nx, std::uint64_t seed) {
  return Reflectivity{Grid2D(nz, nx, 10, 10).with_values(uniform_vector(nz * nx, seed))};
}

}  // namespace

TEST(Misfit, ZeroModelGivesDataEnergy) {
  const Vector truth = uniform_vector(4, 1);
  const auto blocks = dense_blocks(truth, 3);
  double energy = 0.0;
  for (const auto& b : blocks) energy += b.data.squaredNorm();
  EXPECT_NEAR(data_misfit(blocks, Vector::Zero(4)), energy, 1e-14 * energy);
  EXPECT_LT(data_misfit(blocks, truth), 1e-12 * energy);
}

TEST(Misfit, ScaleFactorFitsAmplitude) {
  const Vector truth = uniform_vector(4, 2);
  const auto blocks = dense_blocks(truth, 3);
  EXPECT_NEAR(scale_factor(blocks, 0.25 * truth), 4.0, 1e-12);
  EXPECT_EQ(scale_factor(blocks, Vector::Zero(4)), 0.0);
}

TEST(Misfit, AdjointPredictsWorseThanLeastSquares) {
  ExperimentSpec s;
  s.nz = 16;
  s.nx = 48;
  s.layer_depths = {5, 11};
  s.layer_velocities = {1800, 2100, 2400};
  s.first_shot = 20;
  s.n_shots = 6;
  s.shot_interval = 4;
  s.n_receivers = 16;
  s.n_t = 128;
  s.q = 3;
  s.k = 1;
  const auto data = synthesize_data(s);
  const auto op = stack_blocks(data.blocks);
  const Vector d = concat_data(data.blocks);
  const Vector adj = op->apply_adjoint(d);
  const Vector scaled = scale_factor(data.blocks, adj) * adj;
  CgConfig cg;
  cg.max_iterations = 8;
  const Vector lsm = cgls(*op, d, cg).x;
  EXPECT_GT(data_misfit(data.blocks, scaled), data_misfit(data.blocks, lsm));
}

TEST(ModelError, Examples) {
  const auto truth = random_truth(5, 6, 3);
  const Vector t = truth.grid.to_vector();
  EXPECT_EQ(model_error(t, truth), 0.0);
  EXPECT_NEAR(model_error(2 * t, truth), 1.0, 1e-15);
  EXPECT_NEAR(model_error(Vector::Zero(t.size()), truth), 1.0, 1e-15);
  EXPECT_THROW(model_error(Vector::Zero(30), Reflectivity{Grid2D(5, 6, 10, 10)}), std::invalid_argument);
  EXPECT_THROW(model_error(Vector::Zero(3), truth), DimensionError);
}

TEST(BandProjection, KeepsInBandRemovesOutOfBand) {
  const Index nz = 64;
  const double dz = 10.0;
  const BandProjection p{{5.0, 45.0}, 2000.0};  // passes |kz| <= 0.045 cycles/m
  Grid2D low(nz, 3, dz, dz), high(nz, 3, dz, dz);
  for (Index ix = 0; ix < 3; ++ix)
    for (Index iz = 0; iz < nz; ++iz) {
      const double z = static_cast<double>(iz) * dz;
      low(iz, ix) = std::cos(2 * std::numbers::pi * 0.02 * z);
      high(iz, ix) = iz % 2 ? -1.0 : 1.0;  // 0.05 cycles/m
    }
  const Grid2D pl = band_project(low, p);
  const Grid2D ph = band_project(high, p);
  // Finite-length columns leak a little; interior samples stay close.
  for (Index iz = 16; iz < 48; ++iz) {
    EXPECT_NEAR(pl(iz, 1), low(iz, 1), 0.15);
    EXPECT_LT(std::abs(ph(iz, 1)), 0.15);
  }
  EXPECT_GT(pl.to_vector().norm(), 0.8 * low.to_vector().norm());
  EXPECT_LT(ph.to_vector().norm(), 0.3 * high.to_vector().norm());
}

TEST(BandProjection, IsLinear) {
  const auto a = random_truth(20, 4, 1), b = random_truth(20, 4, 2);
  const BandProjection p{{5, 30}, 2000};
  const Vector lhs = band_project(a.grid.with_values(a.grid.to_vector() - 3 * b.grid.to_vector()), p).to_vector();
  const Vector rhs = band_project(a.grid, p).to_vector() - 3 * band_project(b.grid, p).to_vector();
  EXPECT_LT((lhs - rhs).norm(), 1e-12 * lhs.norm());
}

TEST(Peak, LocationAndSidelobeRatio) {
  Grid2D g(10, 12, 10, 10);
  g(4, 7) = -3.0;
  g(4, 8) = 2.5;
  g(9, 0) = 1.0;
  const auto p = peak_location(g);
  EXPECT_EQ(p.iz, 4);
  EXPECT_EQ(p.ix, 7);
  EXPECT_NEAR(peak_to_sidelobe(g, 0), 3.0 / 2.5, 1e-15);
  EXPECT_NEAR(peak_to_sidelobe(g, 1), 3.0, 1e-15);
}

TEST(Report, RoundTrip) {
  RunReport r;
  r.method = Method::brls;
  r.data_misfit = 0.1 + 1e-17;
  r.model_error = 1.0 / 3.0;
  r.per_window_iterations = {25, 18, 0, 9};
  r.wall_time = 12.345678901234567;
  const RunReport back = parse_report(format_report(r));
  EXPECT_EQ(back.method, r.method);
  EXPECT_EQ(back.data_misfit, r.data_misfit);
  EXPECT_EQ(back.model_error, r.model_error);
  EXPECT_EQ(back.per_window_iterations, r.per_window_iterations);
  EXPECT_EQ(back.wall_time, r.wall_time);

  RunReport bare;
  bare.method = Method::adjoint;
  const RunReport b2 = parse_report(format_report(bare));
  EXPECT_FALSE(b2.model_error.has_value());
  EXPECT_TRUE(b2.per_window_iterations.empty());
}

TEST(Report, RejectsUnknownKeys) {
  EXPECT_ANY_THROW(parse_report("method = lsm\ndata_misfit = 1\nbogus = 2\n"));
  EXPECT_ANY_THROW(method_from_string("sgd"));
  EXPECT_EQ(method_from_string("adjoint"), Method::adjoint);
  EXPECT_EQ(to_string(Method::lsm), "lsm");
}
