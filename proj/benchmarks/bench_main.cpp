#include <benchmark/benchmark.h>

#include <random>

#include "brls/brls.hpp"
#include "brls/rls.hpp"
#include "brls/solver.hpp"
#include "brls/synth.hpp"
#include "brls/window_plan.hpp"

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

// Desk grid, one shot; range(0) is the number of frequencies kept.
std::shared_ptr<const ShotOperator> desk_shot(Index n_freq) {
  ExperimentSpec s;
  s.band = {5.0, 5.0 + static_cast<double>(n_freq - 1)};
  const auto modeling = make_modeling(s, make_velocity(s));
  return modeling.shot_operator(s.n_shots / 2);
}

void BM_ShotForward(benchmark::State& state) {
  const auto op = desk_shot(state.range(0));
  const Vector m = uniform_vector(op->model_dim(), 1);
  Vector d(op->data_dim());
  for (auto _ : state) {
    op->forward(m, d);
    benchmark::DoNotOptimize(d.data());
  }
}
BENCHMARK(BM_ShotForward)->Arg(16)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_ShotAdjoint(benchmark::State& state) {
  const auto op = desk_shot(state.range(0));
  const Vector d = uniform_vector(op->data_dim(), 2);
  Vector m(op->model_dim());
  for (auto _ : state) {
    op->adjoint(d, m);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(BM_ShotAdjoint)->Arg(16)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_DenseCgls(benchmark::State& state) {
  const Index n = state.range(0);
  const DenseOperator op(random_matrix(2 * n, n, 3));
  const Vector d = uniform_vector(2 * n, 4);
  CgConfig cg;
  cg.tolerance = 1e-10;
  cg.max_iterations = static_cast<int>(n) + 3;
  for (auto _ : state) benchmark::DoNotOptimize(cgls(op, d, cg).x.data());
}
BENCHMARK(BM_DenseCgls)->Arg(50)->Arg(200);

void BM_RlsBlockUpdate(benchmark::State& state) {
  const Index n = state.range(0);
  const RlsState s0 = rls_init(DenseOperator(random_matrix(2 * n, n, 5)), uniform_vector(2 * n, 6), 0.1);
  const DenseOperator a1(random_matrix(10, n, 7));
  const Vector d1 = uniform_vector(10, 8);
  for (auto _ : state) benchmark::DoNotOptimize(rls_update_block(s0, a1, d1).estimate.data());
}
BENCHMARK(BM_RlsBlockUpdate)->Arg(20)->Arg(80);

void BM_WindowPlan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_window_plan(state.range(0), 5, 3).windows.size());
}
BENCHMARK(BM_WindowPlan)->Arg(240)->Arg(24000);

}  // namespace

BENCHMARK_MAIN();
