// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <zlib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "brls/brls.hpp"
#include "brls/grid_file.hpp"
#include "brls/metrics.hpp"
#include "brls/render.hpp"
#include "brls/rls.hpp"
#include "brls/synth.hpp"
#include "commands.hpp"

using namespace brls;
namespace fs = std::filesystem;

namespace {

// Tolerances, pinned.
constexpr double kDenseAdjointTol = 1e-10;
constexpr double kWaveAdjointTol = 1e-8;
constexpr int kDotTestSeeds = 20;
constexpr double kRecursionTol = 1e-9;
constexpr double kMilTol = 1e-10;
constexpr double kDegenerateWindowTol = 1e-8;
constexpr double kWarmNoWorseFraction = 0.9;
constexpr double kBrlsToLsmMisfitFactor = 2.0;
constexpr Index kFocusCells = 2;
constexpr Index kSidelobeExclusion = 2;
constexpr double kCgOracleTol = 1e-8;
constexpr std::uint32_t kGoldenPgmA = 0x2395db6eu;
constexpr std::uint32_t kGoldenPgmB = 0x3b000909u;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

DenseOperator::Matrix random_matrix(Index rows, Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  DenseOperator::Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = g(gen);
  return a;
}

Vector random_vector(Index n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = g(gen);
  return v;
}

double worst_dot_test(const LinearOperator& op) {
  double worst = 0.0;
  for (int s = 0; s < kDotTestSeeds; ++s) worst = std::max(worst, dot_test(op, static_cast<std::uint64_t>(s)).relative_error);
  return worst;
}

/// Desk experiment with its solver runs, shared by the warm-start and ordering checks.
struct DeskRun {
  SyntheticData data;
  BrlsResult warm;
  BrlsResult cold;
  Vector adjoint_scaled;
  Vector lsm;
};

const DeskRun& desk() {
  static const DeskRun run = [] {
    const ExperimentSpec spec;
    DeskRun r{synthesize_data(spec), {}, {}, {}, {}};
    const WindowPlan plan = make_window_plan(spec.n_shots, spec.q, spec.k);
    CgConfig cg;
    cg.max_iterations = spec.cg_max_iterations;
    cg.tolerance = spec.cg_tolerance;
    cg.lambda = spec.lambda;
    r.warm = brls_solve(r.data.blocks, plan, cg);
    BrlsOptions cold;
    cold.warm_start = false;
    r.cold = brls_solve(r.data.blocks, plan, cg, cold);

    const auto op = stack_blocks(r.data.blocks);
    const Vector d = concat_data(r.data.blocks);
    const Vector image = op->apply_adjoint(d);
    r.adjoint_scaled = scale_factor(r.data.blocks, image) * image;
    CgConfig lsm = cg;
    lsm.max_iterations = spec.lsm_iterations;
    r.lsm = cgls(*op, d, lsm).x;
    return r;
  }();
  return run;
}

Verdict adjoint_exactness() {
  std::mt19937_64 gen(11);
  double dense = 0.0;
  for (Index n : {1, 5, 20}) {
    auto a = std::make_shared<const DenseOperator>(random_matrix(n + 3, n, gen));
    auto b = std::make_shared<const DenseOperator>(random_matrix(2 * n, n, gen));
    dense = std::max(dense, worst_dot_test(*a));
    dense = std::max(dense, worst_dot_test(*stack_rows({a, b, a})));
  }
  const ExperimentSpec spec;
  const WemModeling modeling = make_modeling(spec, make_velocity(spec));
  const Index nf = modeling.context()->n_freq();
  double wave = 0.0;
  for (Index s = 0; s < spec.n_shots; ++s) wave = std::max(wave, worst_dot_test(*modeling.shot_operator(s)));
  const bool grid_ok = nf >= 16 && nf <= 64;
  return {dense < kDenseAdjointTol && wave < kWaveAdjointTol && grid_ok,
          "dense/stacked max " + fmt(dense) + ", " + std::to_string(spec.n_shots) + " shot operators on " +
              std::to_string(spec.nz) + "x" + std::to_string(spec.nx) + " with " + std::to_string(nf) +
              " frequencies max " + fmt(wave) + " over " + std::to_string(kDotTestSeeds) + " seeds"};
}

Verdict recursion_equals_batch() {
  std::mt19937_64 gen(22);
  std::uniform_int_distribution<Index> extra(0, 10);
  double worst_block = 0.0, worst_mil = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 1 + trial % 20;
    const Index n0 = m + extra(gen), n1 = 1 + extra(gen);
    const auto a0 = random_matrix(n0, m, gen), a1 = random_matrix(n1, m, gen);
    const Vector d0 = random_vector(n0, gen), d1 = random_vector(n1, gen);
    const RlsState s0 = rls_init(DenseOperator(a0), d0, 0.0);
    const RlsState s1 = rls_update_block(s0, DenseOperator(a1), d1);
    DenseOperator::Matrix a(n0 + n1, m);
    a << a0, a1;
    Vector d(n0 + n1);
    d << d0, d1;
    const Vector batch = closed_form_ls(DenseOperator(a), d, 0.0);
    worst_block = std::max(worst_block, (s1.estimate - batch).norm() / batch.norm());

    const Vector row = random_vector(m, gen);
    const double y = random_vector(1, gen)[0];
    DenseOperator::Matrix one(1, m);
    one.row(0) = row.transpose();
    const Vector by_block = rls_update_block(s0, DenseOperator(one), Vector::Constant(1, y)).estimate;
    const Vector by_mil = rls_update_rank1_mil(s0, row, y).estimate;
    worst_mil = std::max(worst_mil, (by_mil - by_block).norm() / by_block.norm());
  }
  return {worst_block < kRecursionTol && worst_mil < kMilTol,
          "100 systems, block vs batch max " + fmt(worst_block) + ", rank-1 vs block max " + fmt(worst_mil)};
}

Verdict degenerate_window() {
  CgConfig cg;
  cg.tolerance = 1e-12;
  cg.max_iterations = 200;

  std::mt19937_64 gen(33);
  const Index m = 12;
  std::vector<DataBlock> dense;
  for (Index b = 0; b < 8; ++b) {
    auto a = random_matrix(4, m, gen);
    dense.push_back({b, std::make_shared<const DenseOperator>(a), random_vector(4, gen)});
  }
  const Vector dense_brls = brls_solve(dense, make_window_plan(8, 8, 3), cg).model;
  const Vector dense_batch = cgls(*stack_blocks(dense), concat_data(dense), cg).x;
  const double dense_err = (dense_brls - dense_batch).norm() / dense_batch.norm();

  ExperimentSpec spec;
  spec.nz = 20;
  spec.nx = 60;
  spec.layer_depths = {7, 14};
  spec.layer_velocities = {1800, 2100, 2400};
  spec.first_shot = 25;
  spec.n_shots = 6;
  spec.shot_interval = 6;
  spec.n_receivers = 20;
  spec.n_t = 128;
  spec.q = 2;
  spec.k = 1;
  const SyntheticData data = synthesize_data(spec);
  cg.max_iterations = 60;
  const Vector wave_brls = brls_solve(data.blocks, make_window_plan(6, 6, 2), cg).model;
  const Vector wave_batch = cgls(*stack_blocks(data.blocks), concat_data(data.blocks), cg).x;
  const double wave_err = (wave_brls - wave_batch).norm() / wave_batch.norm();
  return {dense_err < kDegenerateWindowTol && wave_err < kDegenerateWindowTol,
          "dense " + fmt(dense_err) + ", wave-equation " + fmt(wave_err)};
}

Verdict window_plan() {
  const WindowPlan plan = make_window_plan(240, 5, 3);
  std::vector<Window> expected;
  for (Index s = 0; s + 5 <= 240; s += 3) expected.push_back({s, s + 4});
  if (expected.back().end != 239) expected.push_back({235, 239});
  std::set<Index> covered;
  for (const auto& w : plan.windows)
    for (Index b = w.start; b <= w.end; ++b) covered.insert(b);
  const bool ok = plan.windows == expected && plan.windows.size() == 80 && covered.size() == 240 &&
                  expected[78] == Window{234, 238} && expected[79] == Window{235, 239};
  return {ok, std::to_string(plan.windows.size()) + " windows, last " + std::to_string(plan.windows.back().start) + "-" +
                  std::to_string(plan.windows.back().end) + ", " + std::to_string(covered.size()) + " blocks covered"};
}

Verdict warm_start() {
  const DeskRun& run = desk();
  const auto& w = run.warm.reports;
  const auto& c = run.cold.reports;
  std::size_t no_worse = 0;
  double warm_sum = 0.0, cold_sum = 0.0;
  std::ostringstream counts;
  for (std::size_t i = 0; i < w.size(); ++i) {
    no_worse += w[i].iterations_run <= c[i].iterations_run ? 1 : 0;
    warm_sum += w[i].iterations_run;
    cold_sum += c[i].iterations_run;
    counts << (i ? " " : "") << w[i].iterations_run << "/" << c[i].iterations_run;
  }
  const double fraction = static_cast<double>(no_worse) / static_cast<double>(w.size());
  const double n = static_cast<double>(w.size());
  return {fraction >= kWarmNoWorseFraction && warm_sum < cold_sum,
          "warm<=cold in " + fmt(100 * fraction) + "% of " + std::to_string(w.size()) + " windows, mean " +
              fmt(warm_sum / n) + " vs " + fmt(cold_sum / n) + " (warm/cold: " + counts.str() + ")"};
}

Verdict method_ordering() {
  const DeskRun& run = desk();
  const auto& blocks = run.data.blocks;
  const BandProjection projection{ExperimentSpec{}.band, run.data.velocity.mean_velocity()};
  const double mis_brls = data_misfit(blocks, run.warm.model);
  const double mis_adj = data_misfit(blocks, run.adjoint_scaled);
  const double mis_lsm = data_misfit(blocks, run.lsm);
  const double err_brls = model_error(run.warm.model, run.data.truth, projection);
  const double err_adj = model_error(run.adjoint_scaled, run.data.truth, projection);
  return {mis_brls <= mis_adj && err_brls <= err_adj && mis_brls <= kBrlsToLsmMisfitFactor * mis_lsm,
          "misfit brls " + fmt(mis_brls) + " adjoint " + fmt(mis_adj) + " lsm8 " + fmt(mis_lsm) +
              "; model error brls " + fmt(err_brls) + " adjoint " + fmt(err_adj)};
}

Verdict point_scatterer() {
  ExperimentSpec spec;
  spec.model_kind = ModelKind::constant;
  spec.v0 = 2000;
  spec.nz = 50;
  spec.nx = 120;
  spec.first_shot = 30;
  spec.n_shots = 12;
  spec.shot_interval = 7;
  spec.n_receivers = 30;
  spec.q = 3;
  spec.k = 1;
  const Index iz = 25, ix = 60;
  const WemModeling modeling = make_modeling(spec, make_velocity(spec));
  Grid2D truth(spec.nz, spec.nx, spec.dz, spec.dx);
  truth(iz, ix) = 1.0;
  const auto op = modeling.survey_operator();
  const Vector d = op->apply_forward(truth.to_vector());
  const Grid2D adjoint = truth.with_values(op->apply_adjoint(d));
  CgConfig cg;
  cg.max_iterations = spec.lsm_iterations;
  cg.tolerance = 1e-12;
  const Grid2D lsm = truth.with_values(cgls(*op, d, cg).x);
  const PeakLocation p = peak_location(adjoint);
  const double psr_adj = peak_to_sidelobe(adjoint, kSidelobeExclusion);
  const double psr_lsm = peak_to_sidelobe(lsm, kSidelobeExclusion);
  const bool near = std::abs(p.iz - iz) <= kFocusCells && std::abs(p.ix - ix) <= kFocusCells;
  return {near && psr_lsm > psr_adj, "adjoint peak at (" + std::to_string(p.iz) + "," + std::to_string(p.ix) +
                                          ") for truth (25,60); peak/sidelobe adjoint " + fmt(psr_adj) + " lsm " +
                                          fmt(psr_lsm)};
}

Verdict cg_oracle() {
  std::mt19937_64 gen(88);
  double worst = 0.0;
  bool monotone = true;
  for (double lambda : {0.0, 0.1, 1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Index m = 4 + trial;
      const DenseOperator op(random_matrix(3 * m, m, gen));
      const Vector d = random_vector(3 * m, gen);
      CgConfig cg;
      cg.lambda = lambda;
      cg.tolerance = 1e-12;
      cg.max_iterations = 500;
      const CgResult r = cgls(op, d, cg);
      const Vector x = closed_form_ls(op, d, lambda);
      worst = std::max(worst, (r.x - x).norm() / x.norm());
      const auto& h = r.report.objective_history;
      for (std::size_t i = 1; i < h.size(); ++i) monotone = monotone && h[i] <= h[i - 1];
    }
  }
  return {worst < kCgOracleTol && monotone,
          "30 systems, max relative error " + fmt(worst) + ", objective " + (monotone ? "non-increasing" : "INCREASED")};
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t crc(const std::vector<std::uint8_t>& bytes) {
  return static_cast<std::uint32_t>(::crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

Verdict determinism_and_formats() {
  const fs::path dir = fs::temp_directory_path() / ("brls_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "model_kind = lens\nnz = 16\nnx = 48\ndz = 10\ndx = 10\nlens_center_z = 8\n"
                                    "lens_center_x = 24\nlens_radius = 4\nn_shots = 3\nfirst_shot = 20\n"
                                    "shot_interval = 5\nn_receivers = 12\nf_dom = 20\ndt = 0.004\nn_t = 64\n"
                                    "wavelet_delay = 0.06\nnoise_level = 0.05\nq = 2\nk = 1\nseed = 17\n";
  std::ostringstream sink;
  bool ok = true;
  for (const char* sub : {"a", "b"}) {
    const std::string out = (dir / sub).string();
    const std::string cfg = (dir / "run.cfg").string();
    const char* argv[] = {"brls", "model", "--config", cfg.c_str(), "--out", out.c_str(), "--quiet"};
    ok = ok && cli::run(7, argv, sink, sink) == cli::kSuccess;
  }
  std::size_t files = 0;
  bool identical = ok, round_trip = ok;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const auto a = slurp(entry.path());
    const auto b = slurp(dir / "b" / entry.path().filename());
    identical = identical && a == b;
    round_trip = round_trip && encode_grid_file(read_grid_file(entry.path())) == a;
    ++files;
  }
  fs::remove_all(dir);

  auto pattern = [](std::uint64_t n1, std::uint64_t n2, auto f) {
    GridFile g;
    g.n1 = n1;
    g.n2 = n2;
    for (std::uint64_t i2 = 0; i2 < n2; ++i2)
      for (std::uint64_t i1 = 0; i1 < n1; ++i1) g.payload.push_back(static_cast<float>(f(i1, i2)));
    return g;
  };
  const auto a = pattern(6, 5, [](std::uint64_t i1, std::uint64_t i2) {
    return static_cast<double>((i1 * 5 + i2) % 7) - 3.0 + 0.25 * static_cast<double>(i2);
  });
  const auto b = pattern(30, 20, [](std::uint64_t i1, std::uint64_t i2) {
    return (static_cast<double>((i1 * 31 + i2 * 17) % 23) - 11.0) / 4.0;
  });
  const bool golden = crc(render_pgm(a)) == kGoldenPgmA && crc(render_pgm(b, 90.0)) == kGoldenPgmB;
  return {identical && round_trip && golden && files >= 5,
          std::to_string(files) + " files " + (identical ? "byte-identical" : "DIFFER") + ", round-trip " +
              (round_trip ? "bit-exact" : "MISMATCH") + ", PGM checksums " + (golden ? "match" : "MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"adjoint exactness", adjoint_exactness},
      {"recursion equals batch", recursion_equals_batch},
      {"degenerate window", degenerate_window},
      {"window plan 240/5/3", window_plan},
      {"warm-start benefit", warm_start},
      {"method ordering", method_ordering},
      {"point scatterer focusing", point_scatterer},
      {"cg oracle", cg_oracle},
      {"determinism and formats", determinism_and_formats},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += v.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << " " << criteria[i].first << ": " << (v.pass ? "PASS" : "FAIL") << " ("
              << v.detail << ") [" << fmt(secs) << " s]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
