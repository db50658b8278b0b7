#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "brls/brls.hpp"
#include "brls/grid_file.hpp"
#include "brls/metrics.hpp"
#include "brls/render.hpp"
#include "brls/run_config.hpp"
#include "brls/solver.hpp"
#include "brls/synth.hpp"
#include "brls/window_plan.hpp"

namespace brls::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kDotTestThreshold = 1e-8;

RunConfig load_config(const CommandOptions& options) {
  if (options.config.empty()) throw ConfigError("--config is required");
  RunConfig cfg = load_run_config(options.config);
  if (options.seed) cfg.experiment.seed = *options.seed;
  return cfg;
}

fs::path data_dir(const RunConfig& cfg, const CommandOptions& options) {
  return cfg.data_dir.empty() ? options.out : fs::path(cfg.data_dir);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw GridFileError("cannot create output directory " + dir.string() + ": " + ec.message());
}

GridFile gather_file(const ShotGather& gather, const ExperimentSpec& spec, Index shot_position) {
  GridFile f;
  f.kind = GridKind::gather;
  f.n1 = static_cast<std::uint64_t>(gather.n_t);
  f.n2 = static_cast<std::uint64_t>(gather.n_receivers);
  f.d1 = spec.dt;
  f.d2 = spec.dx * static_cast<double>(spec.receiver_spacing);
  f.o1 = 0.0;
  f.o2 = static_cast<double>(shot_position + spec.near_offset) * spec.dx;
  f.payload.reserve(gather.traces.size());
  for (double v : gather.traces) f.payload.push_back(static_cast<float>(v));
  return f;
}

/// Everything the imaging commands need, read back from the data directory.
struct Survey {
  RunConfig cfg;
  VelocityModel velocity;
  std::optional<Reflectivity> truth;
  std::vector<DataBlock> blocks;
};

Survey load_survey(const CommandOptions& options) {
  RunConfig cfg = load_config(options);
  const fs::path dir = data_dir(cfg, options);
  VelocityModel velocity(read_grid_file(dir / "velocity.brg").to_grid());
  const ExperimentSpec& spec = cfg.experiment;
  if (velocity.nz() != spec.nz || velocity.nx() != spec.nx)
    throw ConfigError("velocity.brg does not match nz/nx of the config");

  std::optional<Reflectivity> truth;
  if (fs::exists(dir / "truth.brg")) truth = Reflectivity{read_grid_file(dir / "truth.brg").to_grid()};

  const WemModeling modeling = make_modeling(spec, velocity);
  std::vector<ShotGather> gathers;
  for (Index s = 0; s < spec.n_shots; ++s) {
    const GridFile f = read_grid_file(dir / shot_file_name(s));
    if (f.kind != GridKind::gather || f.n1 != static_cast<std::uint64_t>(spec.n_t) ||
        f.n2 != static_cast<std::uint64_t>(spec.n_receivers))
      throw GridFileError((dir / shot_file_name(s)).string() + ": gather shape does not match the config");
    ShotGather g;
    g.shot_index = s;
    g.n_t = spec.n_t;
    g.n_receivers = spec.n_receivers;
    g.traces.assign(f.payload.begin(), f.payload.end());
    gathers.push_back(std::move(g));
  }
  std::vector<DataBlock> blocks = make_blocks(modeling, gathers);
  return Survey{std::move(cfg), std::move(velocity), std::move(truth), std::move(blocks)};
}

std::optional<double> truth_error(const Survey& survey, const Vector& m) {
  if (!survey.truth) return std::nullopt;
  const BandProjection projection{survey.cfg.experiment.band, survey.velocity.mean_velocity()};
  // A constant-velocity truth has nothing to compare against.
  if (band_project(survey.truth->grid, projection).to_vector().norm() == 0.0) return std::nullopt;
  return model_error(m, *survey.truth, projection);
}

void write_outputs(const CommandOptions& options, const Survey& survey, Method method, const Vector& m,
                   const RunReport& report, std::ostream& out) {
  ensure_dir(options.out);
  const auto& v = survey.velocity.grid();
  Grid2D grid(v.nz(), v.nx(), v.dz(), v.dx());
  const std::string name = to_string(method);
  write_grid_file(options.out / (name + "_image.brg"), GridFile::from_grid(grid.with_values(m), GridKind::image));
  const std::string text = format_report(report);
  std::ofstream rep(options.out / (name + "_report.txt"));
  if (!rep) throw GridFileError("cannot write " + (options.out / (name + "_report.txt")).string());
  rep << text;
  if (!options.quiet) out << text;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const WindowSolveError& e) {
    err << "error: numerical failure in " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const SingularSystemError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

fs::path shot_file_name(std::int64_t shot_index) {
  char name[32];
  std::snprintf(name, sizeof(name), "shot_%04lld.brg", static_cast<long long>(shot_index));
  return name;
}

int cmd_model(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(options);
    const ExperimentSpec& spec = cfg.experiment;
    const SyntheticData data = synthesize_data(spec);
    ensure_dir(options.out);

    std::vector<std::pair<fs::path, GridFile>> files;
    files.emplace_back("velocity.brg", GridFile::from_grid(data.velocity.grid(), GridKind::velocity));
    files.emplace_back("truth.brg", GridFile::from_grid(data.truth.grid, GridKind::reflectivity));
    for (std::size_t s = 0; s < data.gathers.size(); ++s) {
      files.emplace_back(shot_file_name(static_cast<std::int64_t>(s)),
                         gather_file(data.gathers[s], spec, data.geometry.shot_positions[s]));
    }
    for (const auto& [name, file] : files) {
      write_grid_file(options.out / name, file);
      if (!options.quiet) {
        out << (options.out / name).string() << " kind=" << to_string(file.kind) << " n1=" << file.n1
            << " n2=" << file.n2 << '\n';
      }
    }
    return static_cast<int>(kSuccess);
  });
}

int cmd_adjoint(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    const Survey survey = load_survey(options);
    const auto op = stack_blocks(survey.blocks);
    const Vector image = op->apply_adjoint(concat_data(survey.blocks));
    const Vector scaled = scale_factor(survey.blocks, image) * image;

    RunReport report;
    report.method = Method::adjoint;
    report.data_misfit = data_misfit(survey.blocks, scaled);
    report.model_error = truth_error(survey, scaled);
    report.wall_time = seconds_since(start);
    write_outputs(options, survey, Method::adjoint, scaled, report, out);
    return static_cast<int>(kSuccess);
  });
}

int cmd_lsm(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    const Survey survey = load_survey(options);
    const ExperimentSpec& spec = survey.cfg.experiment;
    CgConfig cg;
    cg.max_iterations = spec.lsm_iterations;
    cg.tolerance = spec.cg_tolerance;
    cg.lambda = spec.lambda;
    const auto op = stack_blocks(survey.blocks);
    const CgResult solved = cgls(*op, concat_data(survey.blocks), cg);

    RunReport report;
    report.method = Method::lsm;
    report.data_misfit = data_misfit(survey.blocks, solved.x);
    report.model_error = truth_error(survey, solved.x);
    report.per_window_iterations = {solved.report.iterations_run};
    report.wall_time = seconds_since(start);
    write_outputs(options, survey, Method::lsm, solved.x, report, out);
    return static_cast<int>(kSuccess);
  });
}

int cmd_brls(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    const Survey survey = load_survey(options);
    const ExperimentSpec& spec = survey.cfg.experiment;
    CgConfig cg;
    cg.max_iterations = spec.cg_max_iterations;
    cg.tolerance = spec.cg_tolerance;
    cg.lambda = spec.lambda;
    const WindowPlan plan = make_window_plan(spec.n_shots, spec.q, spec.k);
    const BrlsResult solved = brls_solve(survey.blocks, plan, cg);

    RunReport report;
    report.method = Method::brls;
    report.data_misfit = data_misfit(survey.blocks, solved.model);
    report.model_error = truth_error(survey, solved.model);
    for (const auto& r : solved.reports) report.per_window_iterations.push_back(r.iterations_run);
    report.wall_time = seconds_since(start);
    write_outputs(options, survey, Method::brls, solved.model, report, out);
    return static_cast<int>(kSuccess);
  });
}

int cmd_dottest(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(options);
    const ExperimentSpec& spec = cfg.experiment;

    std::vector<std::pair<std::string, OperatorPtr>> ops;
    if (cfg.dottest_operator == DotTestTarget::identity) {
      ops.emplace_back("identity", std::make_shared<const IdentityOperator>(spec.nz * spec.nx));
    } else {
      const WemModeling modeling = make_modeling(spec, make_velocity(spec));
      ops.emplace_back("survey", modeling.survey_operator());
      for (Index s = 0; s < spec.n_shots; ++s) ops.emplace_back("shot " + std::to_string(s), modeling.shot_operator(s));
    }
    if (cfg.dottest_corrupt_adjoint) {
      for (auto& [name, op] : ops) op = with_corrupted_adjoint(op);
    }

    bool all_pass = true;
    for (const auto& [name, op] : ops) {
      double worst = 0.0;
      for (int i = 0; i < cfg.dottest_seeds; ++i) {
        const auto seed = spec.seed + static_cast<std::uint64_t>(i);
        worst = std::max(worst, dot_test(*op, seed).relative_error);
      }
      const bool pass = worst < kDotTestThreshold;
      all_pass = all_pass && pass;
      if (!options.quiet) {
        out << std::setprecision(3) << name << " relative_error=" << worst << (pass ? " PASS" : " FAIL") << '\n';
      }
    }
    return static_cast<int>(all_pass ? kSuccess : kNumericalFailure);
  });
}

int cmd_render(const fs::path& grid_file, const fs::path& image_file, double clip_percentile, bool quiet,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GridFile grid = read_grid_file(grid_file);
    write_pgm(image_file, render_pgm(grid, clip_percentile));
    if (!quiet) out << image_file.string() << " " << grid.n2 << "x" << grid.n1 << '\n';
    return static_cast<int>(kSuccess);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-row recursive least-squares migration toolkit"};
  app.require_subcommand(1);

  CommandOptions options;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config, "Run configuration file")->required();
    sub->add_option("--out", options.out, "Output directory");
    sub->add_option("--seed", seed, "Override the configured seed");
    sub->add_flag("--quiet", options.quiet, "Suppress manifests and reports on stdout");
  };

  auto* model = app.add_subcommand("model", "Synthesize velocity, truth and shot gathers");
  auto* adjoint = app.add_subcommand("adjoint", "Migrate the data with the adjoint operator");
  auto* lsm = app.add_subcommand("lsm", "Least-squares migration over the whole survey");
  auto* brls = app.add_subcommand("brls", "Block-row recursive least-squares migration");
  auto* dottest = app.add_subcommand("dottest", "Check the adjoint of every operator");
  for (auto* sub : {model, adjoint, lsm, brls, dottest}) add_common(sub);

  auto* render = app.add_subcommand("render", "Render a grid file as an 8-bit PGM image");
  fs::path grid_path;
  fs::path image_path;
  double clip = 98.0;
  render->add_option("grid", grid_path, "Input grid file")->required();
  render->add_option("--out", image_path, "Output .pgm file")->required();
  render->add_option("--clip-percentile", clip, "Clip at this percentile of |values|")->check(CLI::Range(0.0, 100.0));
  render->add_flag("--quiet", options.quiet, "Suppress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  for (auto* sub : {model, adjoint, lsm, brls, dottest}) {
    if (sub->parsed() && sub->count("--seed") > 0) options.seed = seed;
  }

  if (model->parsed()) return cmd_model(options, out, err);
  if (adjoint->parsed()) return cmd_adjoint(options, out, err);
  if (lsm->parsed()) return cmd_lsm(options, out, err);
  if (brls->parsed()) return cmd_brls(options, out, err);
  if (dottest->parsed()) return cmd_dottest(options, out, err);
  if (render->parsed()) return cmd_render(grid_path, image_path, clip, options.quiet, out, err);
  return kUsageError;
}

}  // namespace brls::cli
