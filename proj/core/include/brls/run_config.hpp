#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "brls/synth.hpp"

namespace brls {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator checked by the `dottest` command.
enum class DotTestTarget { survey, identity };

/**
 * Plain-text run configuration: UTF-8, one `key = value` per line, `#`
 * starts a comment, lists are comma separated. Unknown and repeated keys
 * are errors. Required keys: model_kind, nz, nx, dz, dx, n_shots,
 * shot_interval, n_receivers, f_dom, dt, n_t. Everything else falls back to
 * the ExperimentSpec defaults.
 */
struct RunConfig {
  ExperimentSpec experiment;
  /// Where `model` writes and the imaging commands read data; empty means
  /// the --out directory.
  std::string data_dir;
  DotTestTarget dottest_operator = DotTestTarget::survey;
  int dottest_seeds = 20;
  /// Test hook: flip one adjoint entry so `dottest` must fail.
  bool dottest_corrupt_adjoint = false;
};

/// Throws ConfigError naming the offending key or line.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace brls
