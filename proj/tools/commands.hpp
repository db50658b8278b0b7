#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace brls::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNumericalFailure = 2 };

struct CommandOptions {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

int cmd_model(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_adjoint(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_lsm(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_brls(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_dottest(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_render(const std::filesystem::path& grid_file, const std::filesystem::path& image_file,
               double clip_percentile, bool quiet, std::ostream& out, std::ostream& err);

/// Full command line: `brls <subcommand> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// File names written by `model` and the imaging commands.
std::filesystem::path shot_file_name(std::int64_t shot_index);

}  // namespace brls::cli
