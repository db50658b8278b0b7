#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brls/brls.hpp"
#include "brls/grid.hpp"
#include "brls/wem.hpp"

namespace brls {

enum class Method { adjoint, lsm, brls };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

struct RunReport {
  Method method = Method::adjoint;
  double data_misfit = 0.0;
  /// Absent when no truth was available.
  std::optional<double> model_error;
  std::vector<int> per_window_iterations;
  double wall_time = 0.0;
};

/// key=value lines: method, data_misfit, model_error (if set),
/// per_window_iterations (comma separated, if any), wall_time. Doubles are
/// written with 17 significant digits so parsing gives the same values.
std::string format_report(const RunReport& report);
/// Throws std::invalid_argument on unknown keys or malformed values.
RunReport parse_report(const std::string& text);

/// sum_i ||A_i m - d_i||^2
double data_misfit(std::span<const DataBlock> blocks, const Vector& m);

/// alpha minimizing ||alpha A m - d||^2 over all blocks (0 when A m = 0).
double scale_factor(std::span<const DataBlock> blocks, const Vector& m);

/// Vertical low-pass matching a source band: in every column keep the
/// depth wavenumbers |kz| <= 2 f_max / v (cycles/m), v the mean model
/// velocity. f_min is not used; offsets illuminate the low wavenumbers.
struct BandProjection {
  FrequencyBand band;
  double velocity = 0.0;
};

Grid2D band_project(const Grid2D& grid, const BandProjection& projection);

/// ||m - P(truth)|| / ||P(truth)||, P the optional band projection.
/// Throws std::invalid_argument when P(truth) is zero.
double model_error(const Vector& m, const Reflectivity& truth,
                   const std::optional<BandProjection>& projection = std::nullopt);

/// Ratio of the peak |image| to the largest |image| outside a square of
/// half-width `exclusion` cells around the peak.
double peak_to_sidelobe(const Grid2D& image, Index exclusion);

struct PeakLocation {
  Index iz = 0;
  Index ix = 0;
};
PeakLocation peak_location(const Grid2D& image);

}  // namespace brls
