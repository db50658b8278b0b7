#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "brls/grid_file.hpp"

namespace brls {

/// Nearest-rank percentile of |values|: the ceil(p/100 * n)-th smallest
/// magnitude. `percentile` must lie in (0, 100].
double clip_value(std::span<const float> values, double percentile);

/**
 * Binary 8-bit PGM ("P5") of a grid: n2 columns, n1 rows, row i1 holding
 * fast-axis sample i1. Values map linearly from [-c, c] to [0, 255] with
 * rounding and clamping, c = clip_value(payload, percentile). When c is
 * zero every pixel is 128.
 */
std::vector<std::uint8_t> render_pgm(const GridFile& grid, double percentile = 98.0);

void write_pgm(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace brls
