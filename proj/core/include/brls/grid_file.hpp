#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "brls/grid.hpp"

namespace brls {

enum class GridKind : std::uint32_t { velocity = 0, reflectivity = 1, image = 2, gather = 3 };

std::string to_string(GridKind kind);

class GridFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * On-disk 2D grid, all fields little-endian:
 *
 *   offset  size  field
 *        0     4  magic "BRG1"
 *        4     8  n1  uint64, fast axis (depth or time)
 *       12     8  n2  uint64, slow axis
 *       20     8  d1  float64
 *       28     8  d2  float64
 *       36     8  o1  float64
 *       44     8  o2  float64
 *       52     4  kind uint32 (0 velocity, 1 reflectivity, 2 image, 3 gather)
 *       56  4*n1*n2  payload float32, n1 contiguous
 */
struct GridFile {
  static constexpr std::size_t header_size = 56;

  GridKind kind = GridKind::image;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  double d1 = 1.0;
  double d2 = 1.0;
  double o1 = 0.0;
  double o2 = 0.0;
  std::vector<float> payload;

  static GridFile from_grid(const Grid2D& grid, GridKind kind);
  /// n1 -> nz, n2 -> nx.
  Grid2D to_grid() const;
};

std::vector<std::uint8_t> encode_grid_file(const GridFile& file);
/// Throws GridFileError on a bad magic, truncated or oversized payload,
/// unknown kind or non-finite header values.
GridFile decode_grid_file(const std::vector<std::uint8_t>& bytes);

void write_grid_file(const std::filesystem::path& path, const GridFile& file);
GridFile read_grid_file(const std::filesystem::path& path);

}  // namespace brls
