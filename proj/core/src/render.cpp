#include "brls/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace brls {

double clip_value(std::span<const float> values, double percentile) {
  if (!(percentile > 0.0 && percentile <= 100.0))
    throw std::invalid_argument("clip percentile must lie in (0, 100]");
  if (values.empty()) return 0.0;
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](float v) { return std::abs(static_cast<double>(v)); });
  const auto n = mags.size();
  auto rank = static_cast<std::size_t>(std::ceil(percentile / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(rank - 1), mags.end());
  return mags[rank - 1];
}

std::vector<std::uint8_t> render_pgm(const GridFile& grid, double percentile) {
  if (grid.payload.size() != grid.n1 * grid.n2) throw GridFileError("render: payload size does not match n1*n2");
  const double c = clip_value(grid.payload, percentile);
  const std::string header = "P5\n" + std::to_string(grid.n2) + " " + std::to_string(grid.n1) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + grid.payload.size());
  for (std::uint64_t i1 = 0; i1 < grid.n1; ++i1) {
    for (std::uint64_t i2 = 0; i2 < grid.n2; ++i2) {
      const double v = grid.payload[i2 * grid.n1 + i1];
      double level = 128.0;
      if (c > 0.0) level = std::clamp(std::round((v + c) / (2.0 * c) * 255.0), 0.0, 255.0);
      out.push_back(static_cast<std::uint8_t>(level));
    }
  }
  return out;
}

void write_pgm(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace brls
