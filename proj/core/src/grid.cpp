#include "brls/grid.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace brls {

Grid2D::Grid2D(Index nz, Index nx, double dz, double dx, double fill)
    : nz_(nz), nx_(nx), dz_(dz), dx_(dx) {
  if (nz <= 0 || nx <= 0) throw std::invalid_argument("Grid2D: dimensions must be positive");
  if (!(dz > 0.0) || !(dx > 0.0) || !std::isfinite(dz) || !std::isfinite(dx))
    throw std::invalid_argument("Grid2D: spacings must be positive and finite");
  values_.assign(static_cast<std::size_t>(nz * nx), fill);
}

Vector Grid2D::to_vector() const {
  return Eigen::Map<const Vector>(values_.data(), static_cast<Index>(values_.size()));
}

Grid2D Grid2D::with_values(const Vector& v) const {
  if (v.size() != size()) throw DimensionError("Grid2D::with_values: vector length != nz*nx");
  Grid2D out = *this;
  Eigen::Map<Vector>(out.values_.data(), v.size()) = v;
  return out;
}

VelocityModel::VelocityModel(Grid2D grid) : grid_(std::move(grid)) {
  if (grid_.size() == 0) throw std::invalid_argument("VelocityModel: empty grid");
  for (double v : grid_.values()) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("VelocityModel: velocities must be positive and finite");
  }
}

std::vector<double> VelocityModel::slowness_row(Index iz) const {
  std::vector<double> s(static_cast<std::size_t>(nx()));
  for (Index ix = 0; ix < nx(); ++ix) s[static_cast<std::size_t>(ix)] = 1.0 / grid_(iz, ix);
  return s;
}

double VelocityModel::mean_velocity() const {
  const auto v = grid_.values();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace brls
