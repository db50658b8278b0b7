#pragma once

#include <span>
#include <vector>

#include "brls/linop.hpp"

namespace brls {

/// Regular 2D field indexed (iz, ix); depth is the fast axis, so column ix
/// occupies values[ix * nz, (ix + 1) * nz).
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(Index nz, Index nx, double dz, double dx, double fill = 0.0);

  Index nz() const { return nz_; }
  Index nx() const { return nx_; }
  Index size() const { return nz_ * nx_; }
  double dz() const { return dz_; }
  double dx() const { return dx_; }
  double origin_z() const { return origin_z_; }
  double origin_x() const { return origin_x_; }
  void set_origin(double oz, double ox) {
    origin_z_ = oz;
    origin_x_ = ox;
  }

  double& operator()(Index iz, Index ix) { return values_[static_cast<std::size_t>(ix * nz_ + iz)]; }
  double operator()(Index iz, Index ix) const { return values_[static_cast<std::size_t>(ix * nz_ + iz)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Copy of the values as a model vector (same ordering).
  Vector to_vector() const;
  /// Grid with this grid's shape and spacing holding `v`.
  Grid2D with_values(const Vector& v) const;

  bool same_shape(const Grid2D& other) const { return nz_ == other.nz_ && nx_ == other.nx_; }

 private:
  Index nz_ = 0;
  Index nx_ = 0;
  double dz_ = 1.0;
  double dx_ = 1.0;
  double origin_z_ = 0.0;
  double origin_x_ = 0.0;
  std::vector<double> values_;
};

/// Propagation velocity in m/s; every cell strictly positive and finite.
class VelocityModel {
 public:
  explicit VelocityModel(Grid2D grid);

  const Grid2D& grid() const { return grid_; }
  Index nz() const { return grid_.nz(); }
  Index nx() const { return grid_.nx(); }
  double dz() const { return grid_.dz(); }
  double dx() const { return grid_.dx(); }

  /// 1/v along depth row iz.
  std::vector<double> slowness_row(Index iz) const;
  double mean_velocity() const;

 private:
  Grid2D grid_;
};

/// Dimensionless reflectivity on the velocity grid; finite-valued.
struct Reflectivity {
  Grid2D grid;
};

}  // namespace brls
