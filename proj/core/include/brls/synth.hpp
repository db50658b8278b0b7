#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brls/brls.hpp"
#include "brls/grid.hpp"
#include "brls/wem.hpp"

namespace brls {

enum class ModelKind { constant, layered, lens, from_file };

/**
 * Desk-scale experiment description. Defaults are a reduced replica of a
 * 2D marine survey: a 60 x 200 layered model at 10 m, 30 off-end shots
 * with 50 receivers trailing on the left, a 20 Hz Ricker source, and a
 * 5-shot window sliding by 3 shots.
 */
struct ExperimentSpec {
  ModelKind model_kind = ModelKind::layered;
  Index nz = 60;
  Index nx = 200;
  double dz = 10.0;
  double dx = 10.0;

  /// constant: the velocity; lens: the background.
  double v0 = 2000.0;
  /// layered: interface depths in cells (row where the next layer starts)
  /// and one more velocity than interfaces.
  std::vector<Index> layer_depths{15, 30, 45};
  std::vector<double> layer_velocities{1500.0, 1800.0, 2100.0, 2500.0};
  /// lens: Gaussian low-velocity anomaly, centre and width in cells.
  double lens_center_z = 30.0;
  double lens_center_x = 100.0;
  double lens_radius = 15.0;
  double lens_amplitude = 300.0;
  std::string velocity_file;

  Index n_shots = 30;
  Index first_shot = 50;
  Index shot_interval = 5;
  Index n_receivers = 50;
  Index receiver_spacing = 1;
  /// Offset of the nearest receiver; receivers extend to the left from it.
  Index near_offset = 0;

  double f_dom = 20.0;
  double dt = 0.004;
  Index n_t = 256;
  double wavelet_delay = 0.075;
  FrequencyBand band{5.0, 45.0};

  double noise_level = 0.0;
  Index q = 5;
  Index k = 3;
  double lambda = 0.0;
  int cg_max_iterations = 30;
  double cg_tolerance = 1e-2;
  int lsm_iterations = 8;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

VelocityModel make_velocity(const ExperimentSpec& spec);
AcquisitionGeometry make_geometry(const ExperimentSpec& spec);
Wavelet make_wavelet(const ExperimentSpec& spec);
WemModeling make_modeling(const ExperimentSpec& spec, const VelocityModel& velocity);

/// r(z, x) = (v(z+1, x) - v(z, x)) / (v(z+1, x) + v(z, x)); last row zero.
Reflectivity reflectivity_from_velocity(const VelocityModel& velocity);

struct SyntheticData {
  VelocityModel velocity;
  Reflectivity truth;
  AcquisitionGeometry geometry;
  std::vector<DataBlock> blocks;
  std::vector<ShotGather> gathers;
};

/// Noise-free Born data from the truth plus noise_level * RMS(d) * g with g
/// standard normal from std::mt19937_64(seed), drawn in shot-major order.
SyntheticData synthesize_data(const ExperimentSpec& spec);

/// One DataBlock per gather, operators taken from `modeling`.
std::vector<DataBlock> make_blocks(const WemModeling& modeling, const std::vector<ShotGather>& gathers);

}  // namespace brls
