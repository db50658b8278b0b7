#include "brls/synth.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "brls/grid_file.hpp"

namespace brls {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("experiment: " + what);
}

}  // namespace

void ExperimentSpec::validate() const {
  if (nz <= 0 || nx <= 0) bad("nz and nx must be positive");
  if (!(dz > 0.0) || !(dx > 0.0)) bad("dz and dx must be positive");
  if (model_kind == ModelKind::layered) {
    if (layer_velocities.size() != layer_depths.size() + 1)
      bad("layer_velocities needs one more entry than layer_depths");
    for (std::size_t i = 0; i < layer_depths.size(); ++i) {
      if (layer_depths[i] <= 0 || layer_depths[i] >= nz) bad("layer_depths must lie inside (0, nz)");
      if (i > 0 && layer_depths[i] <= layer_depths[i - 1]) bad("layer_depths must increase");
    }
  }
  if (model_kind == ModelKind::from_file && velocity_file.empty()) bad("velocity_file is required");
  if (n_shots <= 0) bad("n_shots must be positive");
  if (shot_interval <= 0) bad("shot_interval must be positive");
  if (n_receivers <= 0 || receiver_spacing <= 0) bad("receivers need positive count and spacing");
  if (!(dt > 0.0) || n_t <= 1) bad("need dt > 0 and n_t > 1");
  if (!(f_dom > 0.0) || !(f_dom < 0.5 / dt)) bad("f_dom must lie in (0, Nyquist)");
  if (!(band.f_min > 0.0) || band.f_min > band.f_max || !(band.f_max < 0.5 / dt))
    bad("band must satisfy 0 < f_min <= f_max < Nyquist");
  if (!(noise_level >= 0.0)) bad("noise_level must be >= 0");
  if (!(1 <= k && k <= q && q <= n_shots)) bad("window needs 1 <= k <= q <= n_shots");
  if (!(lambda >= 0.0)) bad("lambda must be >= 0");
  if (cg_max_iterations < 1 || !(cg_tolerance > 0.0)) bad("cg settings must be positive");
  if (lsm_iterations < 1) bad("lsm_iterations must be >= 1");
  make_geometry(*this).validate(nx);
}

VelocityModel make_velocity(const ExperimentSpec& spec) {
  switch (spec.model_kind) {
    case ModelKind::constant:
      return VelocityModel(Grid2D(spec.nz, spec.nx, spec.dz, spec.dx, spec.v0));
    case ModelKind::layered: {
      Grid2D g(spec.nz, spec.nx, spec.dz, spec.dx);
      for (Index iz = 0; iz < spec.nz; ++iz) {
        std::size_t layer = 0;
        while (layer < spec.layer_depths.size() && iz >= spec.layer_depths[layer]) ++layer;
        for (Index ix = 0; ix < spec.nx; ++ix) g(iz, ix) = spec.layer_velocities[layer];
      }
      return VelocityModel(std::move(g));
    }
    case ModelKind::lens: {
      Grid2D g(spec.nz, spec.nx, spec.dz, spec.dx);
      const double two_sigma2 = 2.0 * spec.lens_radius * spec.lens_radius;
      for (Index ix = 0; ix < spec.nx; ++ix) {
        for (Index iz = 0; iz < spec.nz; ++iz) {
          const double rz = static_cast<double>(iz) - spec.lens_center_z;
          const double rx = static_cast<double>(ix) - spec.lens_center_x;
          g(iz, ix) = spec.v0 - spec.lens_amplitude * std::exp(-(rz * rz + rx * rx) / two_sigma2);
        }
      }
      return VelocityModel(std::move(g));
    }
    case ModelKind::from_file: {
      GridFile file = read_grid_file(spec.velocity_file);
      Grid2D g = file.to_grid();
      if (g.nz() != spec.nz || g.nx() != spec.nx) {
        std::ostringstream msg;
        msg << "velocity file " << spec.velocity_file << " is " << g.nz() << "x" << g.nx()
            << ", expected " << spec.nz << "x" << spec.nx;
        throw std::invalid_argument(msg.str());
      }
      return VelocityModel(std::move(g));
    }
  }
  throw std::invalid_argument("make_velocity: unknown model kind");
}

AcquisitionGeometry make_geometry(const ExperimentSpec& spec) {
  AcquisitionGeometry geom;
  geom.n_t = spec.n_t;
  geom.dt = spec.dt;
  for (Index s = 0; s < spec.n_shots; ++s) geom.shot_positions.push_back(spec.first_shot + s * spec.shot_interval);
  for (Index r = 0; r < spec.n_receivers; ++r) geom.receiver_offsets.push_back(spec.near_offset - r * spec.receiver_spacing);
  return geom;
}

Wavelet make_wavelet(const ExperimentSpec& spec) {
  return ricker(spec.f_dom, spec.dt, static_cast<int>(spec.n_t), spec.wavelet_delay);
}

WemModeling make_modeling(const ExperimentSpec& spec, const VelocityModel& velocity) {
  return WemModeling(velocity, make_geometry(spec), make_wavelet(spec), spec.band);
}

Reflectivity reflectivity_from_velocity(const VelocityModel& velocity) {
  const Grid2D& v = velocity.grid();
  Grid2D r(v.nz(), v.nx(), v.dz(), v.dx());
  r.set_origin(v.origin_z(), v.origin_x());
  for (Index ix = 0; ix < v.nx(); ++ix) {
    for (Index iz = 0; iz + 1 < v.nz(); ++iz) {
      r(iz, ix) = (v(iz + 1, ix) - v(iz, ix)) / (v(iz + 1, ix) + v(iz, ix));
    }
  }
  return Reflectivity{std::move(r)};
}

std::vector<DataBlock> make_blocks(const WemModeling& modeling, const std::vector<ShotGather>& gathers) {
  std::vector<DataBlock> blocks;
  blocks.reserve(gathers.size());
  for (std::size_t s = 0; s < gathers.size(); ++s) {
    blocks.push_back(DataBlock{static_cast<Index>(s), modeling.shot_operator(static_cast<Index>(s)),
                               gather_to_vector(gathers[s])});
  }
  return blocks;
}

SyntheticData synthesize_data(const ExperimentSpec& spec) {
  spec.validate();
  VelocityModel velocity = make_velocity(spec);
  Reflectivity truth = reflectivity_from_velocity(velocity);
  const WemModeling modeling = make_modeling(spec, velocity);
  std::vector<ShotGather> gathers = modeling.survey_forward(truth);

  if (spec.noise_level > 0.0) {
    double sum2 = 0.0;
    std::size_t count = 0;
    for (const auto& g : gathers) {
      for (double v : g.traces) sum2 += v * v;
      count += g.traces.size();
    }
    const double sigma = spec.noise_level * std::sqrt(sum2 / static_cast<double>(count));
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& g : gathers) {
      for (double& v : g.traces) v += sigma * normal(rng);
    }
  }

  SyntheticData out{std::move(velocity), std::move(truth), modeling.geometry(), {}, {}};
  out.blocks = make_blocks(modeling, gathers);
  out.gathers = std::move(gathers);
  return out;
}

}  // namespace brls
