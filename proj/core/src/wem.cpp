#include "brls/wem.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace brls {

void AcquisitionGeometry::validate(Index nx) const {
  if (shot_positions.empty()) throw std::invalid_argument("geometry: no shots");
  if (receiver_offsets.empty()) throw std::invalid_argument("geometry: no receivers");
  if (n_t <= 0 || !(dt > 0.0)) throw std::invalid_argument("geometry: need n_t > 0 and dt > 0");
  for (std::size_t s = 0; s < shot_positions.size(); ++s) {
    const Index xs = shot_positions[s];
    if (xs < 0 || xs >= nx) {
      std::ostringstream msg;
      msg << "geometry: shot " << s << " at x-index " << xs << " is outside [0, " << nx << ")";
      throw std::invalid_argument(msg.str());
    }
    for (Index off : receiver_offsets) {
      if (xs + off < 0 || xs + off >= nx) {
        std::ostringstream msg;
        msg << "geometry: shot " << s << " has a receiver at x-index " << xs + off
            << " outside [0, " << nx << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

WemContext::WemContext(VelocityModel velocity, const AcquisitionGeometry& geometry,
                       const Wavelet& wavelet, FrequencyBand band)
    : velocity_(std::move(velocity)),
      extrapolator_(velocity_.nx(), velocity_.dx()),
      n_t_(geometry.n_t),
      dt_(geometry.dt) {
  geometry.validate(velocity_.nx());
  const double nyquist = 0.5 / dt_;
  if (!(band.f_min > 0.0) || !(band.f_max < nyquist) || band.f_min > band.f_max)
    throw std::invalid_argument("wem: frequency band must satisfy 0 < f_min <= f_max < Nyquist");
  if (std::abs(wavelet.dt - dt_) > 1e-12 * dt_)
    throw std::invalid_argument("wem: wavelet dt differs from the recording dt");

  const double df = 1.0 / (static_cast<double>(n_t_) * dt_);
  for (Index k = 1; 2 * k < n_t_; ++k) {
    const double f = static_cast<double>(k) * df;
    if (f >= band.f_min && f <= band.f_max) omegas_.push_back(2.0 * std::numbers::pi * f);
  }
  if (omegas_.empty()) throw std::invalid_argument("wem: no frequency bins inside the band");

  const Index nf = n_freq();
  const Index nz = velocity_.nz();
  const Index nx = velocity_.nx();
  const Index npad = extrapolator_.padded_size();
  const double dz = velocity_.dz();

  source_spectrum_.reserve(static_cast<std::size_t>(nf));
  for (double w : omegas_) source_spectrum_.push_back(wavelet.spectrum(w));

  phase_.resize(static_cast<std::size_t>(nz * nf * npad));
  correction_.resize(static_cast<std::size_t>(nz * nf * nx));
  for (Index iz = 0; iz < nz; ++iz) {
    const std::vector<double> slowness = velocity_.slowness_row(iz);
    const double s_ref = SplitStepExtrapolator::reference_slowness(slowness);
    for (Index f = 0; f < nf; ++f) {
      const double w = omegas_[static_cast<std::size_t>(f)];
      extrapolator_.phase_factors(
          s_ref, w, dz, Propagation::causal,
          std::span<Complex>(phase_).subspan(static_cast<std::size_t>((iz * nf + f) * npad),
                                             static_cast<std::size_t>(npad)));
      extrapolator_.correction_factors(
          slowness, s_ref, w, dz, Propagation::causal,
          std::span<Complex>(correction_).subspan(static_cast<std::size_t>((iz * nf + f) * nx),
                                                  static_cast<std::size_t>(nx)));
    }
  }

  time_kernel_.resize(static_cast<std::size_t>(nf * n_t_));
  for (Index f = 0; f < nf; ++f) {
    for (Index j = 0; j < n_t_; ++j) {
      time_kernel_[static_cast<std::size_t>(f * n_t_ + j)] =
          std::polar(1.0, omegas_[static_cast<std::size_t>(f)] * static_cast<double>(j) * dt_);
    }
  }
}

std::span<const Complex> WemContext::phase(Index iz, Index f) const {
  const Index npad = extrapolator_.padded_size();
  return std::span<const Complex>(phase_).subspan(static_cast<std::size_t>((iz * n_freq() + f) * npad),
                                                  static_cast<std::size_t>(npad));
}

std::span<const Complex> WemContext::correction(Index iz, Index f) const {
  return std::span<const Complex>(correction_).subspan(
      static_cast<std::size_t>((iz * n_freq() + f) * nx()), static_cast<std::size_t>(nx()));
}

std::span<const Complex> WemContext::time_kernel(Index f) const {
  return std::span<const Complex>(time_kernel_).subspan(static_cast<std::size_t>(f * n_t_),
                                                        static_cast<std::size_t>(n_t_));
}

void WemContext::step(std::span<Complex> field, Index iz, Index f) const {
  extrapolator_.apply(field, phase(iz, f), correction(iz, f));
  std::fill(field.begin() + nx(), field.end(), Complex{0.0, 0.0});
}

void WemContext::step_adjoint(std::span<Complex> field, Index iz, Index f) const {
  std::fill(field.begin() + nx(), field.end(), Complex{0.0, 0.0});
  extrapolator_.apply_adjoint(field, phase(iz, f), correction(iz, f));
}

ShotOperator::ShotOperator(std::shared_ptr<const WemContext> context, Index shot_position,
                           std::vector<Index> receiver_positions)
    : ctx_(std::move(context)), shot_(shot_position), receivers_(std::move(receiver_positions)) {
  const Index nz = ctx_->nz();
  const Index nx = ctx_->nx();
  const Index nf = ctx_->n_freq();
  if (shot_ < 0 || shot_ >= nx) throw std::invalid_argument("ShotOperator: shot outside the grid");
  if (receivers_.empty()) throw std::invalid_argument("ShotOperator: no receivers");
  for (Index r : receivers_) {
    if (r < 0 || r >= nx) throw std::invalid_argument("ShotOperator: receiver outside the grid");
  }

  source_.resize(static_cast<std::size_t>(nf * nz * nx));
  std::vector<Complex> field(static_cast<std::size_t>(ctx_->extrapolator().padded_size()));
  for (Index f = 0; f < nf; ++f) {
    std::fill(field.begin(), field.end(), Complex{0.0, 0.0});
    field[static_cast<std::size_t>(shot_)] = ctx_->source_spectrum(f);
    for (Index iz = 0; iz < nz; ++iz) {
      std::copy_n(field.begin(), nx, source_.begin() + (f * nz + iz) * nx);
      if (iz + 1 < nz) ctx_->step(field, iz, f);
    }
  }
}

Complex ShotOperator::source_field(Index f, Index iz, Index ix) const {
  return source_[static_cast<std::size_t>((f * ctx_->nz() + iz) * ctx_->nx() + ix)];
}

void ShotOperator::forward(ConstVectorRef in, VectorRef out) const {
  const Index nz = ctx_->nz();
  const Index nx = ctx_->nx();
  const Index nf = ctx_->n_freq();
  const Index nt = ctx_->n_t();
  const auto nr = static_cast<Index>(receivers_.size());

  // Row-major copy of the model so each depth row is contiguous.
  Eigen::MatrixXd rows(nz, nx);
  for (Index ix = 0; ix < nx; ++ix) rows.col(ix) = in.segment(ix * nz, nz);
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> model = rows;

  std::vector<Complex> field(static_cast<std::size_t>(ctx_->extrapolator().padded_size()));
  std::vector<Complex> recorded(static_cast<std::size_t>(nr * nf));
  for (Index f = 0; f < nf; ++f) {
    std::fill(field.begin(), field.end(), Complex{0.0, 0.0});
    for (Index iz = nz - 1; iz >= 0; --iz) {
      if (iz + 1 < nz) ctx_->step(field, iz, f);
      const Complex* src = source_.data() + (f * nz + iz) * nx;
      const double* m = model.data() + iz * nx;
      for (Index ix = 0; ix < nx; ++ix) field[static_cast<std::size_t>(ix)] += m[ix] * src[ix];
    }
    for (Index r = 0; r < nr; ++r) {
      recorded[static_cast<std::size_t>(r * nf + f)] = field[static_cast<std::size_t>(receivers_[static_cast<std::size_t>(r)])];
    }
  }

  const double scale = 2.0 / static_cast<double>(nt);
  for (Index r = 0; r < nr; ++r) {
    auto trace = out.segment(r * nt, nt);
    trace.setZero();
    for (Index f = 0; f < nf; ++f) {
      const Complex value = recorded[static_cast<std::size_t>(r * nf + f)] * scale;
      const auto kernel = ctx_->time_kernel(f);
      for (Index j = 0; j < nt; ++j) trace[j] += (value * kernel[static_cast<std::size_t>(j)]).real();
    }
  }
}

void ShotOperator::adjoint(ConstVectorRef in, VectorRef out) const {
  const Index nz = ctx_->nz();
  const Index nx = ctx_->nx();
  const Index nf = ctx_->n_freq();
  const Index nt = ctx_->n_t();
  const auto nr = static_cast<Index>(receivers_.size());

  const double scale = 2.0 / static_cast<double>(nt);
  std::vector<Complex> recorded(static_cast<std::size_t>(nr * nf));
  for (Index r = 0; r < nr; ++r) {
    const auto trace = in.segment(r * nt, nt);
    for (Index f = 0; f < nf; ++f) {
      const auto kernel = ctx_->time_kernel(f);
      Complex sum{0.0, 0.0};
      for (Index j = 0; j < nt; ++j) sum += trace[j] * std::conj(kernel[static_cast<std::size_t>(j)]);
      recorded[static_cast<std::size_t>(r * nf + f)] = sum * scale;
    }
  }

  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> image =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(nz, nx);
  std::vector<Complex> field(static_cast<std::size_t>(ctx_->extrapolator().padded_size()));
  for (Index f = 0; f < nf; ++f) {
    std::fill(field.begin(), field.end(), Complex{0.0, 0.0});
    for (Index r = 0; r < nr; ++r) {
      field[static_cast<std::size_t>(receivers_[static_cast<std::size_t>(r)])] +=
          recorded[static_cast<std::size_t>(r * nf + f)];
    }
    for (Index iz = 0; iz < nz; ++iz) {
      const Complex* src = source_.data() + (f * nz + iz) * nx;
      double* img = image.data() + iz * nx;
      for (Index ix = 0; ix < nx; ++ix) {
        img[ix] += (std::conj(src[ix]) * field[static_cast<std::size_t>(ix)]).real();
      }
      if (iz + 1 < nz) ctx_->step_adjoint(field, iz, f);
    }
  }

  for (Index ix = 0; ix < nx; ++ix) out.segment(ix * nz, nz) = image.col(ix);
}

WemModeling::WemModeling(VelocityModel velocity, AcquisitionGeometry geometry, Wavelet wavelet,
                         FrequencyBand band)
    : geometry_(std::move(geometry)) {
  ctx_ = std::make_shared<const WemContext>(std::move(velocity), geometry_, wavelet, band);
  shots_.reserve(geometry_.shot_positions.size());
  for (Index xs : geometry_.shot_positions) {
    std::vector<Index> receivers;
    receivers.reserve(geometry_.receiver_offsets.size());
    for (Index off : geometry_.receiver_offsets) receivers.push_back(xs + off);
    shots_.push_back(std::make_shared<const ShotOperator>(ctx_, xs, std::move(receivers)));
  }
}

std::shared_ptr<const ShotOperator> WemModeling::shot_operator(Index shot_index) const {
  if (shot_index < 0 || shot_index >= geometry_.n_shots())
    throw std::out_of_range("WemModeling: shot index out of range");
  return shots_[static_cast<std::size_t>(shot_index)];
}

std::shared_ptr<const StackedOperator> WemModeling::survey_operator() const {
  return stack_rows(std::vector<OperatorPtr>(shots_.begin(), shots_.end()));
}

std::vector<ShotGather> WemModeling::survey_forward(const Reflectivity& reflectivity) const {
  if (reflectivity.grid.nz() != ctx_->nz() || reflectivity.grid.nx() != ctx_->nx())
    throw DimensionError("survey_forward: reflectivity grid does not match the velocity grid");
  const Vector m = reflectivity.grid.to_vector();
  std::vector<ShotGather> gathers;
  gathers.reserve(shots_.size());
  for (std::size_t s = 0; s < shots_.size(); ++s) {
    gathers.push_back(vector_to_gather(static_cast<Index>(s), geometry_.n_receivers(), geometry_.n_t,
                                       shots_[s]->apply_forward(m)));
  }
  return gathers;
}

Reflectivity WemModeling::survey_adjoint(const std::vector<ShotGather>& gathers) const {
  if (gathers.size() != shots_.size()) throw DimensionError("survey_adjoint: one gather per shot required");
  Vector image = Vector::Zero(ctx_->nz() * ctx_->nx());
  for (std::size_t s = 0; s < shots_.size(); ++s) {
    if (gathers[s].n_receivers != geometry_.n_receivers() || gathers[s].n_t != geometry_.n_t)
      throw DimensionError("survey_adjoint: gather shape does not match the geometry");
    image += shots_[s]->apply_adjoint(gather_to_vector(gathers[s]));
  }
  const auto& v = ctx_->velocity().grid();
  Grid2D grid(v.nz(), v.nx(), v.dz(), v.dx());
  return Reflectivity{grid.with_values(image)};
}

std::shared_ptr<const ShotOperator> shot_operator(const VelocityModel& velocity,
                                                  const AcquisitionGeometry& geometry,
                                                  const Wavelet& wavelet, Index shot_index,
                                                  FrequencyBand band) {
  if (shot_index < 0 || shot_index >= geometry.n_shots())
    throw std::out_of_range("shot_operator: shot index out of range");
  auto ctx = std::make_shared<const WemContext>(velocity, geometry, wavelet, band);
  const Index xs = geometry.shot_positions[static_cast<std::size_t>(shot_index)];
  std::vector<Index> receivers;
  for (Index off : geometry.receiver_offsets) receivers.push_back(xs + off);
  return std::make_shared<const ShotOperator>(std::move(ctx), xs, std::move(receivers));
}

Vector gather_to_vector(const ShotGather& gather) {
  return Eigen::Map<const Vector>(gather.traces.data(), static_cast<Index>(gather.traces.size()));
}

ShotGather vector_to_gather(Index shot_index, Index n_receivers, Index n_t, const Vector& v) {
  if (v.size() != n_receivers * n_t) throw DimensionError("vector_to_gather: length != n_receivers*n_t");
  ShotGather g;
  g.shot_index = shot_index;
  g.n_receivers = n_receivers;
  g.n_t = n_t;
  g.traces.assign(v.data(), v.data() + v.size());
  return g;
}

}  // namespace brls
