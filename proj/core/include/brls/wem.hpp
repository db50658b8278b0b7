#pragma once

#include <memory>
#include <vector>

#include "brls/extrapolator.hpp"
#include "brls/grid.hpp"
#include "brls/linop.hpp"
#include "brls/wavelet.hpp"

namespace brls {

/// Sources and off-end receivers on the surface row, in grid cells.
struct AcquisitionGeometry {
  std::vector<Index> shot_positions;
  /// Lateral offsets of the receivers relative to their shot, the same for
  /// every shot.
  std::vector<Index> receiver_offsets;
  Index n_t = 0;
  double dt = 0.0;

  Index n_shots() const { return static_cast<Index>(shot_positions.size()); }
  Index n_receivers() const { return static_cast<Index>(receiver_offsets.size()); }
  /// Throws std::invalid_argument when a source or receiver falls off the grid.
  void validate(Index nx) const;
};

struct ShotGather {
  Index shot_index = 0;
  /// n_receivers x n_t, time fastest: traces[r * n_t + j].
  std::vector<double> traces;
  Index n_receivers = 0;
  Index n_t = 0;
};

struct FrequencyBand {
  double f_min = 0.0;
  double f_max = 0.0;
};

/**
 * Everything the shot operators of one survey share: the velocity model,
 * the modeled frequencies, the extrapolation factors for every
 * (depth, frequency) pair, the wavelet spectrum and the time/frequency
 * transform table.
 *
 * Modeled frequencies are the DFT bins f = k / (n_t dt) inside the band.
 * Time traces are synthesized as d(t_j) = (2/n_t) Re sum_f D(f) e^{i w t_j},
 * the inverse DFT of the Hermitian-completed band spectrum.
 */
class WemContext {
 public:
  WemContext(VelocityModel velocity, const AcquisitionGeometry& geometry, const Wavelet& wavelet,
             FrequencyBand band);

  const VelocityModel& velocity() const { return velocity_; }
  const SplitStepExtrapolator& extrapolator() const { return extrapolator_; }
  Index nz() const { return velocity_.nz(); }
  Index nx() const { return velocity_.nx(); }
  Index n_t() const { return n_t_; }
  double dt() const { return dt_; }
  Index n_freq() const { return static_cast<Index>(omegas_.size()); }
  const std::vector<double>& omegas() const { return omegas_; }
  Complex source_spectrum(Index f) const { return source_spectrum_[static_cast<std::size_t>(f)]; }

  /// Stage factors for the step from depth row iz to iz + 1 at frequency f.
  std::span<const Complex> phase(Index iz, Index f) const;
  std::span<const Complex> correction(Index iz, Index f) const;

  /// One causal depth step; leaves the padding zeroed.
  void step(std::span<Complex> field, Index iz, Index f) const;
  /// Adjoint of step().
  void step_adjoint(std::span<Complex> field, Index iz, Index f) const;

  /// e^{i w_f t_j} for j < n_t.
  std::span<const Complex> time_kernel(Index f) const;

 private:
  VelocityModel velocity_;
  SplitStepExtrapolator extrapolator_;
  Index n_t_;
  double dt_;
  std::vector<double> omegas_;
  std::vector<Complex> source_spectrum_;
  std::vector<Complex> phase_;       // [iz][f][npad]
  std::vector<Complex> correction_;  // [iz][f][nx]
  std::vector<Complex> time_kernel_; // [f][n_t]
};

/**
 * Linearized (Born) de-migration for one shot: reflectivity (nz*nx, depth
 * fastest) to that shot's traces (n_receivers*n_t, time fastest).
 *
 * Forward: the source wavefield (wavelet spectrum at the shot position,
 * causally extrapolated down) is scaled by the reflectivity at each depth
 * and the scattered field is causally extrapolated up to the surface,
 * sampled at the receivers and transformed to time. The adjoint runs the
 * chain backwards with every stage replaced by its adjoint, which is shot
 * profile migration with a zero-lag cross-correlation imaging condition.
 */
class ShotOperator final : public LinearOperator {
 public:
  ShotOperator(std::shared_ptr<const WemContext> context, Index shot_position,
               std::vector<Index> receiver_positions);

  Index model_dim() const override { return ctx_->nz() * ctx_->nx(); }
  Index data_dim() const override { return static_cast<Index>(receivers_.size()) * ctx_->n_t(); }
  void forward(ConstVectorRef in, VectorRef out) const override;
  void adjoint(ConstVectorRef in, VectorRef out) const override;

  Index shot_position() const { return shot_; }
  const std::vector<Index>& receiver_positions() const { return receivers_; }
  /// Downgoing source wavefield at (iz, ix) for frequency f.
  Complex source_field(Index f, Index iz, Index ix) const;

 private:
  std::shared_ptr<const WemContext> ctx_;
  Index shot_;
  std::vector<Index> receivers_;
  std::vector<Complex> source_;  // [f][iz][ix]
};

/// Builds shot operators and survey-level forward/adjoint for one velocity
/// model, geometry, wavelet and band.
class WemModeling {
 public:
  WemModeling(VelocityModel velocity, AcquisitionGeometry geometry, Wavelet wavelet,
              FrequencyBand band);

  const AcquisitionGeometry& geometry() const { return geometry_; }
  const std::shared_ptr<const WemContext>& context() const { return ctx_; }

  std::shared_ptr<const ShotOperator> shot_operator(Index shot_index) const;
  /// All shot operators stacked in acquisition order.
  std::shared_ptr<const StackedOperator> survey_operator() const;

  std::vector<ShotGather> survey_forward(const Reflectivity& reflectivity) const;
  /// Sum of the per-shot migrated images, accumulated in shot order.
  Reflectivity survey_adjoint(const std::vector<ShotGather>& gathers) const;

 private:
  AcquisitionGeometry geometry_;
  std::shared_ptr<const WemContext> ctx_;
  std::vector<std::shared_ptr<const ShotOperator>> shots_;
};

/// One-shot convenience form of WemModeling::shot_operator.
std::shared_ptr<const ShotOperator> shot_operator(const VelocityModel& velocity,
                                                  const AcquisitionGeometry& geometry,
                                                  const Wavelet& wavelet, Index shot_index,
                                                  FrequencyBand band);

/// Gather data as one vector and back.
Vector gather_to_vector(const ShotGather& gather);
ShotGather vector_to_gather(Index shot_index, Index n_receivers, Index n_t, const Vector& v);

}  // namespace brls
