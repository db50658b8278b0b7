#pragma once

#include <complex>
#include <span>
#include <vector>

#include "brls/fft.hpp"
#include "brls/linop.hpp"

namespace brls {

using Complex = std::complex<double>;

/// Phase sign of one depth step. Time dependence is e^{+i omega t}, so a
/// causal step (the wave travels dz and arrives later) multiplies by
/// e^{-i kz dz}; anticausal undoes it.
enum class Propagation { causal, anticausal };

/**
 * Split-step Fourier depth extrapolation over one depth interval.
 *
 * Fields live on a zero-padded lateral axis of padded_size() samples, the
 * first nx() of which are the physical grid. One step is
 *
 *   1. phase shift exp(-/+ i kz dz) in the lateral wavenumber domain with
 *      kz = sqrt((omega s_ref)^2 - kx^2) and s_ref the mean slowness of the
 *      row; components with kx^2 > (omega s_ref)^2 are set to zero;
 *   2. split-step correction exp(-/+ i omega (s(x) - s_ref) dz) on the
 *      physical samples (the padding is left untouched).
 *
 * The padded length is the smallest power of two >= 1.5 nx.
 */
class SplitStepExtrapolator {
 public:
  SplitStepExtrapolator(Index nx, double dx);

  static Index padded_size_for(Index nx);

  Index nx() const { return nx_; }
  Index padded_size() const { return npad_; }
  double dx() const { return dx_; }
  /// Angular lateral wavenumber of each padded FFT bin.
  const std::vector<double>& wavenumbers() const { return kx_; }

  static double reference_slowness(std::span<const double> slowness);

  /// Wavenumber-domain factors for stage 1 (padded_size entries).
  void phase_factors(double s_ref, double omega, double dz, Propagation dir,
                     std::span<Complex> out) const;
  /// Space-domain factors for stage 2 (nx entries).
  void correction_factors(std::span<const double> slowness, double s_ref, double omega, double dz,
                          Propagation dir, std::span<Complex> out) const;

  /// Stage 1 then stage 2 with precomputed factors, in place.
  void apply(std::span<Complex> field, std::span<const Complex> phase,
             std::span<const Complex> correction) const;
  /// Exact adjoint of apply() for the same factors: conjugated stage 2,
  /// then conjugated stage 1.
  void apply_adjoint(std::span<Complex> field, std::span<const Complex> phase,
                     std::span<const Complex> correction) const;

  /// One step computed from scratch, in place.
  void extrapolate(std::span<Complex> field, std::span<const double> slowness, double omega,
                   double dz, Propagation dir) const;

 private:
  Index nx_;
  Index npad_;
  double dx_;
  std::vector<double> kx_;
  Fft fft_;
};

}  // namespace brls
