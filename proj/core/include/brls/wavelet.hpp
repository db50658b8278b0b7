#pragma once

#include <complex>
#include <vector>

namespace brls {

struct Wavelet {
  std::vector<double> samples;
  double dt = 0.0;
  double dominant_frequency = 0.0;
  double delay = 0.0;

  /// sum_j w_j exp(-i omega j dt)
  std::complex<double> spectrum(double omega) const;
};

/// Ricker wavelet (1 - 2u^2) exp(-u^2), u = pi f (t - delay), sampled at
/// t = i dt. Peaks at 1 when t = delay. Throws std::invalid_argument when
/// the frequency is not below Nyquist.
Wavelet ricker(double dominant_frequency, double dt, int n_samples, double delay);

}  // namespace brls
