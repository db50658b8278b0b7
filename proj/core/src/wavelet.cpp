#include "brls/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace brls {

std::complex<double> Wavelet::spectrum(double omega) const {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t j = 0; j < samples.size(); ++j) {
    sum += samples[j] * std::polar(1.0, -omega * static_cast<double>(j) * dt);
  }
  return sum;
}

Wavelet ricker(double dominant_frequency, double dt, int n_samples, double delay) {
  if (!(dt > 0.0)) throw std::invalid_argument("ricker: dt must be positive");
  if (n_samples < 1) throw std::invalid_argument("ricker: need at least one sample");
  if (!(dominant_frequency > 0.0) || !(dominant_frequency < 0.5 / dt))
    throw std::invalid_argument("ricker: dominant frequency must lie in (0, Nyquist)");

  Wavelet w;
  w.dt = dt;
  w.dominant_frequency = dominant_frequency;
  w.delay = delay;
  w.samples.resize(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const double u = std::numbers::pi * dominant_frequency * (i * dt - delay);
    const double u2 = u * u;
    w.samples[static_cast<std::size_t>(i)] = (1.0 - 2.0 * u2) * std::exp(-u2);
  }
  return w;
}

}  // namespace brls
