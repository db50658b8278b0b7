#pragma once

#include <complex>
#include <memory>
#include <span>

namespace brls {

/// Unnormalized 1D complex FFT of fixed length, backed by FFTW.
/// forward: X_k = sum_j x_j e^{-2 pi i jk/n}; backward uses e^{+...}.
/// Safe to execute from several threads; plans are shared and immutable.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<std::complex<double>> data) const;
  void backward(std::span<std::complex<double>> data) const;

 private:
  struct Plans;
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace brls
