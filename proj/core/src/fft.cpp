#include "brls/fft.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace brls {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Fft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plans(std::size_t n) {
    std::vector<std::complex<double>> scratch(n);
    const int len = static_cast<int>(n);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!forward || !backward) throw std::runtime_error("Fft: FFTW planning failed");
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft: length must be positive");
  plans_ = std::make_shared<const Plans>(n);
}

void Fft::forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw std::invalid_argument("Fft::forward: length mismatch");
  fftw_execute_dft(plans_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void Fft::backward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw std::invalid_argument("Fft::backward: length mismatch");
  fftw_execute_dft(plans_->backward, as_fftw(data.data()), as_fftw(data.data()));
}

}  // namespace brls
