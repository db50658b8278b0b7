#include "brls/extrapolator.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace brls {

namespace {

double sign_of(Propagation dir) { return dir == Propagation::causal ? -1.0 : 1.0; }

void check_size(std::size_t got, Index expected, const char* what) {
  if (static_cast<Index>(got) != expected) throw DimensionError(what);
}

}  // namespace

Index SplitStepExtrapolator::padded_size_for(Index nx) {
  const Index target = (3 * nx + 1) / 2;
  Index n = 1;
  while (n < target) n *= 2;
  return n;
}

SplitStepExtrapolator::SplitStepExtrapolator(Index nx, double dx)
    : nx_(nx), npad_(padded_size_for(nx)), dx_(dx), fft_(static_cast<std::size_t>(padded_size_for(nx))) {
  if (nx <= 0 || !(dx > 0.0)) throw std::invalid_argument("SplitStepExtrapolator: bad grid");
  kx_.resize(static_cast<std::size_t>(npad_));
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(npad_) * dx);
  for (Index j = 0; j < npad_; ++j) {
    const Index signed_j = j < npad_ / 2 ? j : j - npad_;
    kx_[static_cast<std::size_t>(j)] = dk * static_cast<double>(signed_j);
  }
}

double SplitStepExtrapolator::reference_slowness(std::span<const double> slowness) {
  return std::accumulate(slowness.begin(), slowness.end(), 0.0) / static_cast<double>(slowness.size());
}

void SplitStepExtrapolator::phase_factors(double s_ref, double omega, double dz, Propagation dir,
                                          std::span<Complex> out) const {
  check_size(out.size(), npad_, "phase_factors: output must have padded_size entries");
  const double k = omega * s_ref;
  const double k2 = k * k;
  const double sign = sign_of(dir);
  for (Index j = 0; j < npad_; ++j) {
    const double kx = kx_[static_cast<std::size_t>(j)];
    const double kz2 = k2 - kx * kx;
    out[static_cast<std::size_t>(j)] = kz2 < 0.0 ? Complex{0.0, 0.0} : std::polar(1.0, sign * std::sqrt(kz2) * dz);
  }
}

void SplitStepExtrapolator::correction_factors(std::span<const double> slowness, double s_ref,
                                               double omega, double dz, Propagation dir,
                                               std::span<Complex> out) const {
  check_size(slowness.size(), nx_, "correction_factors: slowness must have nx entries");
  check_size(out.size(), nx_, "correction_factors: output must have nx entries");
  const double sign = sign_of(dir);
  for (Index ix = 0; ix < nx_; ++ix) {
    const auto i = static_cast<std::size_t>(ix);
    out[i] = std::polar(1.0, sign * omega * (slowness[i] - s_ref) * dz);
  }
}

void SplitStepExtrapolator::apply(std::span<Complex> field, std::span<const Complex> phase,
                                  std::span<const Complex> correction) const {
  check_size(field.size(), npad_, "extrapolate: field must have padded_size entries");
  fft_.forward(field);
  const double scale = 1.0 / static_cast<double>(npad_);
  for (std::size_t j = 0; j < field.size(); ++j) field[j] *= phase[j] * scale;
  fft_.backward(field);
  for (std::size_t i = 0; i < correction.size(); ++i) field[i] *= correction[i];
}

void SplitStepExtrapolator::apply_adjoint(std::span<Complex> field, std::span<const Complex> phase,
                                          std::span<const Complex> correction) const {
  check_size(field.size(), npad_, "extrapolate: field must have padded_size entries");
  for (std::size_t i = 0; i < correction.size(); ++i) field[i] *= std::conj(correction[i]);
  fft_.forward(field);
  const double scale = 1.0 / static_cast<double>(npad_);
  for (std::size_t j = 0; j < field.size(); ++j) field[j] *= std::conj(phase[j]) * scale;
  fft_.backward(field);
}

void SplitStepExtrapolator::extrapolate(std::span<Complex> field, std::span<const double> slowness,
                                        double omega, double dz, Propagation dir) const {
  const double s_ref = reference_slowness(slowness);
  std::vector<Complex> phase(static_cast<std::size_t>(npad_));
  std::vector<Complex> correction(static_cast<std::size_t>(nx_));
  phase_factors(s_ref, omega, dz, dir, phase);
  correction_factors(slowness, s_ref, omega, dz, dir, correction);
  apply(field, phase, correction);
}

}  // namespace brls
