#include "brls/metrics.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "brls/fft.hpp"

namespace brls {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty())
    throw std::invalid_argument("report: bad number for " + key + ": '" + value + "'");
  return out;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::adjoint: return "adjoint";
    case Method::lsm: return "lsm";
    case Method::brls: return "brls";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "adjoint") return Method::adjoint;
  if (name == "lsm") return Method::lsm;
  if (name == "brls") return Method::brls;
  throw std::invalid_argument("unknown method '" + name + "'");
}

std::string format_report(const RunReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "method = " << to_string(report.method) << '\n';
  out << "data_misfit = " << report.data_misfit << '\n';
  if (report.model_error) out << "model_error = " << *report.model_error << '\n';
  if (!report.per_window_iterations.empty()) {
    out << "per_window_iterations = ";
    for (std::size_t i = 0; i < report.per_window_iterations.size(); ++i) {
      if (i) out << ',';
      out << report.per_window_iterations[i];
    }
    out << '\n';
  }
  out << "wall_time = " << report.wall_time << '\n';
  return out.str();
}

RunReport parse_report(const std::string& text) {
  RunReport report;
  bool have_method = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("report: line without '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "method") {
      report.method = method_from_string(value);
      have_method = true;
    } else if (key == "data_misfit") {
      report.data_misfit = parse_double(key, value);
    } else if (key == "model_error") {
      report.model_error = parse_double(key, value);
    } else if (key == "wall_time") {
      report.wall_time = parse_double(key, value);
    } else if (key == "per_window_iterations") {
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        int n = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
        if (ec != std::errc() || ptr != item.data() + item.size())
          throw std::invalid_argument("report: bad iteration count '" + item + "'");
        report.per_window_iterations.push_back(n);
      }
    } else {
      throw std::invalid_argument("report: unknown key '" + key + "'");
    }
  }
  if (!have_method) throw std::invalid_argument("report: missing method");
  return report;
}

double data_misfit(std::span<const DataBlock> blocks, const Vector& m) {
  double total = 0.0;
  for (const auto& b : blocks) total += (b.op->apply_forward(m) - b.data).squaredNorm();
  return total;
}

double scale_factor(std::span<const DataBlock> blocks, const Vector& m) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& b : blocks) {
    const Vector am = b.op->apply_forward(m);
    num += am.dot(b.data);
    den += am.squaredNorm();
  }
  return den > 0.0 ? num / den : 0.0;
}

Grid2D band_project(const Grid2D& grid, const BandProjection& projection) {
  if (!(projection.velocity > 0.0)) throw std::invalid_argument("band_project: velocity must be positive");
  const Index nz = grid.nz();
  std::size_t n = 1;
  while (n < static_cast<std::size_t>(2 * nz)) n *= 2;
  const Fft fft(n);
  const double k_hi = 2.0 * projection.band.f_max / projection.velocity;
  const double dk = 1.0 / (static_cast<double>(n) * grid.dz());

  Grid2D out = grid;
  std::vector<std::complex<double>> column(n);
  for (Index ix = 0; ix < grid.nx(); ++ix) {
    std::fill(column.begin(), column.end(), std::complex<double>{0.0, 0.0});
    for (Index iz = 0; iz < nz; ++iz) column[static_cast<std::size_t>(iz)] = grid(iz, ix);
    fft.forward(column);
    for (std::size_t j = 0; j < n; ++j) {
      const double signed_j = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
      const double k = std::abs(signed_j) * dk;
      if (k > k_hi) column[j] = 0.0;
    }
    fft.backward(column);
    for (Index iz = 0; iz < nz; ++iz) out(iz, ix) = column[static_cast<std::size_t>(iz)].real() / static_cast<double>(n);
  }
  return out;
}

double model_error(const Vector& m, const Reflectivity& truth, const std::optional<BandProjection>& projection) {
  if (m.size() != truth.grid.size()) throw DimensionError("model_error: model and truth sizes differ");
  const Vector reference = projection ? band_project(truth.grid, *projection).to_vector() : truth.grid.to_vector();
  const double norm = reference.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("model_error: reference model is zero");
  return (m - reference).norm() / norm;
}

PeakLocation peak_location(const Grid2D& image) {
  PeakLocation best;
  double peak = -1.0;
  for (Index ix = 0; ix < image.nx(); ++ix) {
    for (Index iz = 0; iz < image.nz(); ++iz) {
      if (std::abs(image(iz, ix)) > peak) {
        peak = std::abs(image(iz, ix));
        best = {iz, ix};
      }
    }
  }
  return best;
}

double peak_to_sidelobe(const Grid2D& image, Index exclusion) {
  const PeakLocation p = peak_location(image);
  const double peak = std::abs(image(p.iz, p.ix));
  double side = 0.0;
  for (Index ix = 0; ix < image.nx(); ++ix) {
    for (Index iz = 0; iz < image.nz(); ++iz) {
      if (std::abs(iz - p.iz) <= exclusion && std::abs(ix - p.ix) <= exclusion) continue;
      side = std::max(side, std::abs(image(iz, ix)));
    }
  }
  return side > 0.0 ? peak / side : std::numeric_limits<double>::infinity();
}

}  // namespace brls
