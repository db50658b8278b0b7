#include "brls/run_config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace brls {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) fail(key, "expected an integer, got '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || used != value.size()) fail(key, "expected a number, got '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(key, "expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) items.push_back(trim(item));
  return items;
}

ModelKind parse_model_kind(const std::string& key, const std::string& value) {
  if (value == "constant") return ModelKind::constant;
  if (value == "layered") return ModelKind::layered;
  if (value == "lens") return ModelKind::lens;
  if (value == "from_file") return ModelKind::from_file;
  fail(key, "expected constant, layered, lens or from_file, got '" + value + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto integer = [](Index ExperimentSpec::*field) {
      return [field](RunConfig& c, const std::string& k, const std::string& v) {
        c.experiment.*field = parse_integer<Index>(k, v);
      };
    };
    auto real = [](double ExperimentSpec::*field) {
      return [field](RunConfig& c, const std::string& k, const std::string& v) {
        c.experiment.*field = parse_real(k, v);
      };
    };
    t["model_kind"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.model_kind = parse_model_kind(k, v);
    };
    t["nz"] = integer(&ExperimentSpec::nz);
    t["nx"] = integer(&ExperimentSpec::nx);
    t["dz"] = real(&ExperimentSpec::dz);
    t["dx"] = real(&ExperimentSpec::dx);
    t["v0"] = real(&ExperimentSpec::v0);
    t["layer_depths"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.layer_depths.clear();
      for (const auto& item : split_list(v)) c.experiment.layer_depths.push_back(parse_integer<Index>(k, item));
    };
    t["layer_velocities"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.layer_velocities.clear();
      for (const auto& item : split_list(v)) c.experiment.layer_velocities.push_back(parse_real(k, item));
    };
    t["lens_center_z"] = real(&ExperimentSpec::lens_center_z);
    t["lens_center_x"] = real(&ExperimentSpec::lens_center_x);
    t["lens_radius"] = real(&ExperimentSpec::lens_radius);
    t["lens_amplitude"] = real(&ExperimentSpec::lens_amplitude);
    t["velocity_file"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.experiment.velocity_file = v;
    };
    t["n_shots"] = integer(&ExperimentSpec::n_shots);
    t["first_shot"] = integer(&ExperimentSpec::first_shot);
    t["shot_interval"] = integer(&ExperimentSpec::shot_interval);
    t["n_receivers"] = integer(&ExperimentSpec::n_receivers);
    t["receiver_spacing"] = integer(&ExperimentSpec::receiver_spacing);
    t["near_offset"] = integer(&ExperimentSpec::near_offset);
    t["f_dom"] = real(&ExperimentSpec::f_dom);
    t["dt"] = real(&ExperimentSpec::dt);
    t["n_t"] = integer(&ExperimentSpec::n_t);
    t["wavelet_delay"] = real(&ExperimentSpec::wavelet_delay);
    t["f_min"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.band.f_min = parse_real(k, v);
    };
    t["f_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.band.f_max = parse_real(k, v);
    };
    t["noise_level"] = real(&ExperimentSpec::noise_level);
    t["q"] = integer(&ExperimentSpec::q);
    t["k"] = integer(&ExperimentSpec::k);
    t["lambda"] = real(&ExperimentSpec::lambda);
    t["cg_max_iterations"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.cg_max_iterations = parse_integer<int>(k, v);
    };
    t["cg_tolerance"] = real(&ExperimentSpec::cg_tolerance);
    t["lsm_iterations"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.lsm_iterations = parse_integer<int>(k, v);
    };
    t["seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.experiment.seed = parse_integer<std::uint64_t>(k, v);
    };
    t["data_dir"] = [](RunConfig& c, const std::string&, const std::string& v) { c.data_dir = v; };
    t["dottest_operator"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v == "survey") {
        c.dottest_operator = DotTestTarget::survey;
      } else if (v == "identity") {
        c.dottest_operator = DotTestTarget::identity;
      } else {
        fail(k, "expected survey or identity, got '" + v + "'");
      }
    };
    t["dottest_seeds"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.dottest_seeds = parse_integer<int>(k, v);
      if (c.dottest_seeds < 1) fail(k, "must be >= 1");
    };
    t["dottest_corrupt_adjoint"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.dottest_corrupt_adjoint = parse_bool(k, v);
    };
    return t;
  }();
  return table;
}

constexpr std::array<const char*, 11> kRequired = {"model_kind", "nz",          "nx",   "dz",  "dx",  "n_shots",
                                                   "shot_interval", "n_receivers", "f_dom", "dt", "n_t"};

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  RunConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(key, "unknown key");
    if (!seen.insert(key).second) fail(key, "given more than once");
    it->second(config, key, value);
  }
  for (const char* key : kRequired) {
    if (!seen.count(key)) fail(key, "required key is missing");
  }
  try {
    config.experiment.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

}  // namespace brls
