#include "ugvbc/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ugvbc {

namespace {

struct Field {
  const char* key;
  double ScenarioConfig::* member;
};

// Integer fields are handled separately; everything else is a double.
constexpr Field kFields[] = {
    {"coverage_area", &ScenarioConfig::coverage_area},
    {"tag_density", &ScenarioConfig::tag_density},
    {"ap_height", &ScenarioConfig::ap_height},
    {"pathloss_exponent", &ScenarioConfig::pathloss_exponent},
    {"pathloss_tolerance", &ScenarioConfig::pathloss_tolerance},
    {"reflection", &ScenarioConfig::reflection},
    {"rate_min", &ScenarioConfig::rate_min},
    {"ugv_speed", &ScenarioConfig::ugv_speed},
    {"mobility_mu1", &ScenarioConfig::mobility_mu1},
    {"mobility_mu2", &ScenarioConfig::mobility_mu2},
    {"circuit_power_reader", &ScenarioConfig::circuit_power_reader},
    {"circuit_power_ap", &ScenarioConfig::circuit_power_ap},
    {"reader_power_max", &ScenarioConfig::reader_power_max},
    {"ap_power_max", &ScenarioConfig::ap_power_max},
    {"ugv_energy_max", &ScenarioConfig::ugv_energy_max},
    {"time_max", &ScenarioConfig::time_max},
    {"noise_reader", &ScenarioConfig::noise_reader},
    {"noise_ap", &ScenarioConfig::noise_ap},
    {"sub_slot_duration", &ScenarioConfig::sub_slot_duration},
};

constexpr struct {
  const char* key;
  int ScenarioConfig::* member;
} kIntFields[] = {
    {"antennas", &ScenarioConfig::antennas},
    {"tx_antennas", &ScenarioConfig::tx_antennas},
    {"rx_antennas", &ScenarioConfig::rx_antennas},
};

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  auto need = [&](bool ok, const char* msg) {
    if (!ok) errors.emplace_back(msg);
  };

  need(positive(c.coverage_area), "coverage_area must be positive");
  // tag_density 0 is allowed: it models the empty network used in tests.
  need(c.tag_density >= 0.0 && std::isfinite(c.tag_density),
       "tag_density must be non-negative");
  need(positive(c.ap_height), "ap_height must be positive");
  need(c.pathloss_exponent > 2.0 && std::isfinite(c.pathloss_exponent),
       "alpha must exceed 2");
  need(positive(c.pathloss_tolerance), "pathloss_tolerance must be positive");
  need(c.reflection >= 0.0 && c.reflection <= 1.0, "reflection out of [0,1]");
  need(c.rate_min > 0.0 && std::isfinite(c.rate_min),
       "rate_min must be positive");
  need(positive(c.ugv_speed), "ugv_speed must be positive");
  need(positive(c.mobility_mu1), "mobility_mu1 must be positive");
  need(positive(c.mobility_mu2), "mobility_mu2 must be positive");
  need(positive(c.circuit_power_reader), "circuit_power_reader must be positive");
  need(positive(c.circuit_power_ap), "circuit_power_ap must be positive");
  need(positive(c.reader_power_max), "reader_power_max must be positive");
  need(positive(c.ap_power_max), "ap_power_max must be positive");
  need(positive(c.ugv_energy_max), "ugv_energy_max must be positive");
  need(positive(c.time_max), "time_max must be positive");
  need(c.antennas >= 1, "antennas must be at least 1");
  need(positive(c.noise_reader), "noise_reader must be positive");
  need(positive(c.noise_ap), "noise_ap must be positive");
  need(positive(c.sub_slot_duration), "sub_slot_duration must be positive");
  return errors;
}

std::vector<std::string> validate(const ScenarioConfig& c, Mode mode) {
  std::vector<std::string> errors = validate(c);
  if (mode == Mode::fd) {
    if (c.tx_antennas < 1) errors.emplace_back("tx_antennas must be at least 1 in fd mode");
    if (c.rx_antennas < 1) errors.emplace_back("rx_antennas must be at least 1 in fd mode");
    if (c.tx_antennas + c.rx_antennas != c.antennas)
      errors.emplace_back("tx_antennas + rx_antennas must equal antennas in fd mode");
  }
  return errors;
}

Result<ScenarioConfig> parse_config(std::istream& in) {
  ScenarioConfig config;
  std::map<std::string, bool> seen;
  bool have_noise_ap = false, have_split_tx = false, have_split_rx = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::string key, eq, value;
    std::istringstream ls(line);
    if (!(ls >> key)) continue;  // blank or comment-only
    ls >> eq;
    if (eq == "=") {
      ls >> value;
    } else {
      value = eq;  // "key value" without '='
    }
    std::string trailing;
    if (value.empty() || (ls >> trailing)) {
      return Result<ScenarioConfig>::failure(
          "parse-error: line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    if (seen[key]) {
      return Result<ScenarioConfig>::failure("duplicate-key: " + key);
    }
    seen[key] = true;

    bool matched = false;
    for (const auto& f : kFields) {
      if (key == f.key) {
        try {
          std::size_t used = 0;
          config.*(f.member) = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          return Result<ScenarioConfig>::failure("bad-value: " + key + " = " + value);
        }
        matched = true;
        break;
      }
    }
    if (!matched) {
      for (const auto& f : kIntFields) {
        if (key == f.key) {
          try {
            std::size_t used = 0;
            config.*(f.member) = std::stoi(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
          } catch (const std::exception&) {
            return Result<ScenarioConfig>::failure("bad-value: " + key + " = " + value);
          }
          matched = true;
          break;
        }
      }
    }
    if (!matched) {
      return Result<ScenarioConfig>::failure("unknown-key: " + key);
    }
    if (key == "noise_ap") have_noise_ap = true;
    if (key == "tx_antennas") have_split_tx = true;
    if (key == "rx_antennas") have_split_rx = true;
  }

  // Documented defaults: symmetric AP noise, even antenna split.
  if (!have_noise_ap) config.noise_ap = config.noise_reader;
  if (!have_split_tx && !have_split_rx) {
    config.tx_antennas = config.antennas / 2;
    config.rx_antennas = config.antennas - config.tx_antennas;
  }

  auto errors = validate(config);
  if (!errors.empty()) {
    std::string joined = "validation-error";
    for (const auto& e : errors) joined += "; " + e;
    return Result<ScenarioConfig>::failure(joined);
  }
  return Result<ScenarioConfig>::success(config);
}

Result<ScenarioConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) return Result<ScenarioConfig>::failure("io-error: cannot open " + path);
  return parse_config(in);
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& f : kFields) out << f.key << " = " << c.*(f.member) << "\n";
  for (const auto& f : kIntFields) out << f.key << " = " << c.*(f.member) << "\n";
  return out.str();
}

}  // namespace ugvbc
