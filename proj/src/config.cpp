#include "asprt/config.hpp"

#include <fstream>
#include <sstream>

namespace asprt {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size())
      throw ConfigError("trailing characters in value for '" + key + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size())
      throw ConfigError("trailing characters in value for '" + key + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size())
      throw ConfigError("trailing characters in value for '" + key + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects an unsigned integer, got '" +
                      value + "'");
  }
}

std::vector<int> parse_bits_list(const std::string& key,
                                 const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in '" + key + "'");
    const long long b = parse_integer(key, item);
    if (b < 1 || b > 30) throw ConfigError("'" + key + "' entries must be in [1, 30]");
    out.push_back(static_cast<int>(b));
  }
  if (out.empty()) throw ConfigError("'" + key + "' must list at least one value");
  return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "scenario.kind") {
    cfg.scenario.kind = scenario_kind_from_string(value);
  } else if (key == "scenario.K0") {
    cfg.scenario.K0 = static_cast<int>(parse_integer(key, value));
  } else if (key == "scenario.kappa") {
    cfg.scenario.kappa = parse_double(key, value);
  } else if (key == "scenario.M_A") {
    cfg.scenario.M_A = static_cast<int>(parse_integer(key, value));
  } else if (key == "scenario.phi_deg") {
    cfg.scenario.phi_deg = parse_double(key, value);
  } else if (key == "scenario.scale") {
    cfg.scenario.scale = parse_double(key, value);
  } else if (key == "hypothesis.theta_bar_db") {
    cfg.theta_bar_db = parse_double(key, value);
  } else if (key == "hypothesis.delta_db") {
    cfg.delta_db = parse_double(key, value);
  } else if (key == "hypothesis.theta0_db") {
    cfg.theta0_db = parse_double(key, value);
  } else if (key == "hypothesis.theta1_db") {
    cfg.theta1_db = parse_double(key, value);
  } else if (key == "sweep.variable") {
    cfg.sweep_variable = value;
  } else if (key == "sweep.lo") {
    cfg.sweep_lo = parse_double(key, value);
  } else if (key == "sweep.hi") {
    cfg.sweep_hi = parse_double(key, value);
  } else if (key == "sweep.steps") {
    cfg.sweep_steps = static_cast<int>(parse_integer(key, value));
  } else if (key == "test.alpha0") {
    cfg.alpha0 = parse_double(key, value);
  } else if (key == "test.alpha1") {
    cfg.alpha1 = parse_double(key, value);
  } else if (key == "test.rho") {
    cfg.tuner.rho = parse_double(key, value);
  } else if (key == "test.grid_points") {
    cfg.tuner.grid_points = static_cast<int>(parse_integer(key, value));
  } else if (key == "test.refine_tol") {
    cfg.tuner.refine_tol = parse_double(key, value);
  } else if (key == "test.trials") {
    cfg.trials = parse_integer(key, value);
  } else if (key == "test.master_seed") {
    cfg.master_seed = parse_seed(key, value);
  } else if (key == "test.max_samples") {
    cfg.max_samples = parse_integer(key, value);
  } else if (key == "test.frontend") {
    cfg.frontend = frontend_from_string(value);
  } else if (key == "efficiency.bits") {
    cfg.bits = parse_bits_list(key, value);
  } else if (key == "efficiency.bench_antennas") {
    const long long m = parse_integer(key, value);
    if (m < 1) throw ConfigError("'" + key + "' must be >= 1");
    cfg.bench_antennas = static_cast<int>(m);
  } else if (key == "output.prefix") {
    cfg.output_prefix = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

}  // namespace

double ExperimentConfig::resolved_theta0_db() const {
  const bool explicit_pair = theta0_db.has_value() || theta1_db.has_value();
  const bool centered = theta_bar_db.has_value() || delta_db.has_value();
  if (explicit_pair && centered)
    throw ConfigError(
        "hypothesis block mixes explicit endpoints with theta_bar/delta");
  if (explicit_pair) {
    if (!theta0_db || !theta1_db)
      throw ConfigError("explicit hypothesis needs both theta0_db and theta1_db");
    return *theta0_db;
  }
  if (!theta_bar_db || !delta_db)
    throw ConfigError("hypothesis needs theta_bar_db and delta_db (or explicit endpoints)");
  return *theta_bar_db - *delta_db;
}

double ExperimentConfig::resolved_theta1_db() const {
  resolved_theta0_db();  // shared structural checks
  if (theta0_db.has_value()) return *theta1_db;
  return *theta_bar_db + *delta_db;
}

HypothesisPair ExperimentConfig::hypothesis() const {
  HypothesisPair pair{db_to_linear(resolved_theta0_db()),
                      db_to_linear(resolved_theta1_db())};
  pair.validate();
  return pair;
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source_name) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(source_name + ":" + std::to_string(lineno) +
                        ": empty key or value");
    try {
      apply_key(cfg, key, value);
    } catch (const Error& e) {
      throw ConfigError(source_name + ":" + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

}  // namespace asprt
