#include "qk/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qk {

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "n_sites", "mu", "x", "m", "sizing", "scale", "solver", "d_list",
      "d_cap", "budgets", "seed", "instances", "noiseless", "workers",
      "eps_alpha", "toffoli_policy", "phases_in", "rz_argument_variant",
      "n_grid", "k_steps", "targets", "fit_kind", "out_dir"};
  return keys;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ConfigError("config key '" + key + "': bad value '" + value + "'");
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long out = std::stoll(value, &used);
    if (used != value.size()) bad_value(key, value);
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    bad_value(key, value);
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value);
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    bad_value(key, value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value,
                          Parse parse) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(T(parse(key, item)));
  }
  if (out.empty()) bad_value(key, value);
  return out;
}

std::string env_name(const std::string& key) {
  std::string out = "QK_";
  for (char c : key)
    out.push_back(char(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_real(values[i]);
  }
  return out;
}

ExperimentConfig materialize(std::map<std::string, std::string> kv) {
  ExperimentConfig out;
  for (const auto& [key, value] : kv) {
    if (key == "n_sites")
      out.model.n_sites = int(parse_int(key, value));
    else if (key == "mu")
      out.model.mu = parse_real(key, value);
    else if (key == "x")
      out.model.x = parse_real(key, value);
    else if (key == "m")
      out.model.m = int(parse_int(key, value));
    else if (key == "sizing") {
      if (value == "compact")
        out.model.sizing = FieldSizing::compact;
      else if (value == "padded")
        out.model.sizing = FieldSizing::padded;
      else
        bad_value(key, value);
      out.cost.sizing = out.model.sizing;
    } else if (key == "scale")
      out.scale = parse_real(key, value);
    else if (key == "solver") {
      if (value != "qse" && value != "tqse" && value != "pqse")
        bad_value(key, value);
      out.solver = value;
    } else if (key == "d_list")
      out.subspace_dims = parse_list<int>(key, value, parse_int);
    else if (key == "d_cap")
      out.d_cap = int(parse_int(key, value));
    else if (key == "budgets")
      out.budgets = parse_list<double>(key, value, parse_real);
    else if (key == "seed")
      out.seed = std::uint64_t(parse_int(key, value));
    else if (key == "instances")
      out.instances = int(parse_int(key, value));
    else if (key == "noiseless")
      out.noiseless = parse_bool(key, value);
    else if (key == "workers")
      out.workers = int(parse_int(key, value));
    else if (key == "eps_alpha")
      out.cost.eps_alpha = parse_real(key, value);
    else if (key == "toffoli_policy") {
      if (value == "all_to_all_multi_ancilla")
        out.cost.toffoli_policy = ToffoliPolicy::all_to_all_multi_ancilla;
      else if (value == "all_to_all_one_ancilla")
        out.cost.toffoli_policy = ToffoliPolicy::all_to_all_one_ancilla;
      else if (value == "linear_nearest_neighbour")
        out.cost.toffoli_policy = ToffoliPolicy::linear_nearest_neighbour;
      else
        bad_value(key, value);
    } else if (key == "phases_in") {
      if (value == "G_tilde")
        out.cost.phases_in = PhasesIn::G_tilde;
      else if (value == "U")
        out.cost.phases_in = PhasesIn::U;
      else
        bad_value(key, value);
    } else if (key == "rz_argument_variant")
      out.cost.rz_argument_variant = parse_bool(key, value);
    else if (key == "n_grid")
      out.n_grid = parse_list<int>(key, value, parse_int);
    else if (key == "k_steps")
      out.k_steps = int(parse_int(key, value));
    else if (key == "targets")
      out.target_errors = parse_list<double>(key, value, parse_real);
    else if (key == "fit_kind") {
      if (value != "loglinear_in_D" && value != "loglog_in_calls" &&
          value != "linear")
        bad_value(key, value);
      out.fit_kind = value;
    } else if (key == "out_dir")
      out.out_dir = value;
    else
      throw ConfigError("unknown config key: " + key);
  }

  if (out.model.n_sites < 2)
    throw ConfigError("config key 'n_sites': must be >= 2");
  if (out.instances < 1)
    throw ConfigError("config key 'instances': must be >= 1");
  if (out.workers < 1) throw ConfigError("config key 'workers': must be >= 1");
  if (out.d_cap < 2) throw ConfigError("config key 'd_cap': must be >= 2");
  for (int d : out.subspace_dims)
    if (d < 1) throw ConfigError("config key 'd_list': entries must be >= 1");
  for (double b : out.budgets)
    if (!(b > 0))
      throw ConfigError("config key 'budgets': entries must be positive");
  for (double t : out.target_errors)
    if (!(t > 0))
      throw ConfigError("config key 'targets': entries must be positive");
  if (!(out.cost.eps_alpha > 0) || out.cost.eps_alpha > 1)
    throw ConfigError("config key 'eps_alpha': must lie in (0, 1]");
  if (out.k_steps < 1)
    throw ConfigError("config key 'k_steps': must be >= 1");

  out.raw = std::move(kv);
  return out;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::uint64_t ExperimentConfig::digest() const {
  std::string canonical;
  for (const auto& [key, value] : raw) {
    // execution placement never changes the experiment identity
    if (key == "workers" || key == "out_dir") continue;
    canonical += key + "=" + value + "\n";
  }
  return fnv1a(canonical);
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    kv[key] = value;
  }
  for (const std::string& key : known_keys())
    if (const char* env = std::getenv(env_name(key).c_str()))
      kv[key] = env;
  return materialize(std::move(kv));
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string to_text(const ExperimentConfig& config) {
  std::string out;
  out += "n_sites = " + std::to_string(config.model.n_sites) + "\n";
  out += "mu = " + format_real(config.model.mu) + "\n";
  out += "x = " + format_real(config.model.x) + "\n";
  out += "m = " + std::to_string(config.model.m) + "\n";
  out += std::string("sizing = ") +
         (config.model.sizing == FieldSizing::compact ? "compact" : "padded") +
         "\n";
  out += "scale = " + format_real(config.scale) + "\n";
  out += "solver = " + config.solver + "\n";
  out += "d_list = " + join_ints(config.subspace_dims) + "\n";
  out += "d_cap = " + std::to_string(config.d_cap) + "\n";
  if (!config.budgets.empty())
    out += "budgets = " + join_reals(config.budgets) + "\n";
  out += "seed = " + std::to_string(config.seed) + "\n";
  out += "instances = " + std::to_string(config.instances) + "\n";
  out += std::string("noiseless = ") + (config.noiseless ? "true" : "false") +
         "\n";
  out += "workers = " + std::to_string(config.workers) + "\n";
  out += "eps_alpha = " + format_real(config.cost.eps_alpha) + "\n";
  out += std::string("toffoli_policy = ") + to_string(config.cost.toffoli_policy) +
         "\n";
  out += std::string("phases_in = ") + to_string(config.cost.phases_in) + "\n";
  out += std::string("rz_argument_variant = ") +
         (config.cost.rz_argument_variant ? "true" : "false") + "\n";
  out += "n_grid = " + join_ints(config.n_grid) + "\n";
  out += "k_steps = " + std::to_string(config.k_steps) + "\n";
  out += "targets = " + join_reals(config.target_errors) + "\n";
  out += "fit_kind = " + config.fit_kind + "\n";
  out += "out_dir = " + config.out_dir + "\n";
  return out;
}

}  // namespace qk
