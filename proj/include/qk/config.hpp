#pragma once
// Experiment configuration: a flat key = value file with environment
// overrides and a stable content digest.
//
// Precedence: file values < QK_-prefixed environment variables (QK_SEED
// overrides key "seed") < command-line flags.  The digest is FNV-1a over
// the canonical (sorted, resolved) key/value list, so identical effective
// configs produce identical digests regardless of source.  Keys that only
// place the execution ("workers", "out_dir") are excluded: they never
// change what is computed.

#include "qk/model.hpp"
#include "qk/resources.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qk {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ModelParams model;            // n_sites, mu, x, m, sizing
  double scale = 0.0;           // moment rescale; 0 resolves to n_sites
  std::string solver = "pqse";  // qse | tqse | pqse
  std::vector<int> subspace_dims = {2, 3, 4, 5, 6, 7, 8};  // D (or D_max)
  int d_cap = 4;
  std::vector<double> budgets;  // measurement budgets in block-encoding calls
  std::uint64_t seed = 1234;
  int instances = 100;
  bool noiseless = false;
  int workers = 1;
  CostOptions cost;
  std::vector<int> n_grid = {4, 8, 16, 32, 64, 100};  // resource-table sites
  int k_steps = 1;  // moment degree for whole-circuit cost rows
  std::vector<double> target_errors = {1e-2, 1e-4, 1e-6};
  std::string fit_kind = "loglog_in_calls";
  std::string out_dir = "out";

  std::map<std::string, std::string> raw;  // resolved canonical key/values
  std::uint64_t digest() const;            // FNV-1a over `raw`
};

// 64-bit FNV-1a hash.
std::uint64_t fnv1a(const std::string& text);

// Parse `key = value` lines ('#' starts a comment; blank lines ignored),
// apply QK_* environment overrides, validate.  Unknown keys and malformed
// values raise ConfigError naming the key.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// The effective configuration as a canonical config file body.
std::string to_text(const ExperimentConfig& config);

}  // namespace qk
