#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdslab/harness.hpp"

namespace rdslab {

/// Raised on any structural or semantic problem with a batch config. The
/// message names the offending key (and line, for syntax errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BatchConfig {
  std::vector<ScenarioSpec> scenarios;
  friend bool operator==(const BatchConfig&, const BatchConfig&) = default;
};

/// Parse the JSON batch schema (see README). Unknown keys, wrong types,
/// out-of-range values and duplicate scenario ids are all ConfigErrors.
BatchConfig parse_batch_config(const std::string& json_text);

/// Serialize with every field explicit; parse_batch_config round-trips it.
std::string batch_config_to_json(const BatchConfig& config);

/// FNV-1a hash of the canonical serialized form, for provenance manifests.
std::uint64_t config_hash(const BatchConfig& config);

}  // namespace rdslab
