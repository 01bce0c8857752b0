#pragma once

#include <string>
#include <vector>

#include "rdslab/harness.hpp"

namespace rdslab {

/// A built-in scenario plus its catalog metadata: the study family it
/// belongs to and the report figures/tables its outputs feed.
struct ScenarioEntry {
  ScenarioSpec spec;
  std::string family;
  std::string provenance;
};

/// Full built-in catalog, ordered by family then id.
const std::vector<ScenarioEntry>& scenario_library();

std::vector<std::string> scenario_families();

/// Entry by exact scenario id, or null.
const ScenarioEntry* find_scenario(const std::string& id);

/// Specs selected by family name, by single scenario id, or "all".
/// Throws std::invalid_argument for an unknown name.
std::vector<ScenarioSpec> scenarios_for(const std::string& name);

}  // namespace rdslab
