#pragma once

#include <iosfwd>
#include <string>

#include "rdslab/batch_config.hpp"
#include "rdslab/harness.hpp"

namespace rdslab {

inline constexpr const char* kVersion = "1.0.0";

/// Shortest round-trip decimal form (locale-free, byte-stable).
std::string format_double(double v);

void write_estimates_header(std::ostream& out);
void append_estimates_csv(std::ostream& out, const ScenarioResult& result);

void write_summary_header(std::ostream& out);
void append_summary_csv(std::ostream& out, const MetricsSummary& summary);

void write_efficiency_header(std::ostream& out);
void append_efficiency_csv(std::ostream& out, const RelativeEfficiency& eff);

/// Provenance manifest: tool version, canonical config hash, and per-scenario
/// seeds/replication counts. Deliberately carries no timestamps so repeated
/// runs are byte-identical.
void write_manifest_json(std::ostream& out, const BatchConfig& config);

}  // namespace rdslab
