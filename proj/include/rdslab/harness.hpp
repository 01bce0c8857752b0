#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdslab/estimators.hpp"
#include "rdslab/netgen.hpp"
#include "rdslab/sampler.hpp"

namespace rdslab {

struct EstimatorRequest {
  EstimatorKind kind = EstimatorKind::vh;
  int discard_waves = 0;
  friend bool operator==(const EstimatorRequest&, const EstimatorRequest&) = default;
};

/// One replicated simulation study: population model, sampling design, the
/// estimators to evaluate on every sample, and the RNG anchor.
struct ScenarioSpec {
  std::string id;
  PopulationConfig population;
  SamplingDesign design;
  std::vector<EstimatorRequest> estimators;
  int n_replications = 1000;
  std::uint64_t master_seed = 42;
  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

struct EstimatorSummary {
  EstimatorKind kind = EstimatorKind::vh;
  int discard_waves = 0;
  int n_success = 0;
  int n_failed = 0;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  double sd = 0.0;
  double mse = 0.0;
  double mc_se = 0.0;  // sd / sqrt(n_success)
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

/// Complete-case MSE pair for the efficiency ratio: only replications where
/// both estimators produced a value enter either side.
struct PairedMse {
  int n_pairs = 0;
  double mse_vh = 0.0;
  double mse_sh = 0.0;
};

struct MetricsSummary {
  std::string scenario_id;
  double true_mu = 0.0;  // realized prevalence of the generated populations
  int n_replications = 0;
  double die_out_rate = 0.0;
  std::vector<EstimatorSummary> estimators;
  std::optional<PairedMse> pair;
};

struct ReplicationRow {
  int replication = 0;
  EstimateResult result;
};

struct ScenarioResult {
  ScenarioSpec spec;
  double true_mu = 0.0;
  MetricsSummary summary;
  std::vector<ReplicationRow> rows;  // replication-major, estimator order within
};

/// Run every replication of a scenario: a fresh network, one RDS sample on
/// it, all requested estimators. Each replication draws its own RNG
/// substream keyed by (master_seed, scenario id, replication), so the
/// result is identical for any worker count or execution order.
ScenarioResult run_scenario(const ScenarioSpec& spec, int workers = 1);

const EstimatorSummary* find_summary(const MetricsSummary& summary, EstimatorKind kind,
                                     int discard_waves);

struct RelativeEfficiency {
  std::string scenario_id;
  double mse_vh = 0.0;
  double mse_sh = 0.0;
  int n_pairs = 0;
  double value = 0.0;  // mse_vh / mse_sh
};

class UndefinedEfficiency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Efficiency ratio from a summary's complete-case pair. Throws
/// UndefinedEfficiency when the pair is missing, empty, or has zero
/// denominator.
RelativeEfficiency relative_efficiency(const MetricsSummary& summary);

}  // namespace rdslab
