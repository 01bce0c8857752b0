#include "rdslab/io.hpp"

#include <json.hpp>

#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace rdslab {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_estimates_header(std::ostream& out) {
  out << "scenario_id,replication,estimator,discard_waves,value,n_used,status\n";
}

void append_estimates_csv(std::ostream& out, const ScenarioResult& result) {
  for (const auto& row : result.rows) {
    const EstimateResult& est = row.result;
    out << result.spec.id << ',' << row.replication << ',' << to_string(est.kind) << ','
        << est.discard_waves << ',' << format_double(est.value) << ',' << est.n_used << ','
        << to_string(est.status) << '\n';
  }
}

void write_summary_header(std::ostream& out) {
  out << "scenario_id,estimator,discard_waves,n_success,n_failed,true_mu,mean,bias,mc_se,"
         "variance,sd,mse,q05,q25,q50,q75,q95,die_out_rate\n";
}

void append_summary_csv(std::ostream& out, const MetricsSummary& summary) {
  for (const auto& est : summary.estimators) {
    out << summary.scenario_id << ',' << to_string(est.kind) << ',' << est.discard_waves << ','
        << est.n_success << ',' << est.n_failed << ',' << format_double(summary.true_mu) << ','
        << format_double(est.mean) << ',' << format_double(est.bias) << ','
        << format_double(est.mc_se) << ',' << format_double(est.variance) << ','
        << format_double(est.sd) << ',' << format_double(est.mse) << ','
        << format_double(est.q05) << ',' << format_double(est.q25) << ','
        << format_double(est.q50) << ',' << format_double(est.q75) << ','
        << format_double(est.q95) << ',' << format_double(summary.die_out_rate) << '\n';
  }
}

void write_efficiency_header(std::ostream& out) {
  out << "scenario_id,mse_vh,mse_sh,n_pairs,relative_efficiency\n";
}

void append_efficiency_csv(std::ostream& out, const RelativeEfficiency& eff) {
  out << eff.scenario_id << ',' << format_double(eff.mse_vh) << ',' << format_double(eff.mse_sh)
      << ',' << eff.n_pairs << ',' << format_double(eff.value) << '\n';
}

void write_manifest_json(std::ostream& out, const BatchConfig& config) {
  std::ostringstream hash_hex;
  hash_hex << std::hex << std::setfill('0') << std::setw(16) << config_hash(config);
  nlohmann::ordered_json scenarios = nlohmann::ordered_json::array();
  for (const auto& spec : config.scenarios) {
    scenarios.push_back(nlohmann::ordered_json{{"id", spec.id},
                                               {"master_seed", spec.master_seed},
                                               {"n_replications", spec.n_replications}});
  }
  const nlohmann::ordered_json manifest{{"version", kVersion},
                                        {"config_hash", hash_hex.str()},
                                        {"scenarios", std::move(scenarios)}};
  out << manifest.dump(2) << '\n';
}

}  // namespace rdslab
