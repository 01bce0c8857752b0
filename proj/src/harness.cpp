#include "rdslab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "rdslab/metrics.hpp"

namespace rdslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ReplicationOutput {
  std::vector<EstimateResult> estimates;
  bool died_out = false;
};

ReplicationOutput run_one(const ScenarioSpec& spec, int replication) {
  RngStream rng = substream(spec.master_seed, spec.id, static_cast<std::uint64_t>(replication));
  const Network net = sample_network(spec.population, rng);
  const RdsSample sample = run_rds(net, spec.design, rng);
  ReplicationOutput out;
  out.died_out = sample.died_out;
  out.estimates.reserve(spec.estimators.size());
  for (const auto& req : spec.estimators) {
    out.estimates.push_back(estimate(req.kind, sample.records, req.discard_waves));
  }
  return out;
}

EstimatorSummary summarize(const EstimatorRequest& req, const std::vector<double>& values,
                           int n_replications, double true_mu) {
  EstimatorSummary s;
  s.kind = req.kind;
  s.discard_waves = req.discard_waves;
  s.n_success = static_cast<int>(values.size());
  s.n_failed = n_replications - s.n_success;
  if (values.empty()) {
    s.mean = s.bias = s.variance = s.sd = s.mse = s.mc_se = kNaN;
    s.q05 = s.q25 = s.q50 = s.q75 = s.q95 = kNaN;
    return s;
  }
  s.mean = mean_of(values);
  s.bias = s.mean - true_mu;
  s.variance = population_variance(values, s.mean);
  s.sd = std::sqrt(s.variance);
  double sq = 0.0;
  for (double v : values) sq += (v - true_mu) * (v - true_mu);
  s.mse = sq / static_cast<double>(values.size());
  s.mc_se = s.sd / std::sqrt(static_cast<double>(values.size()));
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  s.q05 = quantile(sorted, 0.05);
  s.q25 = quantile(sorted, 0.25);
  s.q50 = quantile(sorted, 0.50);
  s.q75 = quantile(sorted, 0.75);
  s.q95 = quantile(sorted, 0.95);
  return s;
}

/// Index of the headline inverse-degree request: discard 1 when present,
/// otherwise the first such request.
int headline_vh_index(const std::vector<EstimatorRequest>& requests) {
  int first = -1;
  for (int i = 0; i < static_cast<int>(requests.size()); ++i) {
    if (requests[static_cast<std::size_t>(i)].kind != EstimatorKind::vh) continue;
    if (requests[static_cast<std::size_t>(i)].discard_waves == 1) return i;
    if (first < 0) first = i;
  }
  return first;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioSpec& spec, int workers) {
  if (spec.id.empty()) throw std::invalid_argument("run_scenario: scenario id is empty");
  if (spec.n_replications < 1) {
    throw std::invalid_argument("run_scenario: n_replications must be positive");
  }
  if (spec.estimators.empty()) {
    throw std::invalid_argument("run_scenario: no estimators requested");
  }
  const int reps = spec.n_replications;

  std::vector<ReplicationOutput> outputs(static_cast<std::size_t>(reps));
  const int n_workers = std::max(1, std::min(workers, reps));
  if (n_workers == 1) {
    for (int r = 0; r < reps; ++r) outputs[static_cast<std::size_t>(r)] = run_one(spec, r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= reps) return;
        try {
          outputs[static_cast<std::size_t>(r)] = run_one(spec, r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  ScenarioResult result;
  result.spec = spec;
  result.true_mu = static_cast<double>(infected_count(spec.population)) /
                   static_cast<double>(spec.population.n_nodes);

  const std::size_t n_est = spec.estimators.size();
  result.rows.reserve(static_cast<std::size_t>(reps) * n_est);
  std::vector<std::vector<double>> ok_values(n_est);
  int n_died = 0;
  for (int r = 0; r < reps; ++r) {
    const auto& out = outputs[static_cast<std::size_t>(r)];
    if (out.died_out) ++n_died;
    for (std::size_t e = 0; e < n_est; ++e) {
      result.rows.push_back({r, out.estimates[e]});
      if (out.estimates[e].status == EstimateStatus::ok) {
        ok_values[e].push_back(out.estimates[e].value);
      }
    }
  }

  MetricsSummary& summary = result.summary;
  summary.scenario_id = spec.id;
  summary.true_mu = result.true_mu;
  summary.n_replications = reps;
  summary.die_out_rate = static_cast<double>(n_died) / static_cast<double>(reps);
  for (std::size_t e = 0; e < n_est; ++e) {
    summary.estimators.push_back(
        summarize(spec.estimators[e], ok_values[e], reps, result.true_mu));
  }

  const int vh_idx = headline_vh_index(spec.estimators);
  int sh_idx = -1;
  for (int i = 0; i < static_cast<int>(n_est); ++i) {
    if (spec.estimators[static_cast<std::size_t>(i)].kind == EstimatorKind::sh) {
      sh_idx = i;
      break;
    }
  }
  if (vh_idx >= 0 && sh_idx >= 0) {
    PairedMse pair;
    double sq_vh = 0.0, sq_sh = 0.0;
    for (int r = 0; r < reps; ++r) {
      const auto& ests = outputs[static_cast<std::size_t>(r)].estimates;
      const auto& ev = ests[static_cast<std::size_t>(vh_idx)];
      const auto& es = ests[static_cast<std::size_t>(sh_idx)];
      if (ev.status != EstimateStatus::ok || es.status != EstimateStatus::ok) continue;
      ++pair.n_pairs;
      sq_vh += (ev.value - result.true_mu) * (ev.value - result.true_mu);
      sq_sh += (es.value - result.true_mu) * (es.value - result.true_mu);
    }
    if (pair.n_pairs > 0) {
      pair.mse_vh = sq_vh / static_cast<double>(pair.n_pairs);
      pair.mse_sh = sq_sh / static_cast<double>(pair.n_pairs);
      summary.pair = pair;
    }
  }
  return result;
}

const EstimatorSummary* find_summary(const MetricsSummary& summary, EstimatorKind kind,
                                     int discard_waves) {
  for (const auto& est : summary.estimators) {
    if (est.kind == kind && est.discard_waves == discard_waves) return &est;
  }
  return nullptr;
}

RelativeEfficiency relative_efficiency(const MetricsSummary& summary) {
  if (!summary.pair || summary.pair->n_pairs == 0) {
    throw UndefinedEfficiency("relative efficiency undefined for '" + summary.scenario_id +
                              "': no replication produced both estimators");
  }
  if (summary.pair->mse_sh == 0.0) {
    throw UndefinedEfficiency("relative efficiency undefined for '" + summary.scenario_id +
                              "': zero denominator");
  }
  RelativeEfficiency eff;
  eff.scenario_id = summary.scenario_id;
  eff.mse_vh = summary.pair->mse_vh;
  eff.mse_sh = summary.pair->mse_sh;
  eff.n_pairs = summary.pair->n_pairs;
  eff.value = eff.mse_vh / eff.mse_sh;
  return eff;
}

}  // namespace rdslab
