#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rdslab/batch_config.hpp"
#include "rdslab/estimators.hpp"
#include "rdslab/harness.hpp"
#include "rdslab/io.hpp"
#include "rdslab/markov.hpp"
#include "rdslab/netgen.hpp"
#include "rdslab/rng.hpp"
#include "rdslab/sampler.hpp"
#include "rdslab/scenarios.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using namespace rdslab;

namespace {

/// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed_text(const std::string& text, const std::string& origin) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw UsageError(origin + ": '" + text + "' is not a valid 64-bit seed");
  }
}

/// Resolution order: --seed flag, RDSLAB_MASTER_SEED, then fallback.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RDSLAB_MASTER_SEED")) {
    return parse_seed_text(env, "RDSLAB_MASTER_SEED");
  }
  return fallback;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open network file '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const std::exception& e) {
    throw UsageError(std::string("network file '") + path + "': " + e.what());
  }
}

struct PopulationFlags {
  PopulationConfig config;
  void attach(CLI::App* cmd) {
    cmd->add_option("--n-nodes", config.n_nodes, "population size");
    cmd->add_option("--prevalence", config.prevalence, "trait prevalence in (0,1)");
    cmd->add_option("--mean-degree", config.mean_degree, "target mean degree");
    cmd->add_option("--r-ii", config.homophily_ratio_ii, "within-group tie ratio, trait group");
    cmd->add_option("--r-uu", config.homophily_ratio_uu, "within-group tie ratio, other group");
    cmd->add_option("--activity-ratio", config.activity_ratio,
                    "trait-group to other-group mean degree ratio");
  }
};

struct DesignFlags {
  SamplingDesign design;
  std::string policy = "ppd_random";
  std::string replacement = "without";
  void attach(CLI::App* cmd) {
    cmd->add_option("--seeds", design.n_seeds, "number of seeds");
    cmd->add_option("--policy", policy, "ppd_random|ppd_all_infected|ppd_all_uninfected");
    cmd->add_option("--coupons", design.max_coupons, "coupons per respondent");
    cmd->add_option("--target", design.target_size, "target sample size");
    cmd->add_option("--replacement", replacement, "without|with");
    cmd->add_option("--bias", design.referral_bias_infected,
                    "referral weight toward trait carriers");
  }
  SamplingDesign resolve() const {
    SamplingDesign d = design;
    if (policy == "ppd_random") {
      d.seed_policy = SeedPolicy::ppd_random;
    } else if (policy == "ppd_all_infected") {
      d.seed_policy = SeedPolicy::ppd_all_infected;
    } else if (policy == "ppd_all_uninfected") {
      d.seed_policy = SeedPolicy::ppd_all_uninfected;
    } else {
      throw UsageError("--policy: unknown seed policy '" + policy + "'");
    }
    if (replacement == "without") {
      d.replacement = Replacement::without;
    } else if (replacement == "with") {
      d.replacement = Replacement::with;
    } else {
      throw UsageError("--replacement: expected 'without' or 'with', got '" + replacement + "'");
    }
    return d;
  }
};

int cmd_gen(const PopulationFlags& pop, std::optional<std::uint64_t> seed_flag,
            const std::string& out_dir) {
  const std::uint64_t seed = resolve_seed(seed_flag, 42);
  const DyadProbabilities probs = solve_dyad_probabilities(pop.config);
  RngStream rng = substream(seed, "gen", 0);
  const Network net = sample_network(pop.config, rng);
  auto out = open_output(out_dir, "network.edges");
  write_edge_list(out, net);
  const auto components = connected_components(net);
  std::cout << "nodes=" << net.size() << " infected=" << net.n_infected()
            << " edges=" << net.edges().size()
            << " mean_degree=" << format_double(net.mean_degree())
            << " components=" << components.size() << "\n";
  std::cout << "p_ii=" << format_double(probs.p_ii) << " p_iu=" << format_double(probs.p_iu)
            << " p_uu=" << format_double(probs.p_uu) << "\n";
  return 0;
}

int cmd_sample(const std::string& network_path, const PopulationFlags& pop,
               const DesignFlags& design_flags, std::optional<std::uint64_t> seed_flag,
               const std::string& out_dir) {
  const std::uint64_t seed = resolve_seed(seed_flag, 42);
  const SamplingDesign design = design_flags.resolve();
  RngStream rng = substream(seed, "sample", 0);
  const Network net = network_path.empty() ? sample_network(pop.config, rng)
                                           : load_network(network_path);
  const RdsSample sample = run_rds(net, design, rng);
  auto out = open_output(out_dir, "sample.csv");
  write_sample_csv(out, sample.records);
  std::cout << "records=" << sample.records.size()
            << " died_out=" << (sample.died_out ? 1 : 0);
  if (sample.truncated_wave) std::cout << " truncated_wave=" << *sample.truncated_wave;
  std::cout << "\n";
  const auto census = wave_census(sample.records);
  for (std::size_t w = 0; w < census.size(); ++w) {
    std::cout << "wave=" << w << " count=" << census[w].count
              << " infected_proportion=" << format_double(census[w].infected_proportion)
              << " mean_degree=" << format_double(census[w].mean_reported_degree) << "\n";
  }
  return 0;
}

int cmd_estimate(const std::string& sample_path, const std::string& kind_text, int discard,
                 int bootstrap_n, std::optional<std::uint64_t> seed_flag) {
  std::ifstream in(sample_path);
  if (!in) throw UsageError("cannot open sample file '" + sample_path + "'");
  std::vector<SampleRecord> records;
  try {
    records = read_sample_csv(in);
  } catch (const std::exception& e) {
    throw UsageError(std::string("sample file '") + sample_path + "': " + e.what());
  }
  EstimatorKind kind;
  if (kind_text == "mean") {
    kind = EstimatorKind::mean;
  } else if (kind_text == "vh") {
    kind = EstimatorKind::vh;
  } else if (kind_text == "sh") {
    kind = EstimatorKind::sh;
  } else {
    throw UsageError("--estimator: unknown estimator kind '" + kind_text + "'");
  }
  const EstimateResult res = estimate(kind, records, discard);
  std::cout << "estimator=" << to_string(res.kind) << " discard_waves=" << res.discard_waves
            << " value=" << format_double(res.value) << " n_used=" << res.n_used
            << " status=" << to_string(res.status) << "\n";
  if (bootstrap_n > 0) {
    RngStream rng = substream(resolve_seed(seed_flag, 42), "bootstrap", 0);
    const BootstrapResult boot = salganik_bootstrap(records, kind, discard, bootstrap_n, rng);
    std::cout << "bootstrap point=" << format_double(boot.point)
              << " ci90=[" << format_double(boot.ci_low) << "," << format_double(boot.ci_high)
              << "] resamples=" << boot.n_resamples << " failed=" << boot.n_failed
              << " fallback=" << (boot.used_fallback ? 1 : 0) << "\n";
  }
  return 0;
}

int cmd_simulate(const std::string& config_arg, std::optional<int> replications,
                 std::optional<std::uint64_t> seed_flag, int workers,
                 const std::string& out_dir) {
  BatchConfig config;
  if (fs::exists(config_arg) && fs::is_regular_file(config_arg)) {
    std::ifstream in(config_arg);
    if (!in) throw UsageError("cannot open config file '" + config_arg + "'");
    std::ostringstream text;
    text << in.rdbuf();
    config = parse_batch_config(text.str());
  } else {
    try {
      for (auto& spec : scenarios_for(config_arg)) config.scenarios.push_back(std::move(spec));
    } catch (const std::invalid_argument&) {
      throw UsageError("--config: '" + config_arg +
                       "' is neither a readable file nor a built-in scenario/family name");
    }
  }
  if (replications) {
    if (*replications < 1) throw UsageError("--replications: must be positive");
    for (auto& spec : config.scenarios) spec.n_replications = *replications;
  }
  if (seed_flag) {
    for (auto& spec : config.scenarios) spec.master_seed = *seed_flag;
  } else if (const char* env = std::getenv("RDSLAB_MASTER_SEED")) {
    const std::uint64_t seed = parse_seed_text(env, "RDSLAB_MASTER_SEED");
    for (auto& spec : config.scenarios) spec.master_seed = seed;
  }
  if (workers < 1) throw UsageError("--workers: must be positive");

  auto estimates = open_output(out_dir, "estimates.csv");
  auto summary = open_output(out_dir, "summary.csv");
  auto efficiency = open_output(out_dir, "efficiency.csv");
  write_estimates_header(estimates);
  write_summary_header(summary);
  write_efficiency_header(efficiency);
  for (const auto& spec : config.scenarios) {
    const ScenarioResult result = run_scenario(spec, workers);
    append_estimates_csv(estimates, result);
    append_summary_csv(summary, result.summary);
    std::cout << spec.id << ": replications=" << spec.n_replications
              << " true_mu=" << format_double(result.true_mu)
              << " die_out_rate=" << format_double(result.summary.die_out_rate);
    try {
      const RelativeEfficiency eff = relative_efficiency(result.summary);
      append_efficiency_csv(efficiency, eff);
      std::cout << " relative_efficiency=" << format_double(eff.value);
    } catch (const UndefinedEfficiency&) {
      std::cout << " relative_efficiency=undefined";
    }
    std::cout << "\n";
  }
  auto manifest = open_output(out_dir, "manifest.json");
  write_manifest_json(manifest, config);
  return 0;
}

int cmd_mixing(const std::string& network_path, int steps, const std::string& out_dir) {
  if (steps < 1) throw UsageError("--steps: must be at least 1");
  const Network net = load_network(network_path);
  const TransitionMatrix tm = transition_matrix(net);
  const std::vector<double> scores = mixing_diagnostic(tm.probs, static_cast<unsigned>(steps));
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(tm.probs.rows(), tm.probs.cols());
  for (int s = 1; s <= steps; ++s) {
    power = power * tm.probs;
    auto out = open_output(out_dir, "step_" + std::to_string(s) + ".csv");
    write_matrix_csv(out, power);
  }
  auto score_out = open_output(out_dir, "scores.csv");
  score_out << "step,score\n";
  for (int s = 1; s <= steps; ++s) {
    score_out << s << ',' << format_double(scores[static_cast<std::size_t>(s - 1)]) << '\n';
  }
  // Numeric breakpoints for external heatmap coloring of the step matrices.
  auto bins = open_output(out_dir, "heatmap_bins.csv");
  bins << "0,0.001,0.01,0.05,0.1,0.25,0.5,0.75,1\n";
  if (!tm.isolated.empty()) {
    std::cout << "isolated_nodes=" << tm.isolated.size() << "\n";
  }
  std::cout << "steps=" << steps << " final_score=" << format_double(scores.back()) << "\n";
  return 0;
}

int cmd_library(const std::string& format) {
  if (format == "text") {
    for (const auto& entry : scenario_library()) {
      std::cout << entry.spec.id << '\t' << entry.family << '\t' << entry.provenance << '\n';
    }
    return 0;
  }
  if (format == "json") {
    nlohmann::ordered_json catalog = nlohmann::ordered_json::array();
    for (const auto& entry : scenario_library()) {
      catalog.push_back(nlohmann::ordered_json{{"id", entry.spec.id},
                                               {"family", entry.family},
                                               {"provenance", entry.provenance},
                                               {"n_replications", entry.spec.n_replications},
                                               {"master_seed", entry.spec.master_seed}});
    }
    std::cout << catalog.dump(2) << "\n";
    return 0;
  }
  throw UsageError("--format: expected 'text' or 'json', got '" + format + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for chain-referral sampling estimators"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate one network and write its edge list");
  PopulationFlags gen_pop;
  gen_pop.attach(gen);
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out = ".";
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out", gen_out, "output directory");

  // sample
  auto* sample = app.add_subcommand("sample", "run one recruitment process");
  PopulationFlags sample_pop;
  sample_pop.attach(sample);
  DesignFlags sample_design;
  sample_design.attach(sample);
  std::string sample_network_path;
  std::optional<std::uint64_t> sample_seed;
  std::string sample_out = ".";
  sample->add_option("--network", sample_network_path,
                     "edge-list file (omit to generate a fresh network)");
  sample->add_option("--seed", sample_seed, "master seed");
  sample->add_option("--out", sample_out, "output directory");

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate prevalence from a sample CSV");
  std::string est_sample_path, est_kind = "vh";
  int est_discard = 1, est_bootstrap = 0;
  std::optional<std::uint64_t> est_seed;
  est->add_option("--sample", est_sample_path, "sample CSV path")->required();
  est->add_option("--estimator", est_kind, "mean|vh|sh");
  est->add_option("--discard", est_discard, "waves to discard (mean and vh)");
  est->add_option("--bootstrap", est_bootstrap, "resample count for a 90% interval");
  est->add_option("--seed", est_seed, "master seed for the bootstrap");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a scenario batch");
  std::string sim_config, sim_out = ".";
  std::optional<int> sim_replications;
  std::optional<std::uint64_t> sim_seed;
  int sim_workers = 1;
  sim->add_option("--config", sim_config, "batch config file or built-in scenario/family name")
      ->required();
  sim->add_option("--replications", sim_replications, "override replication count");
  sim->add_option("--seed", sim_seed, "override master seed");
  sim->add_option("--workers", sim_workers, "worker threads (never changes results)");
  sim->add_option("--out", sim_out, "output directory");

  // mixing
  auto* mix = app.add_subcommand("mixing", "n-step transition matrices and mixing scores");
  std::string mix_network_path, mix_out = ".";
  int mix_steps = 0;
  mix->add_option("--network", mix_network_path, "edge-list file")->required();
  mix->add_option("--steps", mix_steps, "number of steps (>= 1)")->required();
  mix->add_option("--out", mix_out, "output directory");

  // library
  auto* lib = app.add_subcommand("library", "list built-in scenarios");
  std::string lib_format = "text";
  lib->add_option("--format", lib_format, "text|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_pop, gen_seed, gen_out);
    if (sample->parsed()) {
      return cmd_sample(sample_network_path, sample_pop, sample_design, sample_seed, sample_out);
    }
    if (est->parsed()) {
      return cmd_estimate(est_sample_path, est_kind, est_discard, est_bootstrap, est_seed);
    }
    if (sim->parsed()) return cmd_simulate(sim_config, sim_replications, sim_seed, sim_workers, sim_out);
    if (mix->parsed()) return cmd_mixing(mix_network_path, mix_steps, mix_out);
    if (lib->parsed()) return cmd_library(lib_format);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleTargets& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
