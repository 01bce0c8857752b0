#include "rdslab/scenarios.hpp"

#include <stdexcept>

namespace rdslab {

namespace {

PopulationConfig standard_population() {
  PopulationConfig p;
  p.n_nodes = 1000;
  p.prevalence = 0.2;
  p.mean_degree = 7.0;
  p.homophily_ratio_ii = 5.0;
  p.homophily_ratio_uu = 2.0;
  p.activity_ratio = 1.0;
  return p;
}

SamplingDesign standard_design() {
  SamplingDesign d;
  d.n_seeds = 10;
  d.seed_policy = SeedPolicy::ppd_random;
  d.max_coupons = 2;
  d.target_size = 500;
  d.replacement = Replacement::without;
  d.referral_bias_infected = 1.0;
  return d;
}

std::vector<EstimatorRequest> core_estimators() {
  return {{EstimatorKind::mean, 0},
          {EstimatorKind::vh, 0},
          {EstimatorKind::vh, 1},
          {EstimatorKind::sh, 0}};
}

/// Wave-family studies also evaluate the deeper discard ladder.
std::vector<EstimatorRequest> discard_ladder_estimators() {
  return {{EstimatorKind::mean, 0}, {EstimatorKind::vh, 0}, {EstimatorKind::vh, 1},
          {EstimatorKind::vh, 2},   {EstimatorKind::vh, 3}, {EstimatorKind::vh, 4},
          {EstimatorKind::sh, 0}};
}

struct PolicyTag {
  SeedPolicy policy;
  const char* tag;
};

constexpr PolicyTag kPolicies[] = {
    {SeedPolicy::ppd_random, "rand"},
    {SeedPolicy::ppd_all_infected, "inf"},
    {SeedPolicy::ppd_all_uninfected, "uninf"},
};

ScenarioSpec make_spec(std::string id, PopulationConfig pop, SamplingDesign design,
                       std::vector<EstimatorRequest> estimators) {
  ScenarioSpec spec;
  spec.id = std::move(id);
  spec.population = pop;
  spec.design = design;
  spec.estimators = std::move(estimators);
  spec.n_replications = 1000;
  spec.master_seed = 42;
  return spec;
}

struct FractionLevel {
  const char* tag;  // percent label
  int n_nodes;      // population sized so 500 records hit this fraction
};

constexpr FractionLevel kFractions[] = {
    {"50", 1000}, {"60", 835}, {"70", 715}, {"80", 625}, {"90", 555}, {"95", 525},
};

struct ActivityLevel {
  const char* tag;
  double w;
};

constexpr ActivityLevel kActivities[] = {
    {"w10", 1.0}, {"w11", 1.1}, {"w14", 1.4}, {"w18", 1.8}, {"w30", 3.0},
};

constexpr ActivityLevel kLowActivities[] = {
    {"winv11", 1.0 / 1.1},
    {"winv14", 1.0 / 1.4},
    {"winv18", 1.0 / 1.8},
    {"winv30", 1.0 / 3.0},
};

std::vector<ScenarioEntry> build_library() {
  std::vector<ScenarioEntry> lib;

  // Seed count and wave depth trade off at a fixed target size: 6 seeds
  // propagate about six waves before 500 records accumulate, 20 seeds only
  // about four.
  for (const auto& [seeds, tag] : {std::pair<int, const char*>{6, "s6"}, {20, "s20"}}) {
    for (const auto& pol : kPolicies) {
      SamplingDesign d = standard_design();
      d.n_seeds = seeds;
      d.seed_policy = pol.policy;
      lib.push_back({make_spec(std::string("waves_") + tag + "_" + pol.tag,
                               standard_population(), d, discard_ladder_estimators()),
                     "wave_study",
                     "Figure 4, Figure 7, Table 2: seed/wave tradeoff, discard ladder"});
    }
  }

  struct HomophilyLevel {
    const char* tag;
    double r_ii;
    double r_uu;
  };
  for (const auto& level : {HomophilyLevel{"low", 5.0, 2.0}, HomophilyLevel{"high", 13.0, 4.0}}) {
    for (const auto& pol : kPolicies) {
      PopulationConfig p = standard_population();
      p.homophily_ratio_ii = level.r_ii;
      p.homophily_ratio_uu = level.r_uu;
      SamplingDesign d = standard_design();
      d.seed_policy = pol.policy;
      lib.push_back({make_spec(std::string("homophily_") + level.tag + "_" + pol.tag, p, d,
                               core_estimators()),
                     "homophily_study",
                     "Figure 6, Table 2: within-group tie strength low vs high"});
    }
  }

  for (const auto& [mode, bias] : {std::pair<const char*, double>{"off", 1.0}, {"on", 1.2}}) {
    for (const auto& pol : kPolicies) {
      SamplingDesign d = standard_design();
      d.seed_policy = pol.policy;
      d.referral_bias_infected = bias;
      lib.push_back({make_spec(std::string("referral_") + mode + "_" + pol.tag,
                               standard_population(), d, core_estimators()),
                     "referral_study",
                     "Figure 8, Table 2: trait-biased referral off vs on"});
    }
  }

  for (const auto& frac : kFractions) {
    for (const auto& act : kActivities) {
      PopulationConfig p = standard_population();
      p.n_nodes = frac.n_nodes;
      p.activity_ratio = act.w;
      lib.push_back({make_spec(std::string("frac") + frac.tag + "_" + act.tag, p,
                               standard_design(), core_estimators()),
                     "sample_fraction_study",
                     "Figure 10, Figure 11, Table 3: sample fraction by group activity"});
    }
  }

  for (const auto& frac : kFractions) {
    for (const auto& act : kLowActivities) {
      PopulationConfig p = standard_population();
      p.n_nodes = frac.n_nodes;
      p.activity_ratio = act.w;
      lib.push_back({make_spec(std::string("lowact_frac") + frac.tag + "_" + act.tag, p,
                               standard_design(), core_estimators()),
                     "low_activity_study",
                     "Figure 11 extension: trait group less active than the rest"});
    }
  }

  for (const auto& [seeds, tag] : {std::pair<int, const char*>{6, "s6"}, {20, "s20"}}) {
    for (const auto& pol : kPolicies) {
      SamplingDesign d = standard_design();
      d.n_seeds = seeds;
      d.seed_policy = pol.policy;
      d.replacement = Replacement::with;
      lib.push_back({make_spec(std::string("withrepl_") + tag + "_" + pol.tag,
                               standard_population(), d, discard_ladder_estimators()),
                     "with_replacement_study",
                     "Figure 12: with-replacement recruitment vs Figure 4 baseline"});
    }
  }

  return lib;
}

}  // namespace

const std::vector<ScenarioEntry>& scenario_library() {
  static const std::vector<ScenarioEntry> lib = build_library();
  return lib;
}

std::vector<std::string> scenario_families() {
  std::vector<std::string> families;
  for (const auto& entry : scenario_library()) {
    if (families.empty() || families.back() != entry.family) families.push_back(entry.family);
  }
  return families;
}

const ScenarioEntry* find_scenario(const std::string& id) {
  for (const auto& entry : scenario_library()) {
    if (entry.spec.id == id) return &entry;
  }
  return nullptr;
}

std::vector<ScenarioSpec> scenarios_for(const std::string& name) {
  std::vector<ScenarioSpec> specs;
  if (name == "all") {
    for (const auto& entry : scenario_library()) specs.push_back(entry.spec);
    return specs;
  }
  for (const auto& entry : scenario_library()) {
    if (entry.family == name) specs.push_back(entry.spec);
  }
  if (!specs.empty()) return specs;
  if (const ScenarioEntry* entry = find_scenario(name)) {
    specs.push_back(entry->spec);
    return specs;
  }
  throw std::invalid_argument("unknown scenario or family '" + name + "'");
}

}  // namespace rdslab
