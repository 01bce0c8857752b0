#include "rdslab/batch_config.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace rdslab {

namespace {

using json = nlohmann::ordered_json;

int line_of_offset(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config error at " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(where, "unknown key '" + item.key() + "'");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number()) fail(where + "." + key, "expected a number");
  return v->get<double>();
}

int get_int(const json& obj, const char* key, const std::string& where, int fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(where + "." + key, "expected an integer");
  return v->get<int>();
}

std::uint64_t get_u64(const json& obj, const char* key, const std::string& where,
                      std::uint64_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(where + "." + key, "expected a nonnegative integer");
  if (!v->is_number_unsigned() && v->get<std::int64_t>() < 0) {
    fail(where + "." + key, "expected a nonnegative integer");
  }
  return v->get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) fail(where, "missing required key '" + std::string(key) + "'");
  if (!v->is_string()) fail(where + "." + key, "expected a string");
  return v->get<std::string>();
}

SeedPolicy parse_seed_policy(const std::string& s, const std::string& where) {
  if (s == "ppd_random") return SeedPolicy::ppd_random;
  if (s == "ppd_all_infected") return SeedPolicy::ppd_all_infected;
  if (s == "ppd_all_uninfected") return SeedPolicy::ppd_all_uninfected;
  fail(where, "unknown seed_policy '" + s + "'");
}

Replacement parse_replacement(const std::string& s, const std::string& where) {
  if (s == "without") return Replacement::without;
  if (s == "with") return Replacement::with;
  fail(where, "unknown replacement '" + s + "'");
}

EstimatorKind parse_estimator_kind(const std::string& s, const std::string& where) {
  if (s == "mean") return EstimatorKind::mean;
  if (s == "vh") return EstimatorKind::vh;
  if (s == "sh") return EstimatorKind::sh;
  fail(where, "unknown estimator kind '" + s + "'");
}

PopulationConfig parse_population(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  check_keys(obj, where,
             {"n_nodes", "prevalence", "mean_degree", "homophily_ratio_ii", "homophily_ratio_uu",
              "activity_ratio"});
  PopulationConfig p;
  p.n_nodes = get_int(obj, "n_nodes", where, p.n_nodes);
  p.prevalence = get_number(obj, "prevalence", where, p.prevalence);
  p.mean_degree = get_number(obj, "mean_degree", where, p.mean_degree);
  p.homophily_ratio_ii = get_number(obj, "homophily_ratio_ii", where, p.homophily_ratio_ii);
  p.homophily_ratio_uu = get_number(obj, "homophily_ratio_uu", where, p.homophily_ratio_uu);
  p.activity_ratio = get_number(obj, "activity_ratio", where, p.activity_ratio);
  if (p.n_nodes < 2) fail(where + ".n_nodes", "must be at least 2");
  if (!(p.prevalence > 0.0 && p.prevalence < 1.0)) fail(where + ".prevalence", "must lie in (0, 1)");
  if (!(p.mean_degree > 0.0)) fail(where + ".mean_degree", "must be positive");
  if (!(p.homophily_ratio_ii > 0.0)) fail(where + ".homophily_ratio_ii", "must be positive");
  if (!(p.homophily_ratio_uu > 0.0)) fail(where + ".homophily_ratio_uu", "must be positive");
  if (!(p.activity_ratio > 0.0)) fail(where + ".activity_ratio", "must be positive");
  return p;
}

SamplingDesign parse_design(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  check_keys(obj, where,
             {"n_seeds", "seed_policy", "max_coupons", "target_size", "replacement",
              "referral_bias_infected"});
  SamplingDesign d;
  d.n_seeds = get_int(obj, "n_seeds", where, d.n_seeds);
  if (const json* v = find(obj, "seed_policy")) {
    if (!v->is_string()) fail(where + ".seed_policy", "expected a string");
    d.seed_policy = parse_seed_policy(v->get<std::string>(), where + ".seed_policy");
  }
  d.max_coupons = get_int(obj, "max_coupons", where, d.max_coupons);
  d.target_size = get_int(obj, "target_size", where, d.target_size);
  if (const json* v = find(obj, "replacement")) {
    if (!v->is_string()) fail(where + ".replacement", "expected a string");
    d.replacement = parse_replacement(v->get<std::string>(), where + ".replacement");
  }
  d.referral_bias_infected =
      get_number(obj, "referral_bias_infected", where, d.referral_bias_infected);
  if (d.n_seeds < 1) fail(where + ".n_seeds", "must be positive");
  if (d.max_coupons < 1) fail(where + ".max_coupons", "must be positive");
  if (d.target_size < d.n_seeds) fail(where + ".target_size", "must be at least n_seeds");
  if (!(d.referral_bias_infected > 0.0)) {
    fail(where + ".referral_bias_infected", "must be positive");
  }
  return d;
}

std::vector<EstimatorRequest> parse_estimators(const json& arr, const std::string& where) {
  if (!arr.is_array()) fail(where, "expected an array");
  if (arr.empty()) fail(where, "must not be empty");
  std::vector<EstimatorRequest> requests;
  int i = 0;
  for (const auto& item : arr) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!item.is_object()) fail(at, "expected an object");
    check_keys(item, at, {"kind", "discard_waves"});
    EstimatorRequest req;
    req.kind = parse_estimator_kind(get_string(item, "kind", at), at + ".kind");
    req.discard_waves = get_int(item, "discard_waves", at, 0);
    if (req.discard_waves < 0) fail(at + ".discard_waves", "must be nonnegative");
    requests.push_back(req);
    ++i;
  }
  return requests;
}

std::vector<EstimatorRequest> default_estimators() {
  return {{EstimatorKind::mean, 0},
          {EstimatorKind::vh, 0},
          {EstimatorKind::vh, 1},
          {EstimatorKind::sh, 0}};
}

json population_to_json(const PopulationConfig& p) {
  return json{{"n_nodes", p.n_nodes},
              {"prevalence", p.prevalence},
              {"mean_degree", p.mean_degree},
              {"homophily_ratio_ii", p.homophily_ratio_ii},
              {"homophily_ratio_uu", p.homophily_ratio_uu},
              {"activity_ratio", p.activity_ratio}};
}

json design_to_json(const SamplingDesign& d) {
  return json{{"n_seeds", d.n_seeds},
              {"seed_policy", to_string(d.seed_policy)},
              {"max_coupons", d.max_coupons},
              {"target_size", d.target_size},
              {"replacement", to_string(d.replacement)},
              {"referral_bias_infected", d.referral_bias_infected}};
}

}  // namespace

BatchConfig parse_batch_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config error at line " + std::to_string(line_of_offset(json_text, e.byte)) +
                      ": " + e.what());
  }
  if (!root.is_object()) fail("top level", "expected an object");
  check_keys(root, "top level", {"scenarios"});
  const json* scenarios = find(root, "scenarios");
  if (!scenarios) fail("top level", "missing required key 'scenarios'");
  if (!scenarios->is_array() || scenarios->empty()) fail("scenarios", "expected a nonempty array");

  BatchConfig config;
  std::set<std::string> seen_ids;
  int i = 0;
  for (const auto& item : *scenarios) {
    const std::string where = "scenarios[" + std::to_string(i) + "]";
    if (!item.is_object()) fail(where, "expected an object");
    check_keys(item, where,
               {"id", "population", "design", "estimators", "n_replications", "master_seed"});
    ScenarioSpec spec;
    spec.id = get_string(item, "id", where);
    if (spec.id.empty()) fail(where + ".id", "must not be empty");
    if (!seen_ids.insert(spec.id).second) fail(where + ".id", "duplicate scenario id '" + spec.id + "'");
    if (const json* v = find(item, "population")) {
      spec.population = parse_population(*v, where + ".population");
    }
    if (const json* v = find(item, "design")) {
      spec.design = parse_design(*v, where + ".design");
    }
    if (const json* v = find(item, "estimators")) {
      spec.estimators = parse_estimators(*v, where + ".estimators");
    } else {
      spec.estimators = default_estimators();
    }
    spec.n_replications = get_int(item, "n_replications", where, spec.n_replications);
    if (spec.n_replications < 1) fail(where + ".n_replications", "must be positive");
    spec.master_seed = get_u64(item, "master_seed", where, spec.master_seed);
    config.scenarios.push_back(std::move(spec));
    ++i;
  }
  return config;
}

std::string batch_config_to_json(const BatchConfig& config) {
  json scenarios = json::array();
  for (const auto& spec : config.scenarios) {
    json estimators = json::array();
    for (const auto& req : spec.estimators) {
      estimators.push_back(json{{"kind", to_string(req.kind)}, {"discard_waves", req.discard_waves}});
    }
    scenarios.push_back(json{{"id", spec.id},
                             {"population", population_to_json(spec.population)},
                             {"design", design_to_json(spec.design)},
                             {"estimators", std::move(estimators)},
                             {"n_replications", spec.n_replications},
                             {"master_seed", spec.master_seed}});
  }
  json root{{"scenarios", std::move(scenarios)}};
  return root.dump(2) + "\n";
}

std::uint64_t config_hash(const BatchConfig& config) {
  return hash_str(batch_config_to_json(config));
}

}  // namespace rdslab
