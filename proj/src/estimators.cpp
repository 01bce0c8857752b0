#include "rdslab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace rdslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_degree(const SampleRecord& rec) {
  if (rec.reported_degree < 1) {
    throw std::invalid_argument("estimator: record for node " + std::to_string(rec.node) +
                                " reports degree " + std::to_string(rec.reported_degree));
  }
}

struct FlatRecord {
  bool trait = false;
  int degree = 0;
  int wave = 0;
};

std::vector<FlatRecord> flatten(const std::vector<SampleRecord>& records) {
  std::vector<FlatRecord> flat;
  flat.reserve(records.size());
  for (const auto& rec : records) flat.push_back({rec.trait, rec.reported_degree, rec.wave});
  return flat;
}

EstimateResult mean_estimate_flat(const std::vector<FlatRecord>& records, int discard_waves) {
  EstimateResult res;
  res.kind = EstimatorKind::mean;
  res.discard_waves = discard_waves;
  int used = 0, carriers = 0;
  for (const auto& rec : records) {
    if (rec.wave < discard_waves) continue;
    ++used;
    if (rec.trait) ++carriers;
  }
  res.n_used = used;
  if (used == 0) {
    res.status = EstimateStatus::empty_after_discard;
    res.value = kNaN;
    return res;
  }
  res.value = static_cast<double>(carriers) / static_cast<double>(used);
  return res;
}

EstimateResult vh_estimate_flat(const std::vector<FlatRecord>& records, int discard_waves) {
  EstimateResult res;
  res.kind = EstimatorKind::vh;
  res.discard_waves = discard_waves;
  double num = 0.0, den = 0.0;
  int used = 0;
  for (const auto& rec : records) {
    if (rec.wave < discard_waves) continue;
    if (rec.degree < 1) throw std::invalid_argument("vh: nonpositive reported degree");
    const double inv = 1.0 / static_cast<double>(rec.degree);
    den += inv;
    if (rec.trait) num += inv;
    ++used;
  }
  res.n_used = used;
  if (used == 0) {
    res.status = EstimateStatus::empty_after_discard;
    res.value = kNaN;
    return res;
  }
  res.value = num / den;
  return res;
}

/// Referral pairs are (recruiter trait, recruit trait).
ShComponents components_from(const std::vector<FlatRecord>& records,
                             const std::vector<std::pair<bool, bool>>& referrals) {
  ShComponents comp;
  double inv_a = 0.0, inv_b = 0.0;
  for (const auto& rec : records) {
    if (rec.degree < 1) throw std::invalid_argument("sh: nonpositive reported degree");
    const double inv = 1.0 / static_cast<double>(rec.degree);
    if (rec.trait) {
      ++comp.n_a;
      inv_a += inv;
    } else {
      ++comp.n_b;
      inv_b += inv;
    }
  }
  if (comp.n_a > 0) comp.d_hat_a = static_cast<double>(comp.n_a) / inv_a;
  if (comp.n_b > 0) comp.d_hat_b = static_cast<double>(comp.n_b) / inv_b;
  for (const auto& [from, to] : referrals) {
    if (from) {
      ++(to ? comp.r_aa : comp.r_ab);
    } else {
      ++(to ? comp.r_ba : comp.r_bb);
    }
  }
  const long long out_a = comp.r_aa + comp.r_ab;
  const long long out_b = comp.r_ba + comp.r_bb;
  if (out_a > 0) comp.c_ab = static_cast<double>(comp.r_ab) / static_cast<double>(out_a);
  if (out_b > 0) comp.c_ba = static_cast<double>(comp.r_ba) / static_cast<double>(out_b);
  return comp;
}

EstimateResult sh_estimate_from(const ShComponents& comp, int n_records) {
  EstimateResult res;
  res.kind = EstimatorKind::sh;
  res.n_used = n_records;
  res.value = kNaN;
  if (comp.n_a == 0 || comp.n_b == 0 || comp.r_aa + comp.r_ab == 0 ||
      comp.r_ba + comp.r_bb == 0) {
    res.status = EstimateStatus::degenerate_groups;
    return res;
  }
  if (comp.c_ab == 0.0 && comp.c_ba == 0.0) {
    res.status = EstimateStatus::no_cross_referrals;
    return res;
  }
  res.value = sh_point_estimate(comp);
  return res;
}

}  // namespace

const char* to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::mean: return "mean";
    case EstimatorKind::vh: return "vh";
    case EstimatorKind::sh: return "sh";
  }
  return "?";
}

const char* to_string(EstimateStatus status) {
  switch (status) {
    case EstimateStatus::ok: return "ok";
    case EstimateStatus::empty_after_discard: return "empty_after_discard";
    case EstimateStatus::degenerate_groups: return "degenerate_groups";
    case EstimateStatus::no_cross_referrals: return "no_cross_referrals";
  }
  return "?";
}

EstimateResult mean_estimate(const std::vector<SampleRecord>& records, int discard_waves) {
  return mean_estimate_flat(flatten(records), discard_waves);
}

EstimateResult vh_estimate(const std::vector<SampleRecord>& records, int discard_waves) {
  for (const auto& rec : records) {
    if (rec.wave >= discard_waves) check_degree(rec);
  }
  return vh_estimate_flat(flatten(records), discard_waves);
}

ShComponents sh_components(const std::vector<SampleRecord>& records) {
  std::unordered_map<int, bool> trait_of;
  for (const auto& rec : records) {
    check_degree(rec);
    trait_of.emplace(rec.node, rec.trait);
  }
  std::vector<std::pair<bool, bool>> referrals;
  for (const auto& rec : records) {
    if (rec.recruiter < 0) continue;
    const auto it = trait_of.find(rec.recruiter);
    if (it == trait_of.end()) {
      throw std::runtime_error("sh: recruiter node " + std::to_string(rec.recruiter) +
                               " has no record of its own");
    }
    referrals.emplace_back(it->second, rec.trait);
  }
  return components_from(flatten(records), referrals);
}

double sh_point_estimate(const ShComponents& comp) {
  const double num = comp.d_hat_b * comp.c_ba;
  const double den = comp.d_hat_a * comp.c_ab + comp.d_hat_b * comp.c_ba;
  if (den == 0.0) return kNaN;
  return num / den;
}

EstimateResult sh_estimate(const std::vector<SampleRecord>& records) {
  const ShComponents comp = sh_components(records);
  return sh_estimate_from(comp, static_cast<int>(records.size()));
}

EstimateResult estimate(EstimatorKind kind, const std::vector<SampleRecord>& records,
                        int discard_waves) {
  switch (kind) {
    case EstimatorKind::mean: return mean_estimate(records, discard_waves);
    case EstimatorKind::vh: return vh_estimate(records, discard_waves);
    case EstimatorKind::sh: return sh_estimate(records);
  }
  throw std::invalid_argument("estimate: unknown estimator kind");
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BootstrapResult salganik_bootstrap(const std::vector<SampleRecord>& records, EstimatorKind kind,
                                   int discard_waves, int n_resamples, RngStream& rng) {
  if (records.empty()) throw std::invalid_argument("bootstrap: empty sample");
  if (n_resamples < 1) throw std::invalid_argument("bootstrap: n_resamples must be positive");

  const std::vector<FlatRecord> flat = flatten(records);
  // Pools are keyed by the trait of the record's recruiter: when the chain
  // sits at a trait-t record, the next draw imitates recruitment by t.
  std::unordered_map<int, bool> trait_of;
  for (const auto& rec : records) trait_of.emplace(rec.node, rec.trait);
  std::vector<std::size_t> pool_by_a, pool_by_b;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].recruiter < 0) continue;
    const auto it = trait_of.find(records[i].recruiter);
    if (it == trait_of.end()) {
      throw std::runtime_error("bootstrap: recruiter node " +
                               std::to_string(records[i].recruiter) + " has no record of its own");
    }
    (it->second ? pool_by_a : pool_by_b).push_back(i);
  }

  BootstrapResult result;
  result.point = estimate(kind, records, discard_waves).value;
  result.n_resamples = n_resamples;

  const std::size_t n = records.size();
  std::vector<FlatRecord> resample(n);
  std::vector<std::pair<bool, bool>> transitions;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_resamples));

  for (int b = 0; b < n_resamples; ++b) {
    transitions.clear();
    std::size_t idx = static_cast<std::size_t>(rng.uniform_below(n));
    resample[0] = flat[idx];
    for (std::size_t k = 1; k < n; ++k) {
      const bool t = resample[k - 1].trait;
      const auto& pool = t ? pool_by_a : pool_by_b;
      if (pool.empty()) {
        result.used_fallback = true;
        idx = static_cast<std::size_t>(rng.uniform_below(n));
      } else {
        idx = pool[static_cast<std::size_t>(rng.uniform_below(pool.size()))];
      }
      resample[k] = flat[idx];
      transitions.emplace_back(t, flat[idx].trait);
    }

    EstimateResult est;
    if (kind == EstimatorKind::sh) {
      est = sh_estimate_from(components_from(resample, transitions),
                             static_cast<int>(resample.size()));
    } else if (kind == EstimatorKind::vh) {
      est = vh_estimate_flat(resample, discard_waves);
    } else {
      est = mean_estimate_flat(resample, discard_waves);
    }
    if (est.status == EstimateStatus::ok) {
      values.push_back(est.value);
    } else {
      ++result.n_failed;
    }
  }

  if (values.empty()) {
    result.ci_low = kNaN;
    result.ci_high = kNaN;
    return result;
  }
  std::sort(values.begin(), values.end());
  result.ci_low = quantile(values, 0.05);
  result.ci_high = quantile(values, 0.95);
  return result;
}

}  // namespace rdslab
