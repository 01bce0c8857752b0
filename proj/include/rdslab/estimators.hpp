#pragma once

#include <optional>
#include <vector>

#include "rdslab/rng.hpp"
#include "rdslab/sampler.hpp"

namespace rdslab {

enum class EstimatorKind {
  mean,  // raw sample proportion
  vh,    // inverse-degree weighted proportion
  sh,    // group-degree and cross-referral balance estimator
};

enum class EstimateStatus {
  ok,
  empty_after_discard,
  degenerate_groups,    // a trait group is absent or made no referrals
  no_cross_referrals,   // both cross-referral rates are zero
};

struct EstimateResult {
  EstimatorKind kind = EstimatorKind::mean;
  int discard_waves = 0;
  double value = 0.0;  // NaN unless status == ok
  int n_used = 0;      // records entering the estimate
  EstimateStatus status = EstimateStatus::ok;
};

const char* to_string(EstimatorKind kind);
const char* to_string(EstimateStatus status);

/// Sample proportion of trait carriers among records with wave >= discard_waves.
EstimateResult mean_estimate(const std::vector<SampleRecord>& records, int discard_waves = 0);

/// Inverse-degree weighted proportion over records with wave >= discard_waves:
/// sum(z_i / d_i) / sum(1 / d_i).
EstimateResult vh_estimate(const std::vector<SampleRecord>& records, int discard_waves = 0);

/// Ingredients of the group-balance estimator. Group A carries the trait.
struct ShComponents {
  int n_a = 0, n_b = 0;
  double d_hat_a = 0.0, d_hat_b = 0.0;  // multiplicity group degree estimates
  long long r_aa = 0, r_ab = 0, r_ba = 0, r_bb = 0;  // referral counts by dyad
  double c_ab = 0.0, c_ba = 0.0;  // cross-referral fractions
};

/// Referral counts use each non-seed record's recruiter trait, resolved from
/// the recruiter's own record.
ShComponents sh_components(const std::vector<SampleRecord>& records);

/// Point estimate from prepared components:
/// d_hat_b * c_ba / (d_hat_a * c_ab + d_hat_b * c_ba).
double sh_point_estimate(const ShComponents& comp);

EstimateResult sh_estimate(const std::vector<SampleRecord>& records);

/// Dispatch on kind. discard_waves is honored by mean and vh; sh always uses
/// the full record set.
EstimateResult estimate(EstimatorKind kind, const std::vector<SampleRecord>& records,
                        int discard_waves = 0);

struct BootstrapResult {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_resamples = 0;
  int n_failed = 0;        // resamples where the estimator degenerated
  bool used_fallback = false;  // an empty recruiter-trait pool forced a uniform draw
};

/// Chain-mimicking bootstrap: records are pooled by the trait of their
/// recruiter; each synthetic chain starts from a uniform draw over all
/// records, then repeatedly draws (with replacement) from the pool keyed by
/// the current record's trait. The estimator runs on each synthetic sample;
/// the interval spans the 5th and 95th percentiles.
BootstrapResult salganik_bootstrap(const std::vector<SampleRecord>& records, EstimatorKind kind,
                                   int discard_waves, int n_resamples, RngStream& rng);

/// Quantile with linear interpolation between order statistics
/// (h = (n - 1) p convention). `sorted` must be ascending and nonempty.
double quantile(const std::vector<double>& sorted, double p);

}  // namespace rdslab
