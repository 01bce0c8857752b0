#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "rdslab/estimators.hpp"
#include "rdslab/netgen.hpp"
#include "test_support.hpp"

using namespace rdslab;

namespace {

SampleRecord rec(int node, bool trait, int degree, int wave = 0, int recruiter = -1) {
  SampleRecord r;
  r.node = node;
  r.trait = trait;
  r.reported_degree = degree;
  r.wave = wave;
  r.recruiter = recruiter;
  r.draw_index = node;
  return r;
}

std::vector<SampleRecord> swap_traits(std::vector<SampleRecord> records) {
  for (auto& r : records) r.trait = !r.trait;
  return records;
}

// One seed per group; group A refers only within A, group B refers across.
std::vector<SampleRecord> one_sided_referrals() {
  return {
      rec(0, true, 2, 0, -1),
      rec(1, true, 2, 1, 0),
      rec(10, false, 4, 0, -1),
      rec(11, true, 2, 1, 10),
  };
}

std::vector<SampleRecord> referral_forest() {
  return {
      rec(10, false, 4, 0, -1),  // seed, group B
      rec(0, true, 2, 1, 10),
      rec(11, false, 4, 2, 0),
      rec(12, false, 4, 2, 0),
      rec(13, false, 4, 3, 11),
  };
}

std::vector<SampleRecord> mixed_sample() {
  return {
      rec(0, true, 3, 0, -1),
      rec(1, true, 3, 1, 0),
      rec(10, false, 6, 1, 0),
      rec(11, false, 6, 2, 1),
      rec(12, false, 6, 1, 10),
      rec(2, true, 3, 2, 11),
  };
}

}  // namespace

TEST_CASE("mean_estimate: proportions and discard statuses") {
  const std::vector<SampleRecord> recs = {rec(0, true, 5), rec(1, false, 5), rec(2, true, 5)};
  CHECK(mean_estimate(recs).value == doctest::Approx(2.0 / 3.0));
  CHECK(mean_estimate({rec(0, true, 2), rec(1, true, 9)}).value == 1.0);
  CHECK(mean_estimate({rec(0, false, 2)}).value == 0.0);

  const EstimateResult empty = mean_estimate(recs, 1);
  CHECK(empty.status == EstimateStatus::empty_after_discard);
  CHECK(empty.n_used == 0);
  CHECK(std::isnan(empty.value));

  const std::vector<SampleRecord> waves = {rec(0, true, 5, 0), rec(1, false, 5, 1),
                                           rec(2, false, 5, 2)};
  const EstimateResult tail = mean_estimate(waves, 1);
  CHECK(tail.value == 0.0);
  CHECK(tail.n_used == 2);
  CHECK(tail.discard_waves == 1);
}

TEST_CASE("vh_estimate: inverse-degree weighting") {
  const std::vector<SampleRecord> recs = {rec(0, true, 2), rec(1, false, 4), rec(2, true, 4)};
  CHECK(vh_estimate(recs).value == doctest::Approx(0.75).epsilon(1e-15));

  // Equal degrees reduce to the plain proportion.
  const std::vector<SampleRecord> flat = {rec(0, true, 7), rec(1, false, 7), rec(2, false, 7),
                                          rec(3, true, 7)};
  CHECK(vh_estimate(flat).value == doctest::Approx(0.5).epsilon(1e-15));

  // Scaling all degrees by a constant changes nothing.
  const std::vector<SampleRecord> scaled = {rec(0, true, 14), rec(1, false, 28), rec(2, true, 28)};
  CHECK(vh_estimate(scaled).value == doctest::Approx(vh_estimate(recs).value).epsilon(1e-15));

  CHECK_THROWS_AS(vh_estimate({rec(0, true, 0)}), std::invalid_argument);
  // Discarded records are exempt from the degree check.
  CHECK(vh_estimate({rec(0, true, 0, 0), rec(1, true, 3, 1)}, 1).value == 1.0);
}

TEST_CASE("vh_estimate: census of a complete graph recovers the exact share") {
  const Network net = test_support::k4();
  std::vector<SampleRecord> census;
  for (int v = 0; v < net.size(); ++v)
    census.push_back(rec(v, net.infected(v), net.degree(v)));
  CHECK(vh_estimate(census).value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("vh_estimate: label swap complements the estimate") {
  const std::vector<SampleRecord> recs = {rec(0, true, 2), rec(1, false, 4), rec(2, true, 4),
                                          rec(3, false, 9), rec(4, true, 3)};
  const double direct = vh_estimate(recs).value;
  const double swapped = vh_estimate(swap_traits(recs)).value;
  CHECK(std::abs(direct + swapped - 1.0) < 1e-12);
  CHECK(direct >= 0.0);
  CHECK(direct <= 1.0);
}

TEST_CASE("sh_components: hand-checked referral forest") {
  const ShComponents comp = sh_components(referral_forest());
  CHECK(comp.n_a == 1);
  CHECK(comp.n_b == 4);
  CHECK(comp.d_hat_a == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(comp.d_hat_b == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(comp.r_aa == 0);
  CHECK(comp.r_ab == 2);
  CHECK(comp.r_ba == 1);
  CHECK(comp.r_bb == 1);
  CHECK(comp.c_ab == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(comp.c_ba == doctest::Approx(0.5).epsilon(1e-15));

  const EstimateResult est = sh_estimate(referral_forest());
  CHECK(est.status == EstimateStatus::ok);
  CHECK(est.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(est.n_used == 5);
}

TEST_CASE("sh_point_estimate from prepared components") {
  ShComponents comp;
  comp.n_a = 1;
  comp.n_b = 4;
  comp.d_hat_a = 2.0;
  comp.d_hat_b = 4.0;
  comp.c_ab = 1.0;
  comp.c_ba = 0.5;
  CHECK(sh_point_estimate(comp) == doctest::Approx(0.5).epsilon(1e-15));
  comp.c_ba = 0.25;
  CHECK(sh_point_estimate(comp) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("sh_estimate: mixed sample and label-swap duality") {
  const EstimateResult direct = sh_estimate(mixed_sample());
  REQUIRE(direct.status == EstimateStatus::ok);
  CHECK(direct.value == doctest::Approx(0.6).epsilon(1e-15));
  const EstimateResult swapped = sh_estimate(swap_traits(mixed_sample()));
  REQUIRE(swapped.status == EstimateStatus::ok);
  CHECK(std::abs(direct.value + swapped.value - 1.0) < 1e-12);
}

TEST_CASE("sh_estimate: degenerate samples are flagged, not guessed") {
  // Single trait group present.
  const EstimateResult lone =
      sh_estimate({rec(0, true, 3, 0, -1), rec(1, true, 3, 1, 0)});
  CHECK(lone.status == EstimateStatus::degenerate_groups);
  CHECK(std::isnan(lone.value));

  // Both groups present but group B never refers anyone.
  const EstimateResult silent =
      sh_estimate({rec(0, true, 3, 0, -1), rec(1, true, 3, 1, 0), rec(10, false, 5, 0, -1)});
  CHECK(silent.status == EstimateStatus::degenerate_groups);

  // Referrals exist on both sides but never cross group lines.
  const EstimateResult parallel = sh_estimate({
      rec(0, true, 3, 0, -1),
      rec(1, true, 3, 1, 0),
      rec(10, false, 5, 0, -1),
      rec(11, false, 5, 1, 10),
  });
  CHECK(parallel.status == EstimateStatus::no_cross_referrals);
  CHECK(std::isnan(parallel.value));

  // Unknown recruiter id is a structural error.
  CHECK_THROWS_AS(sh_estimate({rec(0, true, 3, 1, 99)}), std::runtime_error);
}

TEST_CASE("sh_estimate: one-sided crossing pushes the estimate to the boundary") {
  const EstimateResult est = sh_estimate(one_sided_referrals());
  REQUIRE(est.status == EstimateStatus::ok);
  CHECK(est.value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("estimate dispatch honors discard for mean and vh only") {
  const auto sample = mixed_sample();
  CHECK(estimate(EstimatorKind::mean, sample, 1).value == mean_estimate(sample, 1).value);
  CHECK(estimate(EstimatorKind::vh, sample, 2).value == vh_estimate(sample, 2).value);
  CHECK(estimate(EstimatorKind::vh, sample, 2).discard_waves == 2);
  CHECK(estimate(EstimatorKind::sh, sample, 3).value == sh_estimate(sample).value);
}

TEST_CASE("to_string names") {
  CHECK(std::string(to_string(EstimatorKind::mean)) == "mean");
  CHECK(std::string(to_string(EstimatorKind::vh)) == "vh");
  CHECK(std::string(to_string(EstimatorKind::sh)) == "sh");
  CHECK(std::string(to_string(EstimateStatus::ok)) == "ok");
  CHECK(std::string(to_string(EstimateStatus::empty_after_discard)) == "empty_after_discard");
  CHECK(std::string(to_string(EstimateStatus::degenerate_groups)) == "degenerate_groups");
  CHECK(std::string(to_string(EstimateStatus::no_cross_referrals)) == "no_cross_referrals");
}

TEST_CASE("quantile: linear interpolation between order statistics") {
  const std::vector<double> sorted = {1.0, 2.0, 3.0, 4.0};
  CHECK(quantile(sorted, 0.0) == 1.0);
  CHECK(quantile(sorted, 1.0) == 4.0);
  CHECK(quantile(sorted, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(quantile(sorted, 0.25) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(quantile({5.0}, 0.73) == 5.0);
  CHECK_THROWS_AS(quantile({}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile(sorted, 1.5), std::invalid_argument);
}

TEST_CASE("salganik_bootstrap: single-record sample collapses to a point") {
  RngStream rng(50);
  const BootstrapResult boot =
      salganik_bootstrap({rec(0, true, 4)}, EstimatorKind::mean, 0, 100, rng);
  CHECK(boot.point == 1.0);
  CHECK(boot.ci_low == 1.0);
  CHECK(boot.ci_high == 1.0);
  CHECK(boot.n_failed == 0);
  CHECK_FALSE(boot.used_fallback);
}

TEST_CASE("salganik_bootstrap: deterministic for a fixed stream") {
  RngStream rng_a(51), rng_b(51);
  const auto sample = mixed_sample();
  const BootstrapResult a = salganik_bootstrap(sample, EstimatorKind::vh, 0, 300, rng_a);
  const BootstrapResult b = salganik_bootstrap(sample, EstimatorKind::vh, 0, 300, rng_b);
  CHECK(a.point == b.point);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
  CHECK(a.n_failed == b.n_failed);
  CHECK(a.ci_low <= a.ci_high);
  CHECK(a.point == doctest::Approx(vh_estimate(sample).value));
}

TEST_CASE("salganik_bootstrap: empty recruiter pool falls back to uniform draws") {
  const std::vector<SampleRecord> sample = {rec(0, true, 2, 0, -1), rec(10, false, 4, 1, 0)};
  RngStream rng(52);
  const BootstrapResult boot = salganik_bootstrap(sample, EstimatorKind::mean, 0, 50, rng);
  CHECK(boot.used_fallback);
  CHECK(boot.n_resamples == 50);
}

TEST_CASE("salganik_bootstrap: degenerate resamples are counted, not hidden") {
  // Every record carries the trait, so each resample lacks group B.
  const std::vector<SampleRecord> sample = {rec(0, true, 3, 0, -1), rec(1, true, 3, 1, 0),
                                            rec(2, true, 3, 2, 1)};
  RngStream rng(53);
  const BootstrapResult boot = salganik_bootstrap(sample, EstimatorKind::sh, 0, 40, rng);
  CHECK(boot.n_failed == 40);
  CHECK(std::isnan(boot.ci_low));
  CHECK(std::isnan(boot.ci_high));
}

TEST_CASE("salganik_bootstrap: interval brackets the truth on standard samples") {
  PopulationConfig cfg;
  SamplingDesign design;
  int covered = 0;
  double width_sum = 0.0;
  const int n_trials = 25;
  for (int trial = 0; trial < n_trials; ++trial) {
    RngStream rng = substream(9000, "bootstrap-coverage", static_cast<std::uint64_t>(trial));
    const Network net = sample_network(cfg, rng);
    const RdsSample sample = run_rds(net, design, rng);
    const BootstrapResult boot =
        salganik_bootstrap(sample.records, EstimatorKind::vh, 1, 400, rng);
    REQUIRE(boot.ci_low <= boot.ci_high);
    width_sum += boot.ci_high - boot.ci_low;
    if (boot.ci_low <= 0.2 && 0.2 <= boot.ci_high) ++covered;
  }
  CHECK(covered >= 17);
  const double mean_width = width_sum / n_trials;
  CHECK(mean_width > 0.02);
  CHECK(mean_width < 0.4);
}
