#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rdslab/netgen.hpp"
#include "rdslab/rng.hpp"

namespace rdslab {

/// How the initial seeds are chosen. All policies draw probability
/// proportional to degree, without replacement, from the eligible pool.
enum class SeedPolicy {
  ppd_random,          // any node with at least one tie
  ppd_all_infected,    // trait carriers only
  ppd_all_uninfected,  // non-carriers only
};

enum class Replacement {
  without,  // a node enters the sample at most once
  with,     // recruits may be drawn again later in the chain
};

struct SamplingDesign {
  int n_seeds = 10;
  SeedPolicy seed_policy = SeedPolicy::ppd_random;
  int max_coupons = 2;
  int target_size = 500;
  Replacement replacement = Replacement::without;
  /// Relative preference for recruiting trait-carrying alters (1 = none).
  double referral_bias_infected = 1.0;
  friend bool operator==(const SamplingDesign&, const SamplingDesign&) = default;
};

struct SampleRecord {
  int node = -1;
  int wave = 0;
  int recruiter = -1;  // node id of the recruiter, -1 for seeds
  int reported_degree = 0;
  bool trait = false;
  int draw_index = 0;  // position in recruitment order
  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

const char* to_string(SeedPolicy policy);
const char* to_string(Replacement replacement);

struct RdsSample {
  std::vector<SampleRecord> records;
  SamplingDesign design;
  /// Wave during which the target size cut the sampling short, if it did.
  std::optional<int> truncated_wave;
  /// True when every chain ran out of recruits before reaching the target.
  bool died_out = false;
};

class InsufficientEligibleSeeds : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sequential probability-proportional-to-degree draw of n_seeds distinct
/// nodes from the policy's eligible pool (nodes with degree >= 1).
std::vector<int> select_seeds(const Network& net, const SamplingDesign& design, RngStream& rng);

/// Full coupon-driven referral process starting from freshly drawn seeds.
RdsSample run_rds(const Network& net, const SamplingDesign& design, RngStream& rng);

/// Same process from a fixed, caller-supplied seed set.
RdsSample run_rds_from_seeds(const Network& net, const SamplingDesign& design,
                             const std::vector<int>& seeds, RngStream& rng);

struct WaveStats {
  int count = 0;
  double infected_proportion = 0.0;
  double mean_reported_degree = 0.0;
};

/// Per-wave record counts, trait proportions and mean reported degrees;
/// index = wave number.
std::vector<WaveStats> wave_census(const std::vector<SampleRecord>& records);

/// CSV round-trip of the per-record table (header included).
void write_sample_csv(std::ostream& out, const std::vector<SampleRecord>& records);
std::vector<SampleRecord> read_sample_csv(std::istream& in);

}  // namespace rdslab
