#include "rdslab/sampler.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rdslab {

const char* to_string(SeedPolicy policy) {
  switch (policy) {
    case SeedPolicy::ppd_random: return "ppd_random";
    case SeedPolicy::ppd_all_infected: return "ppd_all_infected";
    case SeedPolicy::ppd_all_uninfected: return "ppd_all_uninfected";
  }
  return "?";
}

const char* to_string(Replacement replacement) {
  switch (replacement) {
    case Replacement::without: return "without";
    case Replacement::with: return "with";
  }
  return "?";
}

namespace {

bool policy_admits(SeedPolicy policy, bool trait) {
  switch (policy) {
    case SeedPolicy::ppd_random: return true;
    case SeedPolicy::ppd_all_infected: return trait;
    case SeedPolicy::ppd_all_uninfected: return !trait;
  }
  return false;
}

void validate_design(const SamplingDesign& d) {
  if (d.n_seeds <= 0) throw std::invalid_argument("n_seeds must be positive");
  if (d.max_coupons <= 0) throw std::invalid_argument("max_coupons must be positive");
  if (d.target_size <= 0) throw std::invalid_argument("target_size must be positive");
  if (!(d.referral_bias_infected > 0.0)) {
    throw std::invalid_argument("referral_bias_infected must be positive");
  }
}

}  // namespace

std::vector<int> select_seeds(const Network& net, const SamplingDesign& design, RngStream& rng) {
  validate_design(design);
  std::vector<int> pool;
  std::vector<double> weights;
  for (int v = 0; v < net.size(); ++v) {
    if (net.degree(v) == 0) continue;
    if (!policy_admits(design.seed_policy, net.infected(v))) continue;
    pool.push_back(v);
    weights.push_back(static_cast<double>(net.degree(v)));
  }
  if (static_cast<int>(pool.size()) < design.n_seeds) {
    throw InsufficientEligibleSeeds(
        "seed selection needs " + std::to_string(design.n_seeds) + " eligible nodes, found " +
        std::to_string(pool.size()));
  }
  std::vector<int> seeds;
  seeds.reserve(static_cast<std::size_t>(design.n_seeds));
  for (int s = 0; s < design.n_seeds; ++s) {
    const std::size_t pick = rng.weighted_index(weights);
    seeds.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return seeds;
}

RdsSample run_rds_from_seeds(const Network& net, const SamplingDesign& design,
                             const std::vector<int>& seeds, RngStream& rng) {
  validate_design(design);
  if (seeds.empty()) throw std::invalid_argument("run_rds_from_seeds: empty seed set");
  for (int s : seeds) {
    if (s < 0 || s >= net.size()) throw std::invalid_argument("run_rds_from_seeds: bad seed node");
  }
  if (design.replacement == Replacement::without) {
    std::vector<int> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("run_rds_from_seeds: duplicate seed node");
    }
  }

  RdsSample sample;
  sample.design = design;
  std::vector<char> in_sample(static_cast<std::size_t>(net.size()), 0);
  // Indices into sample.records: re-recruited nodes (with replacement) are
  // full respondents with fresh coupons, so waves track records, not nodes.
  std::vector<std::size_t> current_wave;

  auto append = [&](int node, int wave, int recruiter) {
    SampleRecord rec;
    rec.node = node;
    rec.wave = wave;
    rec.recruiter = recruiter;
    rec.reported_degree = net.degree(node);
    rec.trait = net.infected(node);
    rec.draw_index = static_cast<int>(sample.records.size());
    in_sample[static_cast<std::size_t>(node)] = 1;
    sample.records.push_back(rec);
    return sample.records.size() - 1;
  };

  for (int s : seeds) {
    current_wave.push_back(append(s, 0, -1));
    if (static_cast<int>(sample.records.size()) >= design.target_size) {
      sample.truncated_wave = 0;
      return sample;
    }
  }

  std::vector<int> candidates;
  std::vector<double> weights;
  std::vector<std::size_t> next_wave;
  while (!current_wave.empty()) {
    // Respondents within a wave recruit in uniformly shuffled order; the
    // target-size cutoff therefore lands mid-wave at a random position.
    rng.shuffle(current_wave);
    next_wave.clear();
    for (const std::size_t rec_idx : current_wave) {
      const SampleRecord recruiter = sample.records[rec_idx];
      candidates.clear();
      for (int alter : net.neighbors(recruiter.node)) {
        if (design.replacement == Replacement::without &&
            in_sample[static_cast<std::size_t>(alter)]) {
          continue;
        }
        candidates.push_back(alter);
      }
      const int coupons = std::min<int>(design.max_coupons, static_cast<int>(candidates.size()));
      for (int c = 0; c < coupons; ++c) {
        weights.clear();
        for (int alter : candidates) {
          weights.push_back(net.infected(alter) ? design.referral_bias_infected : 1.0);
        }
        const std::size_t pick = rng.weighted_index(weights);
        const int recruit = candidates[pick];
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
        next_wave.push_back(append(recruit, recruiter.wave + 1, recruiter.node));
        if (static_cast<int>(sample.records.size()) >= design.target_size) {
          sample.truncated_wave = recruiter.wave + 1;
          return sample;
        }
      }
    }
    current_wave.swap(next_wave);
  }
  sample.died_out = static_cast<int>(sample.records.size()) < design.target_size;
  return sample;
}

RdsSample run_rds(const Network& net, const SamplingDesign& design, RngStream& rng) {
  const std::vector<int> seeds = select_seeds(net, design, rng);
  return run_rds_from_seeds(net, design, seeds, rng);
}

std::vector<WaveStats> wave_census(const std::vector<SampleRecord>& records) {
  std::vector<WaveStats> stats;
  std::vector<long long> infected, degree_sum;
  for (const auto& rec : records) {
    const auto w = static_cast<std::size_t>(rec.wave);
    if (w >= stats.size()) {
      stats.resize(w + 1);
      infected.resize(w + 1, 0);
      degree_sum.resize(w + 1, 0);
    }
    ++stats[w].count;
    if (rec.trait) ++infected[w];
    degree_sum[w] += rec.reported_degree;
  }
  for (std::size_t w = 0; w < stats.size(); ++w) {
    if (stats[w].count == 0) continue;
    stats[w].infected_proportion =
        static_cast<double>(infected[w]) / static_cast<double>(stats[w].count);
    stats[w].mean_reported_degree =
        static_cast<double>(degree_sum[w]) / static_cast<double>(stats[w].count);
  }
  return stats;
}

void write_sample_csv(std::ostream& out, const std::vector<SampleRecord>& records) {
  out << "draw_index,node,wave,recruiter,reported_degree,trait\n";
  for (const auto& rec : records) {
    out << rec.draw_index << ',' << rec.node << ',' << rec.wave << ',' << rec.recruiter << ','
        << rec.reported_degree << ',' << (rec.trait ? 1 : 0) << '\n';
  }
}

std::vector<SampleRecord> read_sample_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("sample csv: missing header");
  if (line != "draw_index,node,wave,recruiter,reported_degree,trait") {
    throw std::runtime_error("sample csv: unexpected header '" + line + "'");
  }
  std::vector<SampleRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    SampleRecord rec;
    char comma = 0;
    int trait_flag = 0;
    if (!(row >> rec.draw_index >> comma >> rec.node >> comma >> rec.wave >> comma >>
          rec.recruiter >> comma >> rec.reported_degree >> comma >> trait_flag)) {
      throw std::runtime_error("sample csv: malformed row at line " + std::to_string(line_no));
    }
    rec.trait = trait_flag != 0;
    records.push_back(rec);
  }
  return records;
}

}  // namespace rdslab
