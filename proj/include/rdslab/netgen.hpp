#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rdslab/rng.hpp"

namespace rdslab {

/// Target properties for a two-group population. Group I ("infected") holds
/// the trait of interest, group U the rest.
struct PopulationConfig {
  int n_nodes = 1000;
  double prevalence = 0.2;
  double mean_degree = 7.0;
  /// Within-group tie odds relative to cross-group ties, per group.
  double homophily_ratio_ii = 5.0;
  double homophily_ratio_uu = 2.0;
  /// Ratio of group-I mean degree to group-U mean degree.
  double activity_ratio = 1.0;
  friend bool operator==(const PopulationConfig&, const PopulationConfig&) = default;
};

/// Dyad-level tie probabilities of the two-group model.
struct DyadProbabilities {
  double p_ii = 0.0;
  double p_iu = 0.0;
  double p_uu = 0.0;
};

/// Thrown when no probability triple in (0,1)^3 can satisfy the configured
/// targets, or when the targets contradict each other.
class InfeasibleTargets : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected simple graph over nodes 0..n-1. Nodes 0..n_infected-1 carry
/// the trait. Adjacency is stored both as sorted neighbor lists and as a
/// flat edge list (i < j).
class Network {
 public:
  Network(int n, int n_infected);

  int size() const { return static_cast<int>(adjacency_.size()); }
  int n_infected() const { return n_infected_; }
  bool infected(int node) const { return node < n_infected_; }

  void add_edge(int i, int j);
  bool has_edge(int i, int j) const;

  int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }
  const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Realized fraction of nodes carrying the trait.
  double prevalence() const;
  double mean_degree() const;
  /// Mean degree within one group.
  double group_mean_degree(bool infected_group) const;
  /// Edge counts by dyad type: {ii, iu, uu}.
  std::vector<long long> edge_type_counts() const;

 private:
  int n_infected_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::pair<int, int>> edges_;
};

/// Number of trait carriers implied by a config (prevalence rounded to the
/// nearest whole node).
int infected_count(const PopulationConfig& cfg);

/// Solve for dyad probabilities hitting the configured mean degree,
/// homophily ratios and activity ratio in expectation.
///
/// With activity_ratio == 1 both homophily ratios are honored and must be
/// mutually consistent; otherwise the uninfected ratio is implied by the
/// remaining targets and its configured value is ignored.
DyadProbabilities solve_dyad_probabilities(const PopulationConfig& cfg);

/// Expected group mean degrees {d_I, d_U} under given probabilities, using
/// the whole-population denominator convention (self-pair term retained).
std::pair<double, double> implied_group_mean_degrees(const PopulationConfig& cfg,
                                                     const DyadProbabilities& p);

/// Draw one network: each dyad is an independent Bernoulli with the
/// probability of its type. Probabilities may sit at 0 or 1 here (empty and
/// saturated blocks are valid draws); only the solver insists on (0,1).
Network sample_network(const PopulationConfig& cfg, const DyadProbabilities& p, RngStream& rng);

/// Convenience form: solve the probabilities from the config first.
Network sample_network(const PopulationConfig& cfg, RngStream& rng);

/// Connected components as lists of nodes; largest first.
std::vector<std::vector<int>> connected_components(const Network& net);

/// Plain text edge list round-trip. Header line "N <n> INFECTED <k>",
/// then one "i j" pair per line with i < j.
void write_edge_list(std::ostream& out, const Network& net);
Network read_edge_list(std::istream& in);

}  // namespace rdslab
