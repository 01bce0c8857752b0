#include "rdslab/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace rdslab {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_probability(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "infeasible targets: " << name << " = " << p << " falls outside (0, 1)";
    throw InfeasibleTargets(os.str());
  }
}

}  // namespace

Network::Network(int n, int n_infected) : n_infected_(n_infected) {
  require(n > 0, "network size must be positive");
  require(n_infected >= 0 && n_infected <= n, "infected count out of range");
  adjacency_.resize(static_cast<std::size_t>(n));
}

void Network::add_edge(int i, int j) {
  require(i != j, "self loops are not allowed");
  require(i >= 0 && j >= 0 && i < size() && j < size(), "edge endpoint out of range");
  if (i > j) std::swap(i, j);
  auto& ni = adjacency_[i];
  auto pos = std::lower_bound(ni.begin(), ni.end(), j);
  require(pos == ni.end() || *pos != j, "duplicate edge");
  ni.insert(pos, j);
  auto& nj = adjacency_[j];
  nj.insert(std::lower_bound(nj.begin(), nj.end(), i), i);
  edges_.emplace_back(i, j);
}

bool Network::has_edge(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= size() || j >= size()) return false;
  const auto& ni = adjacency_[i];
  return std::binary_search(ni.begin(), ni.end(), j);
}

double Network::prevalence() const {
  return static_cast<double>(n_infected_) / static_cast<double>(size());
}

double Network::mean_degree() const {
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(size());
}

double Network::group_mean_degree(bool infected_group) const {
  long long total = 0;
  int count = 0;
  for (int v = 0; v < size(); ++v) {
    if (infected(v) != infected_group) continue;
    total += degree(v);
    ++count;
  }
  if (count == 0) return 0.0;
  return static_cast<double>(total) / static_cast<double>(count);
}

std::vector<long long> Network::edge_type_counts() const {
  std::vector<long long> counts(3, 0);
  for (const auto& [i, j] : edges_) {
    const int type = (infected(i) ? 0 : 1) + (infected(j) ? 0 : 1);
    ++counts[static_cast<std::size_t>(type)];
  }
  return counts;
}

int infected_count(const PopulationConfig& cfg) {
  require(cfg.n_nodes > 0, "n_nodes must be positive");
  require(cfg.prevalence > 0.0 && cfg.prevalence < 1.0, "prevalence must lie in (0, 1)");
  const int k = static_cast<int>(std::lround(cfg.prevalence * cfg.n_nodes));
  require(k > 0 && k < cfg.n_nodes, "prevalence rounds to an empty group");
  return k;
}

DyadProbabilities solve_dyad_probabilities(const PopulationConfig& cfg) {
  const int k = infected_count(cfg);
  const double ni = static_cast<double>(k);
  const double nu = static_cast<double>(cfg.n_nodes - k);
  const double n = static_cast<double>(cfg.n_nodes);
  require(cfg.mean_degree > 0.0, "mean_degree must be positive");
  require(cfg.homophily_ratio_ii > 0.0, "homophily_ratio_ii must be positive");
  require(cfg.homophily_ratio_uu > 0.0, "homophily_ratio_uu must be positive");
  require(cfg.activity_ratio > 0.0, "activity_ratio must be positive");

  const double r_ii = cfg.homophily_ratio_ii;
  const double w = cfg.activity_ratio;

  DyadProbabilities p;
  if (w == 1.0) {
    const double r_uu = cfg.homophily_ratio_uu;
    // Equal group activity: both within-group odds are free, but the two
    // group degree identities must then agree with each other.
    const double s = ni * (ni * r_ii + nu) + nu * (ni + nu * r_uu);
    p.p_iu = cfg.mean_degree * n / s;
    p.p_ii = r_ii * p.p_iu;
    p.p_uu = r_uu * p.p_iu;
    const auto [d_i, d_u] = implied_group_mean_degrees(cfg, p);
    if (std::abs(d_i - d_u) > 1e-9 * cfg.mean_degree) {
      std::ostringstream os;
      os << "infeasible targets: contradictory targets, equal-activity degrees differ ("
         << d_i << " vs " << d_u << ")";
      throw InfeasibleTargets(os.str());
    }
  } else {
    // Unequal activity pins the uninfected within-group probability, so its
    // configured odds ratio is ignored.
    const double prev = ni / n;
    const double d_u = cfg.mean_degree / (prev * w + (1.0 - prev));
    const double d_i = w * d_u;
    p.p_iu = d_i / (ni * r_ii + nu);
    p.p_ii = r_ii * p.p_iu;
    p.p_uu = (d_u - ni * p.p_iu) / nu;
  }
  check_probability(p.p_ii, "p_ii");
  check_probability(p.p_iu, "p_iu");
  check_probability(p.p_uu, "p_uu");
  return p;
}

std::pair<double, double> implied_group_mean_degrees(const PopulationConfig& cfg,
                                                     const DyadProbabilities& p) {
  const int k = infected_count(cfg);
  const double ni = static_cast<double>(k);
  const double nu = static_cast<double>(cfg.n_nodes - k);
  const double d_i = ni * p.p_ii + nu * p.p_iu;
  const double d_u = ni * p.p_iu + nu * p.p_uu;
  return {d_i, d_u};
}

namespace {

/// Visit the dyads of one block in a fixed linear order, skipping ahead
/// geometrically so the work is proportional to the number of edges drawn
/// rather than the number of dyads.
template <class Emit>
void sample_block(double p, long long n_dyads, RngStream& rng, Emit&& emit) {
  if (n_dyads <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (long long t = 0; t < n_dyads; ++t) emit(t);
    return;
  }
  const double log_q = std::log1p(-p);
  long long t = -1;
  for (;;) {
    double u = rng.uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(n_dyads)) return;
    t += 1 + static_cast<long long>(skip);
    if (t >= n_dyads) return;
    emit(t);
  }
}

}  // namespace

Network sample_network(const PopulationConfig& cfg, const DyadProbabilities& p, RngStream& rng) {
  const int k = infected_count(cfg);
  Network net(cfg.n_nodes, k);

  const long long ni = k;
  const long long nu = cfg.n_nodes - k;

  // Within-group blocks enumerate unordered pairs; t -> (v, w) walks row by
  // row through the strict lower triangle.
  auto triangular = [&](long long base, long long count, double prob) {
    long long v = 1;
    long long row_start = 0;
    sample_block(prob, count * (count - 1) / 2, rng, [&](long long t) {
      while (t >= row_start + v) {
        row_start += v;
        ++v;
      }
      const long long w = t - row_start;
      net.add_edge(static_cast<int>(base + v), static_cast<int>(base + w));
    });
  };

  triangular(0, ni, p.p_ii);
  triangular(ni, nu, p.p_uu);
  sample_block(p.p_iu, ni * nu, rng, [&](long long t) {
    const long long i = t / nu;
    const long long j = ni + t % nu;
    net.add_edge(static_cast<int>(i), static_cast<int>(j));
  });
  return net;
}

Network sample_network(const PopulationConfig& cfg, RngStream& rng) {
  return sample_network(cfg, solve_dyad_probabilities(cfg), rng);
}

std::vector<std::vector<int>> connected_components(const Network& net) {
  const int n = net.size();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> components;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    stack.push_back(start);
    label[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      components[static_cast<std::size_t>(id)].push_back(v);
      for (int u : net.neighbors(v)) {
        if (label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (auto& c : components) std::sort(c.begin(), c.end());
  return components;
}

void write_edge_list(std::ostream& out, const Network& net) {
  out << "N " << net.size() << " INFECTED " << net.n_infected() << "\n";
  for (const auto& [i, j] : net.edges()) out << i << " " << j << "\n";
}

Network read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("edge list: missing header");
  std::istringstream header(line);
  std::string tag_n, tag_inf;
  int n = 0, k = 0;
  if (!(header >> tag_n >> n >> tag_inf >> k) || tag_n != "N" || tag_inf != "INFECTED") {
    throw std::runtime_error("edge list: malformed header '" + line + "'");
  }
  Network net(n, k);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    int i = 0, j = 0;
    if (!(row >> i >> j)) {
      throw std::runtime_error("edge list: malformed edge at line " + std::to_string(line_no));
    }
    std::string extra;
    if (row >> extra) {
      throw std::runtime_error("edge list: trailing tokens at line " + std::to_string(line_no));
    }
    try {
      net.add_edge(i, j);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("edge list: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return net;
}

}  // namespace rdslab
