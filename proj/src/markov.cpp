#include "rdslab/markov.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rdslab {

TransitionMatrix transition_matrix(const Network& net) {
  const int n = net.size();
  TransitionMatrix result;
  result.probs = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    const int d = net.degree(v);
    if (d == 0) {
      result.isolated.push_back(v);
      continue;
    }
    const double p = 1.0 / static_cast<double>(d);
    for (int u : net.neighbors(v)) result.probs(v, u) = p;
  }
  return result;
}

Eigen::MatrixXd n_step(const Eigen::MatrixXd& t, unsigned k) {
  if (t.rows() != t.cols()) throw std::invalid_argument("n_step: matrix must be square");
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(t.rows(), t.cols());
  Eigen::MatrixXd base = t;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Eigen::VectorXd stationary(const Network& net) {
  const int n = net.size();
  Eigen::VectorXd pi(n);
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    pi(v) = static_cast<double>(net.degree(v));
    total += pi(v);
  }
  if (total <= 0.0) throw std::invalid_argument("stationary: network has no edges");
  return pi / total;
}

std::vector<double> mixing_diagnostic(const Eigen::MatrixXd& t, unsigned max_steps) {
  if (t.rows() != t.cols()) throw std::invalid_argument("mixing_diagnostic: matrix must be square");
  std::vector<double> scores;
  scores.reserve(max_steps);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(t.rows(), t.cols());
  for (unsigned s = 1; s <= max_steps; ++s) {
    power = power * t;
    const double spread =
        (power.colwise().maxCoeff() - power.colwise().minCoeff()).maxCoeff();
    scores.push_back(spread);
  }
  return scores;
}

std::vector<int> simulate_walk(const Network& net, int start, unsigned steps, RngStream& rng) {
  if (start < 0 || start >= net.size()) throw std::invalid_argument("simulate_walk: bad start node");
  std::vector<int> path;
  path.reserve(steps + 1);
  path.push_back(start);
  int current = start;
  for (unsigned s = 0; s < steps; ++s) {
    const auto& nb = net.neighbors(current);
    if (nb.empty()) {
      throw std::runtime_error("simulate_walk: reached isolated node " + std::to_string(current));
    }
    current = nb[static_cast<std::size_t>(rng.uniform_below(nb.size()))];
    path.push_back(current);
  }
  return path;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, m(r, c));
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace rdslab
