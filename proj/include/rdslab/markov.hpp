#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "rdslab/netgen.hpp"
#include "rdslab/rng.hpp"

namespace rdslab {

/// Row-stochastic transition matrix of the simple random walk on a network.
/// Rows of isolated nodes are zero; those nodes are listed separately.
struct TransitionMatrix {
  Eigen::MatrixXd probs;
  std::vector<int> isolated;
};

TransitionMatrix transition_matrix(const Network& net);

/// T^k via exponentiation by squaring. k = 0 yields the identity.
Eigen::MatrixXd n_step(const Eigen::MatrixXd& t, unsigned k);

/// Stationary distribution of the walk: probability proportional to degree.
/// Isolated nodes receive zero mass.
Eigen::VectorXd stationary(const Network& net);

/// Column-spread score of T^s for s = 1..max_steps: the largest over
/// columns of (column max - column min). Near zero means every start node
/// sees nearly the same s-step distribution.
std::vector<double> mixing_diagnostic(const Eigen::MatrixXd& t, unsigned max_steps);

/// Node sequence of a uniform random walk, starting at `start`, taking
/// `steps` transitions (result has steps + 1 entries). Throws if the walk
/// reaches an isolated node.
std::vector<int> simulate_walk(const Network& net, int start, unsigned steps, RngStream& rng);

/// Dense matrix as CSV, one row per line, no header.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace rdslab
