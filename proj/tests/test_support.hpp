#pragma once

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "rdslab/netgen.hpp"

namespace test_support {

/// Path a-b-c as nodes 0-1-2 (node 0 carries the trait).
inline rdslab::Network path3() {
  rdslab::Network net(3, 1);
  net.add_edge(0, 1);
  net.add_edge(1, 2);
  return net;
}

inline rdslab::Network k4() {
  rdslab::Network net(4, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) net.add_edge(i, j);
  }
  return net;
}

/// Center node 0 plus `leaves` spokes.
inline rdslab::Network star(int leaves, int n_infected = 1) {
  rdslab::Network net(leaves + 1, n_infected);
  for (int l = 1; l <= leaves; ++l) net.add_edge(0, l);
  return net;
}

/// Two 5-cliques, nodes 0-4 infected, joined by the single edge 4-5.
/// The strong-block member of the matched 10-node demo pair.
inline rdslab::Network demo_strong_blocks() {
  rdslab::Network net(10, 5);
  for (int base : {0, 5}) {
    for (int i = base; i < base + 5; ++i) {
      for (int j = i + 1; j < base + 5; ++j) net.add_edge(i, j);
    }
  }
  net.add_edge(4, 5);
  return net;
}

/// Two 5-cliques joined by the perfect matching (i, i+5): five cross ties.
inline rdslab::Network demo_weak_blocks() {
  rdslab::Network net(10, 5);
  for (int base : {0, 5}) {
    for (int i = base; i < base + 5; ++i) {
      for (int j = i + 1; j < base + 5; ++j) net.add_edge(i, j);
    }
  }
  for (int i = 0; i < 5; ++i) net.add_edge(i, i + 5);
  return net;
}

/// Fixed 8-node connected non-bipartite graph: the 8-cycle plus chords
/// (0,2) and (4,6); nodes 0-2 carry the trait. Degrees alternate 3 and 2.
inline rdslab::Network eight_node_graph() {
  rdslab::Network net(8, 3);
  for (int i = 0; i < 8; ++i) net.add_edge(i, (i + 1) % 8);
  net.add_edge(0, 2);
  net.add_edge(4, 6);
  return net;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

/// Run a shell command, capturing combined output.
inline CommandResult run_command(const std::string& command) {
  char path[] = "/tmp/rdslab_cmd_XXXXXX";
  const int fd = mkstemp(path);
  if (fd >= 0) close(fd);
  const int raw = std::system((command + " > " + path + " 2>&1").c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  result.output = text.str();
  std::remove(path);
  return result;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace test_support
