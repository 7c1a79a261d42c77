#pragma once

// Small hand-built diagrams shared by the unit and acceptance tests.

#include <string>
#include <utility>
#include <vector>

#include "dirred/pid.hpp"

namespace dirred::testing {

// Builds a Pid from per-node tables laid out over (listed parents..., node),
// the node's own outcome varying fastest.
class PidBuilder {
 public:
  PidBuilder& node(std::string name, std::size_t cardinality, std::vector<std::string> parents,
                   std::vector<double> table);
  Pid build() const;

 private:
  struct Entry {
    std::string name;
    std::size_t cardinality;
    std::vector<std::string> parents;
    std::vector<double> table;
  };
  std::vector<Entry> specs_;
};

// X -> Y; P(X=1)=0.3; P(Y=1|X=0)=0.2, P(Y=1|X=1)=0.9.
Pid chain2();
// A -> B -> C with fixed tables.
Pid chain3();
// X1 -> X3 <- X2.
Pid collider();
// The undirected 4-cycle A-B-C-D-A.
UndirectedGraph cycle4();

std::vector<std::pair<std::string, std::string>> arc_names(const DirectedGraph& g);
std::vector<std::pair<std::string, std::string>> edge_names(const UndirectedGraph& u);

}  // namespace dirred::testing
