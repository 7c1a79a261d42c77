#pragma once

// Directed and undirected graphs over a fixed, ordered node list, plus the
// order-driven algorithms used by the reduction engine: topological orders,
// moralization, perfect lists, maximum cardinality search, fill-in and
// clique extraction.
//
// Nodes are identified by their position in the node list. Every algorithm
// iterates in node-list order and every set-valued output is sorted by
// position, so results are reproducible run to run.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dirred {

using NodeId = std::size_t;
using NodeSet = std::vector<NodeId>;  // always sorted ascending, no duplicates

// A permutation of the nodes 0..n-1.
class NodeOrder {
 public:
  NodeOrder() = default;

  // Throws InputError unless `sequence` is a permutation of 0..node_count-1.
  NodeOrder(std::vector<NodeId> sequence, std::size_t node_count);

  static NodeOrder identity(std::size_t node_count);

  std::size_t size() const { return sequence_.size(); }
  NodeId operator[](std::size_t index) const { return sequence_[index]; }
  std::size_t position(NodeId node) const { return position_[node]; }
  bool precedes(NodeId a, NodeId b) const { return position_[a] < position_[b]; }

  std::span<const NodeId> sequence() const { return sequence_; }
  auto begin() const { return sequence_.begin(); }
  auto end() const { return sequence_.end(); }

  bool operator==(const NodeOrder& other) const { return sequence_ == other.sequence_; }

 private:
  std::vector<NodeId> sequence_;
  std::vector<std::size_t> position_;
};

class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId node) const { return names_.at(node); }
  // Throws InputError for unknown labels.
  NodeId id(const std::string& name) const;

  const NodeSet& parents(NodeId node) const { return parents_.at(node); }
  const NodeSet& children(NodeId node) const { return children_.at(node); }
  bool has_arc(NodeId tail, NodeId head) const;
  std::size_t arc_count() const;
  // All arcs, sorted by (tail, head).
  std::vector<std::pair<NodeId, NodeId>> arcs() const;

  // Self-arcs and duplicates are rejected with InputError. Acyclicity is
  // not checked here; topological_order reports cycles.
  void add_arc(NodeId tail, NodeId head);
  void remove_arc(NodeId tail, NodeId head);

  NodeId add_node(std::string name);
  // Removes a node and its incident arcs; ids above `node` shift down by one.
  void remove_node(NodeId node);

  bool operator==(const DirectedGraph& other) const = default;

 private:
  void check(NodeId node) const;

  std::vector<std::string> names_;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
};

class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(NodeId node) const { return names_.at(node); }
  NodeId id(const std::string& name) const;

  const NodeSet& neighbors(NodeId node) const { return neighbors_.at(node); }
  bool adjacent(NodeId a, NodeId b) const;
  std::size_t edge_count() const;
  // Edges as (lower id, higher id), sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  // Returns false if the edge was already present. Self-loops throw.
  bool add_edge(NodeId a, NodeId b);
  void remove_edge(NodeId a, NodeId b);

  bool operator==(const UndirectedGraph& other) const = default;

 private:
  void check(NodeId node) const;

  std::vector<std::string> names_;
  std::vector<NodeSet> neighbors_;
};

// Kahn's algorithm; among ready nodes the earliest in node-list order goes
// first. Throws StructuralError naming one cycle.
NodeOrder topological_order(const DirectedGraph& g);
// As above, but ties go to the node earliest in `priority`.
NodeOrder topological_order(const DirectedGraph& g, const NodeOrder& priority);

bool is_ordered(const DirectedGraph& g, const NodeOrder& order);

UndirectedGraph moral_graph(const DirectedGraph& g);

// True iff every node's earlier neighbors form a clique.
bool is_perfect(const UndirectedGraph& u, const NodeOrder& order);

NodeOrder max_cardinality_search(const UndirectedGraph& u, const NodeOrder& tiebreak);

bool is_chordal(const UndirectedGraph& u);

// Minimal supergraph of `u` for which `order` is perfect: from the last node
// to the first, join every pair of earlier neighbors.
UndirectedGraph fill_in(const UndirectedGraph& u, const NodeOrder& order);

// Requires `perfect` to be a perfect list for `u` (InputError otherwise).
// Cliques are sorted, and listed in lexicographic order.
std::vector<NodeSet> maximal_cliques(const UndirectedGraph& u, const NodeOrder& perfect);

// Directs every edge from the earlier to the later node of `order`.
DirectedGraph orient_by_order(const UndirectedGraph& u, const NodeOrder& order);

}  // namespace dirred
