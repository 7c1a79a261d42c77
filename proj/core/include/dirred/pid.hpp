#pragma once

// Probabilistic influence diagrams: a DAG over discrete variables with one
// table per node, plus the set of observed (evidence) nodes.
//
// Every table lists its parents in ascending node-list position. Unobserved
// nodes carry a conditional table over (parents..., child); evidence nodes
// carry a likelihood over their parents only. A node's table is read as
// conditional on all evidence that is not a descendant of the node.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dirred/factor.hpp"
#include "dirred/graph.hpp"

namespace dirred {

inline constexpr double kNormalizationTolerance = 1e-9;

enum class TableKind { conditional, likelihood };

struct Cpt {
  NodeId child = 0;
  TableKind kind = TableKind::conditional;
  // conditional: vars = (parents ascending..., child)
  // likelihood:  vars = (parents ascending...)
  Factor table;

  NodeSet parents() const;
  std::size_t child_cardinality() const;

  bool operator==(const Cpt& other) const = default;
};

// Rearranges `table` into canonical layout for `child`.
Cpt make_cpt(NodeId child, TableKind kind, const Factor& table);

class Pid {
 public:
  Pid() = default;
  // No validation happens here; run validate() on untrusted input.
  Pid(DirectedGraph graph, std::vector<std::vector<std::string>> outcomes, std::vector<Cpt> tables,
      std::vector<std::optional<std::size_t>> observed);

  const DirectedGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }
  const std::string& name(NodeId node) const { return graph_.name(node); }
  NodeId id(const std::string& name) const { return graph_.id(name); }
  const NodeSet& parents(NodeId node) const { return graph_.parents(node); }
  const NodeSet& children(NodeId node) const { return graph_.children(node); }

  const std::vector<std::string>& outcomes(NodeId node) const { return outcomes_.at(node); }
  std::size_t cardinality(NodeId node) const { return outcomes_.at(node).size(); }
  const Cpt& table(NodeId node) const { return tables_.at(node); }

  bool is_evidence(NodeId node) const { return tables_.at(node).kind == TableKind::likelihood; }
  // Observed outcome for exact observations; empty for virtual evidence.
  std::optional<std::size_t> observed(NodeId node) const { return observed_.at(node); }
  NodeSet evidence() const;

  // Low-level edits used by the reduction operations. They keep the
  // per-node vectors aligned but do not re-check invariants.
  void set_table(NodeId node, Cpt table);
  void set_observed(NodeId node, std::optional<std::size_t> value) { observed_.at(node) = value; }
  void add_arc(NodeId tail, NodeId head) { graph_.add_arc(tail, head); }
  void remove_arc(NodeId tail, NodeId head) { graph_.remove_arc(tail, head); }
  NodeId add_node(std::string name, std::vector<std::string> outcomes, std::optional<std::size_t> observed);
  // Removes a node that nothing else references; ids above it shift down.
  void remove_node(NodeId node);

  bool operator==(const Pid& other) const = default;

 private:
  DirectedGraph graph_;
  std::vector<std::vector<std::string>> outcomes_;
  std::vector<Cpt> tables_;
  std::vector<std::optional<std::size_t>> observed_;
};

enum class Severity { warning, error };

struct Finding {
  Severity severity;
  std::string subject;  // node or arc label
  std::string code;     // short machine-readable tag, e.g. "normalization"
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;
};

ValidationReport validate(const Pid& p);

// Transitive closure of parents, plus the node itself.
NodeSet ancestral_set(const DirectedGraph& g, NodeId node);
NodeSet ancestral_set(const Pid& p, NodeId node);

// Every two parents of a common child are adjacent.
bool is_decomposable(const DirectedGraph& g);
// The same test restricted to the subgraph induced by the node's ancestral set.
bool is_decomposable_wrt(const DirectedGraph& g, NodeId node);
bool is_decomposable(const Pid& p);
bool is_decomposable_wrt(const Pid& p, NodeId node);

// The ordered list of the ancestral set of `node`. Throws InputError when the
// diagram is not decomposable with respect to `node`, and InternalError if
// the list nevertheless turns out not to be unique.
std::vector<NodeId> unique_ordered_list(const Pid& p, NodeId node);

// Orientation of the fill-in of the moral graph under `target`.
DirectedGraph minimal_dpid_graph(const DirectedGraph& g, const NodeOrder& target);
DirectedGraph minimal_dpid_graph(const Pid& p, const NodeOrder& target);

}  // namespace dirred
