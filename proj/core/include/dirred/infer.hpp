#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dirred/factor.hpp"
#include "dirred/pid.hpp"
#include "dirred/reduce.hpp"

namespace dirred {

inline constexpr std::size_t kDefaultOracleCap = std::size_t{1} << 20;

// Product of every table over all unobserved variables, listed in node
// order. Evidence-free: the prior joint. With absorbed evidence: sums to
// the probability of the evidence.
struct JointTable {
  std::vector<NodeId> variables;
  std::vector<std::size_t> cardinalities;
  std::vector<double> values;

  double total() const;
  // Unnormalized marginal of one listed variable.
  std::vector<double> marginal(NodeId node) const;
};

// Brute-force enumeration. Throws ResourceError above `cap` cells.
JointTable joint_oracle(const Pid& p, std::size_t cap = kDefaultOracleCap);

// True once every evidence node is disconnected.
bool evidence_propagated(const Pid& p);

// P(node | evidence), by eliminating over the node's ancestral set in
// ordered-list order. Requires propagated evidence. Exactly observed nodes
// return a point mass.
std::vector<double> posterior_marginal(const Pid& p, NodeId node);

// Product of the evidence scalars; 1 with no evidence.
double evidence_probability(const Pid& p);

struct ScopeCheck {
  std::size_t step = 0;
  TableScope scope;
  bool contained = false;
};

struct ComplexityReport {
  std::vector<std::string> max_table_scope;
  std::size_t max_table_cells = 0;
  std::size_t max_clique_cells = 0;
  std::vector<std::vector<std::string>> cliques;
  std::vector<ScopeCheck> scopes;
  bool clique_containment = true;
  // Node pairs joined at some point during the trace that were not adjacent
  // in the starting diagram.
  std::size_t added_arc_count = 0;
};

// Checks every table scope in `trace` against the maximal cliques of the
// fill-in of the starting diagram's moral graph under `target`.
ComplexityReport complexity_report(const ReversalTrace& trace, const Pid& original, const NodeOrder& target);

struct EvidenceSet {
  std::vector<Observation> observations;
  std::vector<VirtualEvidence> likelihoods;
};

struct PipelineResult {
  // The input network with the virtual evidence nodes appended, before any
  // reversal or absorption, and the target extended over those nodes.
  Pid original;
  NodeOrder target;
  Pid final;
  ReversalTrace trace;
};

// Pre-reversal to `target`, then virtual evidence nodes, then absorption of
// every observation, then one propagate_all pass in target order.
PipelineResult run_pipeline(const Pid& network, const NodeOrder& target, const EvidenceSet& evidence);

}  // namespace dirred
