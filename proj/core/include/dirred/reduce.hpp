#pragma once

// Directed reduction operations on influence diagrams.
//
// Every operation edits one Pid in place and reports what it did as a
// TraceStep. Steps name nodes by label, so a trace can be replayed against a
// copy of the starting diagram even when nodes are removed along the way.
// Each step also lists the scope of every table it materialized, including
// the transient product formed inside a reversal.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirred/pid.hpp"

namespace dirred {

enum class StepKind { arc_reversal, evidence_reversal, absorption, combination, likelihood_node };

const char* to_string(StepKind kind);
StepKind step_kind_from_string(const std::string& text);

struct TableScope {
  std::vector<std::string> vars;
  std::size_t cells = 1;

  bool operator==(const TableScope&) const = default;
};

struct TraceStep {
  StepKind kind = StepKind::arc_reversal;
  // Reversals: the arc (i, j). Absorption and likelihood nodes: i == j ==
  // the evidence node. Combination: i == j == the surviving node.
  std::string i;
  std::string j;
  std::optional<std::size_t> value;  // observed outcome (absorption)
  std::vector<std::string> merged;   // nodes folded into j (combination)
  std::vector<double> table;         // likelihood values (likelihood_node)
  std::vector<std::string> parents_i;  // parent sets after the step
  std::vector<std::string> parents_j;
  std::vector<TableScope> scopes;

  bool operator==(const TraceStep&) const = default;
};

using ReversalTrace = std::vector<TraceStep>;

struct Observation {
  NodeId node = 0;
  std::size_t value = 0;
};

// Soft evidence on `parents`, entered as a new childless observed node.
// `table` is laid out over `parents` in the order given, first most
// significant.
struct VirtualEvidence {
  std::string name;
  std::vector<NodeId> parents;
  std::vector<double> table;
};

// True iff the arc is the only directed path from i to j.
bool is_reversible(const Pid& p, NodeId i, NodeId j);

// Bayes-rule reversal of arc (i, j); both nodes end up with the union of
// their parents. Neither endpoint may be evidence.
TraceStep reverse_arc(Pid& p, NodeId i, NodeId j);

// Visits nodes in reverse target order and reverses every arc from the
// visited node to a child that precedes it in `target`. Children are taken
// in current topological order, ties broken by target position. Afterwards
// `target` is an ordered list and every arc lies in the minimal DPID.
ReversalTrace pre_reverse_to_target(Pid& p, const NodeOrder& target);

// Turns the node's table into a likelihood of the observed value and slices
// the observation out of every child table, dropping those arcs.
TraceStep absorb_evidence(Pid& p, NodeId node, std::size_t value);

TraceStep add_likelihood_node(Pid& p, const VirtualEvidence& evidence);

// Reversal of arc (i, j) into evidence node j. No arc j -> i is created;
// afterwards i and j share the parent set (C(i) u C(j)) \ {i}.
TraceStep evidence_reverse(Pid& p, NodeId i, NodeId j);

// Evidence reversals from `node` over each unobserved ancestor, latest first,
// until the node is disconnected.
ReversalTrace propagate_evidence(Pid& p, NodeId node);

// Multiplies childless evidence nodes into the lowest-id one. The others are
// left disconnected with a unit likelihood, keeping any observed value so
// their posterior can still be queried.
TraceStep combine_evidence_children(Pid& p, std::span<const NodeId> children);

// One pass over the unobserved nodes in reverse `order` (default: the
// diagram's topological order). A visited node with one evidence child has
// that arc evidence-reversed; several evidence children are combined first.
ReversalTrace propagate_all(Pid& p);
ReversalTrace propagate_all(Pid& p, const NodeOrder& order);

// Re-applies a trace to `start`.
Pid replay(Pid start, const ReversalTrace& trace);

}  // namespace dirred
