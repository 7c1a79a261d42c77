#include "dirred/infer.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "dirred/errors.hpp"

namespace dirred {

// JointTable -----------------------------------------------------------------

double JointTable::total() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

std::vector<double> JointTable::marginal(NodeId node) const {
  auto it = std::find(variables.begin(), variables.end(), node);
  if (it == variables.end()) throw InputError("variable not in the joint table");
  const std::size_t axis = static_cast<std::size_t>(it - variables.begin());
  std::size_t stride = 1;
  for (std::size_t k = axis + 1; k < cardinalities.size(); ++k) stride *= cardinalities[k];
  std::vector<double> out(cardinalities[axis], 0.0);
  for (std::size_t idx = 0; idx < values.size(); ++idx) out[(idx / stride) % cardinalities[axis]] += values[idx];
  return out;
}

JointTable joint_oracle(const Pid& p, std::size_t cap) {
  JointTable joint;
  std::vector<std::size_t> axis_of(p.size(), p.size());
  for (NodeId v = 0; v < p.size(); ++v) {
    if (p.is_evidence(v)) continue;
    axis_of[v] = joint.variables.size();
    joint.variables.push_back(v);
    joint.cardinalities.push_back(p.cardinality(v));
  }

  std::size_t cells = 1;
  for (std::size_t c : joint.cardinalities) {
    if (c != 0 && cells > cap / c) {
      std::ostringstream msg;
      msg << "joint table exceeds the oracle cap of " << cap << " cells";
      throw ResourceError(msg.str());
    }
    cells *= c;
  }

  // Per table: (joint axis, stride in the table) for each table variable.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> lookups;
  for (NodeId v = 0; v < p.size(); ++v) {
    const Factor& f = p.table(v).table;
    std::vector<std::pair<std::size_t, std::size_t>> lookup;
    std::size_t stride = 1;
    for (std::size_t k = f.vars().size(); k-- > 0;) {
      const NodeId var = f.vars()[k];
      if (var >= p.size() || axis_of[var] == p.size())
        throw InputError("table of '" + p.name(v) + "' depends on an evidence node");
      lookup.emplace_back(axis_of[var], stride);
      stride *= f.cards()[k];
    }
    lookups.push_back(std::move(lookup));
  }

  joint.values.assign(cells, 0.0);
  std::vector<std::size_t> digit(joint.variables.size(), 0);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    double product = 1.0;
    for (NodeId v = 0; v < p.size(); ++v) {
      std::size_t offset = 0;
      for (auto [axis, stride] : lookups[v]) offset += digit[axis] * stride;
      product *= p.table(v).table.values()[offset];
    }
    joint.values[idx] = product;
    for (std::size_t k = digit.size(); k-- > 0;) {
      if (++digit[k] < joint.cardinalities[k]) break;
      digit[k] = 0;
    }
  }
  return joint;
}

// Queries --------------------------------------------------------------------

bool evidence_propagated(const Pid& p) {
  for (NodeId v : p.evidence())
    if (!p.parents(v).empty() || !p.children(v).empty()) return false;
  return true;
}

std::vector<double> posterior_marginal(const Pid& p, NodeId node) {
  if (node >= p.size()) throw InputError("unknown node id");
  if (!evidence_propagated(p)) throw InputError("evidence has not been propagated");
  if (p.is_evidence(node)) {
    auto obs = p.observed(node);
    if (!obs) throw InputError("'" + p.name(node) + "' is a virtual evidence node");
    std::vector<double> point(p.cardinality(node), 0.0);
    point[*obs] = 1.0;
    return point;
  }

  const NodeSet scope = ancestral_set(p, node);
  const NodeOrder order = topological_order(p.graph());
  std::vector<NodeId> sequence(scope.begin(), scope.end());
  std::sort(sequence.begin(), sequence.end(),
            [&](NodeId a, NodeId b) { return order.position(a) < order.position(b); });

  std::vector<Factor> factors;
  for (NodeId v : sequence) factors.push_back(p.table(v).table);

  for (NodeId v : sequence) {
    if (v == node) continue;
    Factor bucket;
    std::vector<Factor> rest;
    for (Factor& f : factors) {
      if (f.contains(v))
        bucket = bucket * f;
      else
        rest.push_back(std::move(f));
    }
    rest.push_back(bucket.summed_out(v));
    factors = std::move(rest);
  }

  Factor result;
  for (const Factor& f : factors) result = result * f;
  const NodeId only[] = {node};
  return result.reordered(only).values();
}

double evidence_probability(const Pid& p) {
  if (!evidence_propagated(p)) throw InputError("evidence has not been propagated");
  double probability = 1.0;
  for (NodeId v : p.evidence()) probability *= p.table(v).table.values().front();
  return probability;
}

// Complexity -----------------------------------------------------------------

ComplexityReport complexity_report(const ReversalTrace& trace, const Pid& original, const NodeOrder& target) {
  const UndirectedGraph chordal = fill_in(moral_graph(original.graph()), target);
  const std::vector<NodeSet> cliques = maximal_cliques(chordal, target);

  ComplexityReport report;
  for (const NodeSet& clique : cliques) {
    std::vector<std::string> names;
    std::size_t cells = 1;
    for (NodeId v : clique) {
      names.push_back(original.name(v));
      cells *= original.cardinality(v);
    }
    report.cliques.push_back(std::move(names));
    report.max_clique_cells = std::max(report.max_clique_cells, cells);
  }

  auto find = [&](const std::string& name) -> std::optional<NodeId> {
    const auto& names = original.graph().names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<NodeId>(it - names.begin());
  };

  std::set<std::pair<std::string, std::string>> added;
  auto note_pair = [&](const std::string& a, const std::string& b) {
    auto ia = find(a);
    auto ib = find(b);
    if (ia && ib && (original.graph().has_arc(*ia, *ib) || original.graph().has_arc(*ib, *ia))) return;
    added.insert(std::minmax(a, b));
  };

  for (std::size_t s = 0; s < trace.size(); ++s) {
    const TraceStep& step = trace[s];
    for (const TableScope& scope : step.scopes) {
      ScopeCheck check{s, scope, false};
      NodeSet ids;
      bool known = true;
      for (const std::string& name : scope.vars) {
        auto id = find(name);
        if (!id) {
          known = false;
          break;
        }
        ids.push_back(*id);
      }
      if (known) {
        std::sort(ids.begin(), ids.end());
        for (const NodeSet& clique : cliques) {
          if (std::includes(clique.begin(), clique.end(), ids.begin(), ids.end())) {
            check.contained = true;
            break;
          }
        }
      }
      report.clique_containment = report.clique_containment && check.contained;
      if (scope.cells > report.max_table_cells) {
        report.max_table_cells = scope.cells;
        report.max_table_scope = scope.vars;
      }
      report.scopes.push_back(std::move(check));
    }
    for (const std::string& parent : step.parents_i) note_pair(parent, step.i);
    for (const std::string& parent : step.parents_j) note_pair(parent, step.j);
  }
  report.added_arc_count = added.size();
  return report;
}

// Pipeline -------------------------------------------------------------------

PipelineResult run_pipeline(const Pid& network, const NodeOrder& target, const EvidenceSet& evidence) {
  Pid work = network;
  Pid original = network;
  ReversalTrace trace = pre_reverse_to_target(work, target);

  std::vector<NodeId> extended(target.begin(), target.end());
  for (const VirtualEvidence& ev : evidence.likelihoods) {
    add_likelihood_node(original, ev);
    trace.push_back(add_likelihood_node(work, ev));
    extended.push_back(work.size() - 1);
  }
  NodeOrder extended_target(std::move(extended), work.size());

  for (const Observation& obs : evidence.observations) trace.push_back(absorb_evidence(work, obs.node, obs.value));

  ReversalTrace propagation = propagate_all(work, extended_target);
  trace.insert(trace.end(), propagation.begin(), propagation.end());
  return PipelineResult{std::move(original), std::move(extended_target), std::move(work), std::move(trace)};
}

}  // namespace dirred
