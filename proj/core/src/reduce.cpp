#include "dirred/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>

#include "dirred/errors.hpp"

namespace dirred {

namespace {

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet without(NodeSet set, NodeId node) {
  set.erase(std::remove(set.begin(), set.end(), node), set.end());
  return set;
}

std::vector<std::string> names_of(const Pid& p, const NodeSet& nodes) {
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) out.push_back(p.name(v));
  return out;
}

TableScope scope_of(const Pid& p, const Factor& f) {
  std::vector<NodeId> vars = f.vars();
  std::sort(vars.begin(), vars.end());
  return TableScope{names_of(p, vars), f.size()};
}

std::string arc_label(const Pid& p, NodeId i, NodeId j) { return p.name(i) + "->" + p.name(j); }

// Conditional table for `child` from numerator / denominator, where the
// numerator covers (parents..., child) and the denominator (parents...). A
// zero denominator marks a configuration of probability zero; its row is
// set to the uniform distribution.
Cpt divide_into_conditional(NodeId child, const Factor& numerator, const Factor& denominator) {
  NodeSet parents;
  for (NodeId v : numerator.vars())
    if (v != child) parents.push_back(v);
  std::sort(parents.begin(), parents.end());
  std::vector<NodeId> layout = parents;
  layout.push_back(child);

  Factor num = numerator.reordered(layout);
  const Factor den = denominator.reordered(parents);
  const std::size_t card = num.cardinality(child);
  auto& values = num.values();
  const double uniform = 1.0 / static_cast<double>(card);
  for (std::size_t row = 0; row < den.size(); ++row) {
    const double d = den.values()[row];
    for (std::size_t x = 0; x < card; ++x) {
      double& cell = values[row * card + x];
      cell = d == 0.0 ? uniform : cell / d;
    }
  }
  return Cpt{child, TableKind::conditional, std::move(num)};
}

void check_normalized(const Pid& p, NodeId node) {
  const Cpt& cpt = p.table(node);
  const std::size_t card = p.cardinality(node);
  const auto& values = cpt.table.values();
  for (std::size_t row = 0; row < values.size() / card; ++row) {
    double sum = 0.0;
    for (std::size_t x = 0; x < card; ++x) sum += values[row * card + x];
    if (!(std::abs(sum - 1.0) <= kNormalizationTolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "table of '" << p.name(node) << "' lost normalization (row " << row << " sums to " << sum << ")";
      throw InternalError(msg.str());
    }
  }
}

TraceStep make_step(StepKind kind, std::string i, std::string j) {
  TraceStep step;
  step.kind = kind;
  step.i = std::move(i);
  step.j = std::move(j);
  return step;
}

void require_node(const Pid& p, NodeId node) {
  if (node >= p.size()) throw InputError("unknown node id");
}

// Adds arcs m -> node for every m in `parents` not already a parent.
void add_parents(Pid& p, NodeId node, const NodeSet& parents) {
  for (NodeId m : parents)
    if (m != node && !p.graph().has_arc(m, node)) p.add_arc(m, node);
}

}  // namespace

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::arc_reversal: return "arc_reversal";
    case StepKind::evidence_reversal: return "evidence_reversal";
    case StepKind::absorption: return "absorption";
    case StepKind::combination: return "combination";
    case StepKind::likelihood_node: return "likelihood_node";
  }
  return "?";
}

StepKind step_kind_from_string(const std::string& text) {
  for (StepKind k : {StepKind::arc_reversal, StepKind::evidence_reversal, StepKind::absorption,
                     StepKind::combination, StepKind::likelihood_node})
    if (text == to_string(k)) return k;
  throw InputError("unknown trace step kind '" + text + "'");
}

bool is_reversible(const Pid& p, NodeId i, NodeId j) {
  require_node(p, i);
  require_node(p, j);
  if (!p.graph().has_arc(i, j)) throw InputError("no arc " + arc_label(p, i, j));
  std::vector<bool> seen(p.size(), false);
  std::vector<NodeId> stack;
  for (NodeId c : p.children(i)) {
    if (c != j) {
      seen[c] = true;
      stack.push_back(c);
    }
  }
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId c : p.children(v)) {
      if (c == j) return false;
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  return true;
}

TraceStep reverse_arc(Pid& p, NodeId i, NodeId j) {
  if (!is_reversible(p, i, j))
    throw StructuralError("arc " + arc_label(p, i, j) + " is not reversible: another directed path exists");
  if (p.is_evidence(i) || p.is_evidence(j))
    throw InputError("arc " + arc_label(p, i, j) + " touches an evidence node; use evidence reversal");

  const NodeSet parents_i = p.parents(i);
  const NodeSet parents_j = p.parents(j);
  const NodeSet new_parents_j = without(set_union(parents_i, parents_j), i);

  TraceStep step = make_step(StepKind::arc_reversal, p.name(i), p.name(j));

  const Factor joint = p.table(i).table * p.table(j).table;
  const Factor marginal_j = joint.summed_out(i);
  step.scopes.push_back(scope_of(p, joint));

  Cpt table_j = make_cpt(j, TableKind::conditional, marginal_j);
  Cpt table_i = divide_into_conditional(i, joint, marginal_j);
  step.scopes.push_back(scope_of(p, table_j.table));
  step.scopes.push_back(scope_of(p, table_i.table));

  p.remove_arc(i, j);
  add_parents(p, j, new_parents_j);
  add_parents(p, i, new_parents_j);
  p.add_arc(j, i);
  p.set_table(j, std::move(table_j));
  p.set_table(i, std::move(table_i));
  check_normalized(p, i);
  check_normalized(p, j);

  step.parents_i = names_of(p, p.parents(i));
  step.parents_j = names_of(p, p.parents(j));
  return step;
}

ReversalTrace pre_reverse_to_target(Pid& p, const NodeOrder& target) {
  if (target.size() != p.size()) throw InputError("target order does not cover the diagram");
  if (!p.evidence().empty()) throw InputError("pre-reversal must run before any evidence is entered");

  ReversalTrace trace;
  for (std::size_t pos = target.size(); pos-- > 0;) {
    const NodeId k = target[pos];
    while (true) {
      NodeSet early;
      for (NodeId c : p.children(k))
        if (target.position(c) < pos) early.push_back(c);
      if (early.empty()) break;
      const NodeOrder current = topological_order(p.graph(), target);
      const NodeId next = *std::min_element(early.begin(), early.end(), [&](NodeId a, NodeId b) {
        return current.position(a) < current.position(b);
      });
      if (!is_reversible(p, k, next))
        throw InternalError("pre-reversal met a non-reversible arc " + arc_label(p, k, next));
      trace.push_back(reverse_arc(p, k, next));
    }
  }
  return trace;
}

TraceStep absorb_evidence(Pid& p, NodeId node, std::size_t value) {
  require_node(p, node);
  if (p.is_evidence(node)) throw InputError("'" + p.name(node) + "' is already evidence");
  if (value >= p.cardinality(node))
    throw InputError("outcome index out of range for '" + p.name(node) + "'");

  TraceStep step = make_step(StepKind::absorption, p.name(node), p.name(node));
  step.value = value;

  Cpt likelihood = make_cpt(node, TableKind::likelihood, p.table(node).table.sliced(node, value));
  step.scopes.push_back(scope_of(p, likelihood.table));
  p.set_table(node, std::move(likelihood));
  p.set_observed(node, value);

  for (NodeId child : NodeSet(p.children(node))) {
    const Cpt& old = p.table(child);
    Cpt sliced = make_cpt(child, old.kind, old.table.sliced(node, value));
    step.scopes.push_back(scope_of(p, sliced.table));
    p.remove_arc(node, child);
    p.set_table(child, std::move(sliced));
  }

  step.parents_i = names_of(p, p.parents(node));
  step.parents_j = step.parents_i;
  return step;
}

TraceStep add_likelihood_node(Pid& p, const VirtualEvidence& evidence) {
  std::vector<std::size_t> cards;
  for (std::size_t a = 0; a < evidence.parents.size(); ++a) {
    require_node(p, evidence.parents[a]);
    for (std::size_t b = a + 1; b < evidence.parents.size(); ++b)
      if (evidence.parents[a] == evidence.parents[b])
        throw InputError("likelihood '" + evidence.name + "' lists a parent twice");
    cards.push_back(p.cardinality(evidence.parents[a]));
  }
  if (cell_count(cards) != evidence.table.size()) {
    std::ostringstream msg;
    msg << "likelihood '" << evidence.name << "' needs " << cell_count(cards) << " values, got "
        << evidence.table.size();
    throw InputError(msg.str());
  }
  for (double x : evidence.table)
    if (!std::isfinite(x) || x < 0.0)
      throw InputError("likelihood '" + evidence.name + "' holds negative or non-finite values");
  for (NodeId v = 0; v < p.size(); ++v)
    if (p.name(v) == evidence.name) throw InputError("duplicate node '" + evidence.name + "'");

  const NodeId k = p.add_node(evidence.name, {"observed"}, std::nullopt);
  Cpt cpt = make_cpt(k, TableKind::likelihood, Factor(evidence.parents, cards, evidence.table));
  for (NodeId parent : evidence.parents) p.add_arc(parent, k);

  TraceStep step = make_step(StepKind::likelihood_node, evidence.name, evidence.name);
  step.table = cpt.table.values();
  step.scopes.push_back(scope_of(p, cpt.table));
  p.set_table(k, std::move(cpt));
  step.parents_i = names_of(p, p.parents(k));
  step.parents_j = step.parents_i;
  return step;
}

TraceStep evidence_reverse(Pid& p, NodeId i, NodeId j) {
  require_node(p, i);
  require_node(p, j);
  if (!p.is_evidence(j)) throw InputError("'" + p.name(j) + "' is not an evidence node");
  if (p.is_evidence(i)) throw InputError("'" + p.name(i) + "' is an evidence node");
  if (!p.graph().has_arc(i, j)) throw InputError("no arc " + arc_label(p, i, j));
  if (!is_reversible(p, i, j))
    throw StructuralError("arc " + arc_label(p, i, j) + " is not the only directed path");

  const NodeSet shared = without(set_union(p.parents(i), p.parents(j)), i);

  TraceStep step = make_step(StepKind::evidence_reversal, p.name(i), p.name(j));

  const Factor product = p.table(i).table * p.table(j).table;
  const Factor likelihood = product.summed_out(i);
  step.scopes.push_back(scope_of(p, product));

  Cpt table_j = make_cpt(j, TableKind::likelihood, likelihood);
  Cpt table_i = divide_into_conditional(i, product, likelihood);
  step.scopes.push_back(scope_of(p, table_j.table));
  step.scopes.push_back(scope_of(p, table_i.table));

  p.remove_arc(i, j);
  add_parents(p, j, shared);
  add_parents(p, i, shared);
  p.set_table(j, std::move(table_j));
  p.set_table(i, std::move(table_i));
  check_normalized(p, i);

  step.parents_i = names_of(p, p.parents(i));
  step.parents_j = names_of(p, p.parents(j));
  return step;
}

ReversalTrace propagate_evidence(Pid& p, NodeId node) {
  require_node(p, node);
  if (!p.is_evidence(node)) throw InputError("'" + p.name(node) + "' is not an evidence node");
  ReversalTrace trace;
  while (!p.parents(node).empty()) {
    const NodeOrder order = topological_order(p.graph());
    const NodeSet& parents = p.parents(node);
    const NodeId latest = *std::max_element(parents.begin(), parents.end(), [&](NodeId a, NodeId b) {
      return order.position(a) < order.position(b);
    });
    trace.push_back(evidence_reverse(p, latest, node));
  }
  return trace;
}

TraceStep combine_evidence_children(Pid& p, std::span<const NodeId> children) {
  if (children.empty()) throw InputError("nothing to combine");
  NodeSet nodes(children.begin(), children.end());
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw InputError("combination lists a node twice");
  for (NodeId v : nodes) {
    require_node(p, v);
    if (!p.is_evidence(v)) throw InputError("'" + p.name(v) + "' is not an evidence node");
    if (!p.children(v).empty()) throw InputError("'" + p.name(v) + "' still has children");
  }

  const NodeId survivor = nodes.front();
  TraceStep step = make_step(StepKind::combination, p.name(survivor), p.name(survivor));
  for (std::size_t k = 1; k < nodes.size(); ++k) step.merged.push_back(p.name(nodes[k]));

  if (nodes.size() > 1) {
    Factor product = p.table(survivor).table;
    NodeSet parents = p.parents(survivor);
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      product = product * p.table(nodes[k]).table;
      parents = set_union(parents, p.parents(nodes[k]));
    }
    Cpt combined = make_cpt(survivor, TableKind::likelihood, product);
    step.scopes.push_back(scope_of(p, combined.table));
    add_parents(p, survivor, parents);
    p.set_table(survivor, std::move(combined));
    // The merged nodes stay in the diagram, disconnected, with a unit likelihood.
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      const NodeSet old_parents = p.parents(nodes[k]);
      for (NodeId parent : old_parents) p.remove_arc(parent, nodes[k]);
      p.set_table(nodes[k], make_cpt(nodes[k], TableKind::likelihood, Factor::scalar(1.0)));
    }
  }

  step.parents_i = names_of(p, p.parents(survivor));
  step.parents_j = step.parents_i;
  return step;
}

ReversalTrace propagate_all(Pid& p) { return propagate_all(p, topological_order(p.graph())); }

ReversalTrace propagate_all(Pid& p, const NodeOrder& order) {
  if (!is_ordered(p.graph(), order)) throw InputError("visit order is not an ordered list for the diagram");

  std::vector<std::string> visit;
  for (std::size_t pos = order.size(); pos-- > 0;)
    if (!p.is_evidence(order[pos])) visit.push_back(p.name(order[pos]));

  ReversalTrace trace;
  for (const std::string& name : visit) {
    const NodeId i = p.id(name);
    NodeSet evidence_children;
    for (NodeId c : p.children(i))
      if (p.is_evidence(c)) evidence_children.push_back(c);
    if (evidence_children.empty()) continue;

    NodeId child = evidence_children.front();
    if (evidence_children.size() > 1) {
      trace.push_back(combine_evidence_children(p, evidence_children));
      child = p.id(trace.back().j);
    }
    trace.push_back(evidence_reverse(p, p.id(name), child));
  }
  return trace;
}

Pid replay(Pid start, const ReversalTrace& trace) {
  for (const TraceStep& step : trace) {
    switch (step.kind) {
      case StepKind::arc_reversal:
        reverse_arc(start, start.id(step.i), start.id(step.j));
        break;
      case StepKind::evidence_reversal:
        evidence_reverse(start, start.id(step.i), start.id(step.j));
        break;
      case StepKind::absorption:
        if (!step.value) throw InputError("absorption step without an observed value");
        absorb_evidence(start, start.id(step.i), *step.value);
        break;
      case StepKind::combination: {
        NodeSet nodes{start.id(step.j)};
        for (const std::string& m : step.merged) nodes.push_back(start.id(m));
        combine_evidence_children(start, nodes);
        break;
      }
      case StepKind::likelihood_node: {
        VirtualEvidence ev{step.i, {}, step.table};
        for (const std::string& parent : step.parents_i) ev.parents.push_back(start.id(parent));
        add_likelihood_node(start, ev);
        break;
      }
    }
  }
  return start;
}

}  // namespace dirred
