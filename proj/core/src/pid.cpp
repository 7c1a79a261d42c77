#include "dirred/pid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirred/errors.hpp"

namespace dirred {

// Cpt ------------------------------------------------------------------------

NodeSet Cpt::parents() const {
  NodeSet out;
  for (NodeId v : table.vars())
    if (v != child || kind == TableKind::likelihood) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Cpt::child_cardinality() const {
  return kind == TableKind::conditional ? table.cardinality(child) : 1;
}

Cpt make_cpt(NodeId child, TableKind kind, const Factor& table) {
  NodeSet order;
  for (NodeId v : table.vars())
    if (v != child) order.push_back(v);
  std::sort(order.begin(), order.end());
  if (kind == TableKind::conditional) {
    if (!table.contains(child)) throw InputError("conditional table does not cover its own node");
    order.push_back(child);
  } else if (table.contains(child)) {
    throw InputError("likelihood table must not index its own node");
  }
  return Cpt{child, kind, table.reordered(order)};
}

// Pid ------------------------------------------------------------------------

Pid::Pid(DirectedGraph graph, std::vector<std::vector<std::string>> outcomes, std::vector<Cpt> tables,
         std::vector<std::optional<std::size_t>> observed)
    : graph_(std::move(graph)),
      outcomes_(std::move(outcomes)),
      tables_(std::move(tables)),
      observed_(std::move(observed)) {
  if (outcomes_.size() != graph_.size() || tables_.size() != graph_.size() || observed_.size() != graph_.size())
    throw InputError("diagram parts disagree on the node count");
}

NodeSet Pid::evidence() const {
  NodeSet out;
  for (NodeId v = 0; v < size(); ++v)
    if (is_evidence(v)) out.push_back(v);
  return out;
}

void Pid::set_table(NodeId node, Cpt table) {
  if (table.child != node) throw InputError("table belongs to a different node");
  tables_.at(node) = std::move(table);
}

NodeId Pid::add_node(std::string name, std::vector<std::string> outcomes, std::optional<std::size_t> observed) {
  NodeId id = graph_.add_node(std::move(name));
  outcomes_.push_back(std::move(outcomes));
  tables_.push_back(Cpt{id, TableKind::likelihood, Factor()});
  observed_.push_back(observed);
  return id;
}

void Pid::remove_node(NodeId node) {
  const std::size_t n = size();
  for (NodeId v = 0; v < n; ++v)
    if (v != node && tables_[v].table.contains(node))
      throw InputError("cannot remove '" + name(node) + "': still referenced by a table");
  graph_.remove_node(node);
  outcomes_.erase(outcomes_.begin() + static_cast<std::ptrdiff_t>(node));
  tables_.erase(tables_.begin() + static_cast<std::ptrdiff_t>(node));
  observed_.erase(observed_.begin() + static_cast<std::ptrdiff_t>(node));
  std::vector<NodeId> map(n);
  for (NodeId v = 0; v < n; ++v) map[v] = v < node ? v : v - 1;
  for (Cpt& cpt : tables_) {
    cpt.table.relabel(map);
    cpt.child = map[cpt.child];
  }
}

// Validation -----------------------------------------------------------------

ValidationReport validate(const Pid& p) {
  ValidationReport report;
  auto add = [&](Severity severity, std::string subject, std::string code, std::string message) {
    if (severity == Severity::error) report.ok = false;
    report.findings.push_back({severity, std::move(subject), std::move(code), std::move(message)});
  };

  try {
    topological_order(p.graph());
  } catch (const StructuralError& e) {
    add(Severity::error, "", "cycle", e.what());
  }

  for (NodeId v = 0; v < p.size(); ++v) {
    const std::string& name = p.name(v);
    const Cpt& cpt = p.table(v);
    if (p.cardinality(v) == 0) {
      add(Severity::error, name, "outcomes", "node has no outcomes");
      continue;
    }
    if (cpt.child != v) {
      add(Severity::error, name, "table shape", "table is attached to the wrong node");
      continue;
    }

    // Scope must be exactly (parents ascending..., child?) with matching sizes.
    std::vector<NodeId> expected(p.parents(v).begin(), p.parents(v).end());
    if (cpt.kind == TableKind::conditional) expected.push_back(v);
    if (cpt.parents() != p.parents(v)) {
      add(Severity::error, name, "parents mismatch", "table parents differ from the graph's parents");
      continue;
    }
    if (cpt.table.vars() != expected) {
      add(Severity::error, name, "table shape", "table is not in canonical layout");
      continue;
    }
    bool cards_ok = true;
    for (std::size_t k = 0; k < expected.size(); ++k)
      if (cpt.table.cards()[k] != p.cardinality(expected[k])) cards_ok = false;
    if (!cards_ok) {
      add(Severity::error, name, "table shape", "table dimensions differ from outcome counts");
      continue;
    }

    bool values_ok = true;
    for (double x : cpt.table.values())
      if (!std::isfinite(x) || x < 0.0) values_ok = false;
    if (!values_ok) {
      add(Severity::error, name, "values", "table holds negative or non-finite values");
      continue;
    }

    if (cpt.kind == TableKind::conditional) {
      if (p.observed(v)) add(Severity::error, name, "evidence", "observed value recorded on an unobserved node");
      const std::size_t card = p.cardinality(v);
      const auto& values = cpt.table.values();
      for (std::size_t row = 0; row < values.size() / card; ++row) {
        double sum = 0.0;
        for (std::size_t x = 0; x < card; ++x) sum += values[row * card + x];
        if (std::abs(sum - 1.0) > kNormalizationTolerance) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "distribution for parent configuration " << row << " sums to " << sum;
          add(Severity::error, name, "normalization", msg.str());
          break;
        }
      }
    } else {
      if (auto obs = p.observed(v); obs && *obs >= p.cardinality(v))
        add(Severity::error, name, "evidence", "observed value out of range");
      if (!p.children(v).empty())
        add(Severity::error, name, "evidence", "evidence node still has children");
      const NodeSet& parents = p.parents(v);
      for (std::size_t a = 0; a < parents.size(); ++a)
        for (std::size_t b = a + 1; b < parents.size(); ++b)
          if (!p.graph().has_arc(parents[a], parents[b]) && !p.graph().has_arc(parents[b], parents[a])) {
            add(Severity::warning, name, "decomposability",
                "likelihood parents " + p.name(parents[a]) + " and " + p.name(parents[b]) + " are not adjacent");
          }
    }
  }
  return report;
}

// Structure ------------------------------------------------------------------

NodeSet ancestral_set(const DirectedGraph& g, NodeId node) {
  if (node >= g.size()) throw InputError("unknown node");
  std::vector<bool> seen(g.size(), false);
  std::vector<NodeId> stack{node};
  seen[node] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId p : g.parents(v)) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  NodeSet out;
  for (NodeId v = 0; v < g.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

NodeSet ancestral_set(const Pid& p, NodeId node) { return ancestral_set(p.graph(), node); }

namespace {

bool decomposable_over(const DirectedGraph& g, const NodeSet& scope) {
  for (NodeId v : scope) {
    const NodeSet& parents = g.parents(v);
    for (std::size_t a = 0; a < parents.size(); ++a)
      for (std::size_t b = a + 1; b < parents.size(); ++b)
        if (!g.has_arc(parents[a], parents[b]) && !g.has_arc(parents[b], parents[a])) return false;
  }
  return true;
}

}  // namespace

bool is_decomposable(const DirectedGraph& g) {
  NodeSet all(g.size());
  for (NodeId v = 0; v < g.size(); ++v) all[v] = v;
  return decomposable_over(g, all);
}

// Ancestral sets are closed under parents, so the induced subgraph keeps
// every parent pair of its members.
bool is_decomposable_wrt(const DirectedGraph& g, NodeId node) {
  return decomposable_over(g, ancestral_set(g, node));
}

bool is_decomposable(const Pid& p) { return is_decomposable(p.graph()); }
bool is_decomposable_wrt(const Pid& p, NodeId node) { return is_decomposable_wrt(p.graph(), node); }

std::vector<NodeId> unique_ordered_list(const Pid& p, NodeId node) {
  if (!is_decomposable_wrt(p, node))
    throw InputError("diagram is not decomposable with respect to '" + p.name(node) + "'");
  const NodeSet scope = ancestral_set(p, node);
  std::vector<std::size_t> pending(p.size(), 0);
  for (NodeId v : scope) pending[v] = p.parents(v).size();

  std::vector<NodeId> out;
  std::vector<bool> emitted(p.size(), false);
  while (out.size() < scope.size()) {
    std::vector<NodeId> ready;
    for (NodeId v : scope)
      if (!emitted[v] && pending[v] == 0) ready.push_back(v);
    if (ready.size() != 1)
      throw InternalError("ordered list of the ancestral set of '" + p.name(node) + "' is not unique");
    NodeId v = ready.front();
    emitted[v] = true;
    out.push_back(v);
    for (NodeId c : p.children(v))
      if (std::binary_search(scope.begin(), scope.end(), c)) --pending[c];
  }
  return out;
}

DirectedGraph minimal_dpid_graph(const DirectedGraph& g, const NodeOrder& target) {
  return orient_by_order(fill_in(moral_graph(g), target), target);
}

DirectedGraph minimal_dpid_graph(const Pid& p, const NodeOrder& target) {
  return minimal_dpid_graph(p.graph(), target);
}

}  // namespace dirred
