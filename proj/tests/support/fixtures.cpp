#include "fixtures.hpp"

#include <algorithm>

namespace dirred::testing {

PidBuilder& PidBuilder::node(std::string name, std::size_t cardinality, std::vector<std::string> parents,
                             std::vector<double> table) {
  specs_.push_back({std::move(name), cardinality, std::move(parents), std::move(table)});
  return *this;
}

Pid PidBuilder::build() const {
  std::vector<std::string> names;
  for (const Entry& s : specs_) names.push_back(s.name);
  DirectedGraph graph(names);
  std::vector<std::vector<std::string>> outcomes;
  for (const Entry& s : specs_) {
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < s.cardinality; ++x) labels.push_back(std::to_string(x));
    outcomes.push_back(std::move(labels));
  }
  std::vector<Cpt> tables;
  for (NodeId v = 0; v < specs_.size(); ++v) {
    std::vector<NodeId> vars;
    std::vector<std::size_t> cards;
    for (const std::string& parent : specs_[v].parents) {
      const NodeId u = graph.id(parent);
      graph.add_arc(u, v);
      vars.push_back(u);
      cards.push_back(specs_[u].cardinality);
    }
    vars.push_back(v);
    cards.push_back(specs_[v].cardinality);
    tables.push_back(make_cpt(v, TableKind::conditional, Factor(vars, cards, specs_[v].table)));
  }
  return Pid(std::move(graph), std::move(outcomes), std::move(tables),
             std::vector<std::optional<std::size_t>>(specs_.size()));
}

Pid chain2() {
  return PidBuilder().node("X", 2, {}, {0.7, 0.3}).node("Y", 2, {"X"}, {0.8, 0.2, 0.1, 0.9}).build();
}

Pid chain3() {
  return PidBuilder()
      .node("A", 2, {}, {0.6, 0.4})
      .node("B", 2, {"A"}, {0.7, 0.3, 0.2, 0.8})
      .node("C", 2, {"B"}, {0.9, 0.1, 0.35, 0.65})
      .build();
}

Pid collider() {
  return PidBuilder()
      .node("X1", 2, {}, {0.6, 0.4})
      .node("X2", 2, {}, {0.25, 0.75})
      .node("X3", 2, {"X1", "X2"}, {0.9, 0.1, 0.5, 0.5, 0.3, 0.7, 0.05, 0.95})
      .build();
}

UndirectedGraph cycle4() {
  UndirectedGraph u({"A", "B", "C", "D"});
  u.add_edge(0, 1);
  u.add_edge(1, 2);
  u.add_edge(2, 3);
  u.add_edge(3, 0);
  return u;
}

std::vector<std::pair<std::string, std::string>> arc_names(const DirectedGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [a, b] : g.arcs()) out.emplace_back(g.name(a), g.name(b));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, std::string>> edge_names(const UndirectedGraph& u) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [a, b] : u.edges()) out.emplace_back(std::minmax(u.name(a), u.name(b)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dirred::testing
