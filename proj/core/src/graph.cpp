#include "dirred/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "dirred/errors.hpp"

namespace dirred {

namespace {

void insert_sorted(NodeSet& set, NodeId node) {
  set.insert(std::lower_bound(set.begin(), set.end(), node), node);
}

void erase_sorted(NodeSet& set, NodeId node) {
  auto it = std::lower_bound(set.begin(), set.end(), node);
  if (it != set.end() && *it == node) set.erase(it);
}

bool contains_sorted(const NodeSet& set, NodeId node) {
  return std::binary_search(set.begin(), set.end(), node);
}

NodeId lookup(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InputError("unknown node '" + name + "'");
  return static_cast<NodeId>(it - names.begin());
}

void require_size(const NodeOrder& order, std::size_t n, const char* what) {
  if (order.size() != n) {
    std::ostringstream msg;
    msg << what << ": order has " << order.size() << " nodes, graph has " << n;
    throw InputError(msg.str());
  }
}

// Dense adjacency used internally by the fill-in style algorithms.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(const UndirectedGraph& u) : n_(u.size()), bits_(n_ * n_, false) {
    for (auto [a, b] : u.edges()) set(a, b);
  }
  bool get(NodeId a, NodeId b) const { return bits_[a * n_ + b]; }
  void set(NodeId a, NodeId b) {
    bits_[a * n_ + b] = true;
    bits_[b * n_ + a] = true;
  }

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

}  // namespace

// NodeOrder ------------------------------------------------------------------

NodeOrder::NodeOrder(std::vector<NodeId> sequence, std::size_t node_count)
    : sequence_(std::move(sequence)), position_(node_count, node_count) {
  if (sequence_.size() != node_count) {
    std::ostringstream msg;
    msg << "order lists " << sequence_.size() << " nodes, expected " << node_count;
    throw InputError(msg.str());
  }
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    NodeId node = sequence_[i];
    if (node >= node_count) throw InputError("order names a node outside the graph");
    if (position_[node] != node_count) throw InputError("order lists a node twice");
    position_[node] = i;
  }
}

NodeOrder NodeOrder::identity(std::size_t node_count) {
  std::vector<NodeId> seq(node_count);
  std::iota(seq.begin(), seq.end(), NodeId{0});
  return NodeOrder(std::move(seq), node_count);
}

// DirectedGraph --------------------------------------------------------------

DirectedGraph::DirectedGraph(std::vector<std::string> names)
    : names_(std::move(names)), parents_(names_.size()), children_(names_.size()) {}

NodeId DirectedGraph::id(const std::string& name) const { return lookup(names_, name); }

void DirectedGraph::check(NodeId node) const {
  if (node >= names_.size()) throw InputError("node id out of range");
}

bool DirectedGraph::has_arc(NodeId tail, NodeId head) const {
  check(tail);
  check(head);
  return contains_sorted(children_[tail], head);
}

std::size_t DirectedGraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& p : parents_) total += p.size();
  return total;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::arcs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId tail = 0; tail < size(); ++tail)
    for (NodeId head : children_[tail]) out.emplace_back(tail, head);
  return out;
}

void DirectedGraph::add_arc(NodeId tail, NodeId head) {
  check(tail);
  check(head);
  if (tail == head) throw InputError("self-arc on '" + names_[tail] + "'");
  if (has_arc(tail, head))
    throw InputError("duplicate arc " + names_[tail] + "->" + names_[head]);
  insert_sorted(children_[tail], head);
  insert_sorted(parents_[head], tail);
}

void DirectedGraph::remove_arc(NodeId tail, NodeId head) {
  if (!has_arc(tail, head))
    throw InputError("no arc " + names_.at(tail) + "->" + names_.at(head));
  erase_sorted(children_[tail], head);
  erase_sorted(parents_[head], tail);
}

NodeId DirectedGraph::add_node(std::string name) {
  if (std::find(names_.begin(), names_.end(), name) != names_.end())
    throw InputError("duplicate node '" + name + "'");
  names_.push_back(std::move(name));
  parents_.emplace_back();
  children_.emplace_back();
  return names_.size() - 1;
}

void DirectedGraph::remove_node(NodeId node) {
  check(node);
  for (NodeId p : NodeSet(parents_[node])) remove_arc(p, node);
  for (NodeId c : NodeSet(children_[node])) remove_arc(node, c);
  names_.erase(names_.begin() + static_cast<std::ptrdiff_t>(node));
  parents_.erase(parents_.begin() + static_cast<std::ptrdiff_t>(node));
  children_.erase(children_.begin() + static_cast<std::ptrdiff_t>(node));
  auto shift = [node](NodeSet& set) {
    for (NodeId& x : set)
      if (x > node) --x;
  };
  for (auto& set : parents_) shift(set);
  for (auto& set : children_) shift(set);
}

// UndirectedGraph ------------------------------------------------------------

UndirectedGraph::UndirectedGraph(std::vector<std::string> names)
    : names_(std::move(names)), neighbors_(names_.size()) {}

NodeId UndirectedGraph::id(const std::string& name) const { return lookup(names_, name); }

void UndirectedGraph::check(NodeId node) const {
  if (node >= names_.size()) throw InputError("node id out of range");
}

bool UndirectedGraph::adjacent(NodeId a, NodeId b) const {
  check(a);
  check(b);
  return contains_sorted(neighbors_[a], b);
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& n : neighbors_) total += n.size();
  return total / 2;
}

std::vector<std::pair<NodeId, NodeId>> UndirectedGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId a = 0; a < size(); ++a)
    for (NodeId b : neighbors_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

bool UndirectedGraph::add_edge(NodeId a, NodeId b) {
  check(a);
  check(b);
  if (a == b) throw InputError("self-loop on '" + names_[a] + "'");
  if (adjacent(a, b)) return false;
  insert_sorted(neighbors_[a], b);
  insert_sorted(neighbors_[b], a);
  return true;
}

void UndirectedGraph::remove_edge(NodeId a, NodeId b) {
  if (!adjacent(a, b)) throw InputError("no edge " + names_.at(a) + "-" + names_.at(b));
  erase_sorted(neighbors_[a], b);
  erase_sorted(neighbors_[b], a);
}

// Algorithms -----------------------------------------------------------------

NodeOrder topological_order(const DirectedGraph& g) {
  return topological_order(g, NodeOrder::identity(g.size()));
}

NodeOrder topological_order(const DirectedGraph& g, const NodeOrder& priority) {
  const std::size_t n = g.size();
  require_size(priority, n, "topological_order");

  std::vector<std::size_t> pending(n);
  using Entry = std::pair<std::size_t, NodeId>;  // (priority position, node)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (NodeId v = 0; v < n; ++v) {
    pending[v] = g.parents(v).size();
    if (pending[v] == 0) ready.emplace(priority.position(v), v);
  }

  std::vector<NodeId> out;
  out.reserve(n);
  while (!ready.empty()) {
    NodeId v = ready.top().second;
    ready.pop();
    out.push_back(v);
    for (NodeId c : g.children(v))
      if (--pending[c] == 0) ready.emplace(priority.position(c), c);
  }

  if (out.size() != n) {
    // Every leftover node has a leftover parent; walk parents until a repeat.
    NodeId start = 0;
    while (pending[start] == 0) ++start;
    std::vector<std::size_t> seen_at(n, n);
    std::vector<NodeId> walk;
    NodeId v = start;
    while (seen_at[v] == n) {
      seen_at[v] = walk.size();
      walk.push_back(v);
      for (NodeId p : g.parents(v)) {
        if (pending[p] != 0) {
          v = p;
          break;
        }
      }
    }
    std::ostringstream msg;
    msg << "directed cycle: ";
    // The walk follows parents, so print it backwards to follow the arcs.
    for (std::size_t i = walk.size(); i-- > seen_at[v];) msg << g.name(walk[i]) << " -> ";
    msg << g.name(walk.back());
    throw StructuralError(msg.str());
  }
  return NodeOrder(std::move(out), n);
}

bool is_ordered(const DirectedGraph& g, const NodeOrder& order) {
  require_size(order, g.size(), "is_ordered");
  for (auto [tail, head] : g.arcs())
    if (!order.precedes(tail, head)) return false;
  return true;
}

UndirectedGraph moral_graph(const DirectedGraph& g) {
  UndirectedGraph u(g.names());
  for (NodeId v = 0; v < g.size(); ++v) {
    const NodeSet& parents = g.parents(v);
    for (std::size_t a = 0; a < parents.size(); ++a) {
      u.add_edge(parents[a], v);
      for (std::size_t b = a + 1; b < parents.size(); ++b) u.add_edge(parents[a], parents[b]);
    }
  }
  return u;
}

bool is_perfect(const UndirectedGraph& u, const NodeOrder& order) {
  require_size(order, u.size(), "is_perfect");
  for (NodeId v : order) {
    NodeSet earlier;
    for (NodeId w : u.neighbors(v))
      if (order.precedes(w, v)) earlier.push_back(w);
    for (std::size_t a = 0; a < earlier.size(); ++a)
      for (std::size_t b = a + 1; b < earlier.size(); ++b)
        if (!u.adjacent(earlier[a], earlier[b])) return false;
  }
  return true;
}

NodeOrder max_cardinality_search(const UndirectedGraph& u, const NodeOrder& tiebreak) {
  const std::size_t n = u.size();
  require_size(tiebreak, n, "max_cardinality_search");
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> numbered(n, false);
  std::vector<NodeId> out;
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId best = n;
    for (NodeId v : tiebreak) {
      if (numbered[v]) continue;
      if (best == n || weight[v] > weight[best]) best = v;
    }
    numbered[best] = true;
    out.push_back(best);
    for (NodeId w : u.neighbors(best))
      if (!numbered[w]) ++weight[w];
  }
  return NodeOrder(std::move(out), n);
}

bool is_chordal(const UndirectedGraph& u) {
  return is_perfect(u, max_cardinality_search(u, NodeOrder::identity(u.size())));
}

UndirectedGraph fill_in(const UndirectedGraph& u, const NodeOrder& order) {
  const std::size_t n = u.size();
  require_size(order, n, "fill_in");
  AdjacencyMatrix adj(u);
  UndirectedGraph out = u;
  for (std::size_t pos = n; pos-- > 0;) {
    NodeId v = order[pos];
    NodeSet earlier;
    for (std::size_t q = 0; q < pos; ++q)
      if (adj.get(v, order[q])) earlier.push_back(order[q]);
    for (std::size_t a = 0; a < earlier.size(); ++a) {
      for (std::size_t b = a + 1; b < earlier.size(); ++b) {
        if (!adj.get(earlier[a], earlier[b])) {
          adj.set(earlier[a], earlier[b]);
          out.add_edge(earlier[a], earlier[b]);
        }
      }
    }
  }
  return out;
}

std::vector<NodeSet> maximal_cliques(const UndirectedGraph& u, const NodeOrder& perfect) {
  if (!is_perfect(u, perfect)) throw InputError("maximal_cliques: order is not perfect");
  std::vector<NodeSet> candidates;
  for (NodeId v : perfect) {
    NodeSet family{v};
    for (NodeId w : u.neighbors(v))
      if (perfect.precedes(w, v)) family.push_back(w);
    std::sort(family.begin(), family.end());
    candidates.push_back(std::move(family));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<NodeSet> out;
  for (const NodeSet& c : candidates) {
    bool dominated = false;
    for (const NodeSet& other : candidates) {
      if (other.size() > c.size() &&
          std::includes(other.begin(), other.end(), c.begin(), c.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(c);
  }
  return out;
}

DirectedGraph orient_by_order(const UndirectedGraph& u, const NodeOrder& order) {
  require_size(order, u.size(), "orient_by_order");
  DirectedGraph g(u.names());
  for (auto [a, b] : u.edges()) {
    if (order.precedes(a, b))
      g.add_arc(a, b);
    else
      g.add_arc(b, a);
  }
  return g;
}

}  // namespace dirred
