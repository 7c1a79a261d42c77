#pragma once

// Dense non-negative tables over discrete variables.
//
// Layout is mixed-radix with the first listed variable most significant and
// the last varying fastest. A factor with no variables is a scalar.

#include <cstddef>
#include <span>
#include <vector>

#include "dirred/graph.hpp"

namespace dirred {

class Factor {
 public:
  // Scalar 1.
  Factor();
  // Throws InputError on repeated variables, zero cardinalities or a value
  // count that does not match the product of cardinalities.
  Factor(std::vector<NodeId> vars, std::vector<std::size_t> cards, std::vector<double> values);

  static Factor scalar(double value);

  const std::vector<NodeId>& vars() const { return vars_; }
  const std::vector<std::size_t>& cards() const { return cards_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  std::size_t size() const { return values_.size(); }

  bool contains(NodeId var) const;
  std::size_t cardinality(NodeId var) const;

  // Same function, variables listed in `order` (a permutation of vars()).
  Factor reordered(std::span<const NodeId> order) const;
  // Fixes `var` at `value` and drops its axis.
  Factor sliced(NodeId var, std::size_t value) const;
  Factor summed_out(NodeId var) const;
  double total() const;

  // Renames variables through `map` (old id -> new id); layout unchanged.
  void relabel(std::span<const NodeId> map);

  bool operator==(const Factor& other) const = default;

 private:
  std::vector<NodeId> vars_;
  std::vector<std::size_t> cards_;
  std::vector<double> values_;
};

// Pointwise product over the union scope: lhs variables first, then the
// variables only rhs has, in rhs order.
Factor operator*(const Factor& lhs, const Factor& rhs);

// Number of cells a table over `vars` with the given cardinalities needs.
std::size_t cell_count(std::span<const std::size_t> cards);

}  // namespace dirred
