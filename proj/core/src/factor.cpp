#include "dirred/factor.hpp"

#include <algorithm>
#include <numeric>

#include "dirred/errors.hpp"

namespace dirred {

namespace {

// Strides of `source` laid out against `target_vars`; zero where the source
// does not depend on a target variable.
std::vector<std::size_t> aligned_strides(const Factor& source, std::span<const NodeId> target_vars) {
  const auto& vars = source.vars();
  const auto& cards = source.cards();
  std::vector<std::size_t> own(vars.size());
  std::size_t stride = 1;
  for (std::size_t k = vars.size(); k-- > 0;) {
    own[k] = stride;
    stride *= cards[k];
  }
  std::vector<std::size_t> out(target_vars.size(), 0);
  for (std::size_t t = 0; t < target_vars.size(); ++t) {
    auto it = std::find(vars.begin(), vars.end(), target_vars[t]);
    if (it != vars.end()) out[t] = own[static_cast<std::size_t>(it - vars.begin())];
  }
  return out;
}

// Visits every assignment of `cards` in layout order, calling
// fn(linear index, offset_a, offset_b) with offsets tracked through two
// stride vectors.
template <typename Fn>
void odometer(std::span<const std::size_t> cards, std::span<const std::size_t> strides_a,
              std::span<const std::size_t> strides_b, Fn&& fn) {
  const std::size_t dims = cards.size();
  const std::size_t total = cell_count(cards);
  std::vector<std::size_t> digit(dims, 0);
  std::size_t a = 0;
  std::size_t b = 0;
  for (std::size_t linear = 0; linear < total; ++linear) {
    fn(linear, a, b);
    for (std::size_t k = dims; k-- > 0;) {
      if (++digit[k] < cards[k]) {
        a += strides_a[k];
        b += strides_b[k];
        break;
      }
      a -= strides_a[k] * (cards[k] - 1);
      b -= strides_b[k] * (cards[k] - 1);
      digit[k] = 0;
    }
  }
}

}  // namespace

std::size_t cell_count(std::span<const std::size_t> cards) {
  return std::accumulate(cards.begin(), cards.end(), std::size_t{1}, std::multiplies<>());
}

Factor::Factor() : values_{1.0} {}

Factor::Factor(std::vector<NodeId> vars, std::vector<std::size_t> cards, std::vector<double> values)
    : vars_(std::move(vars)), cards_(std::move(cards)), values_(std::move(values)) {
  if (vars_.size() != cards_.size()) throw InputError("factor: variable/cardinality count mismatch");
  for (std::size_t a = 0; a < vars_.size(); ++a) {
    if (cards_[a] == 0) throw InputError("factor: zero cardinality");
    for (std::size_t b = a + 1; b < vars_.size(); ++b)
      if (vars_[a] == vars_[b]) throw InputError("factor: repeated variable");
  }
  if (values_.size() != cell_count(cards_)) throw InputError("factor: value count does not match scope");
}

Factor Factor::scalar(double value) { return Factor({}, {}, {value}); }

bool Factor::contains(NodeId var) const {
  return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

std::size_t Factor::cardinality(NodeId var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) throw InputError("factor: variable not in scope");
  return cards_[static_cast<std::size_t>(it - vars_.begin())];
}

Factor Factor::reordered(std::span<const NodeId> order) const {
  if (order.size() != vars_.size()) throw InputError("factor: reorder is not a permutation");
  std::vector<std::size_t> new_cards;
  for (NodeId v : order) new_cards.push_back(cardinality(v));
  auto strides = aligned_strides(*this, order);
  std::vector<double> out(values_.size());
  odometer(new_cards, strides, strides,
           [&](std::size_t linear, std::size_t src, std::size_t) { out[linear] = values_[src]; });
  return Factor({order.begin(), order.end()}, std::move(new_cards), std::move(out));
}

Factor Factor::sliced(NodeId var, std::size_t value) const {
  if (value >= cardinality(var)) throw InputError("factor: slice value out of range");
  std::vector<NodeId> vars;
  std::vector<std::size_t> cards;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (vars_[k] == var) continue;
    vars.push_back(vars_[k]);
    cards.push_back(cards_[k]);
  }
  // Offset of the fixed value, plus strides over the remaining axes.
  const std::size_t fixed = aligned_strides(*this, std::span<const NodeId>(&var, 1))[0] * value;
  auto strides = aligned_strides(*this, vars);
  std::vector<double> out(cell_count(cards));
  odometer(cards, strides, strides,
           [&](std::size_t linear, std::size_t src, std::size_t) { out[linear] = values_[fixed + src]; });
  return Factor(std::move(vars), std::move(cards), std::move(out));
}

Factor Factor::summed_out(NodeId var) const {
  std::vector<NodeId> vars;
  std::vector<std::size_t> cards;
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (vars_[k] == var) continue;
    vars.push_back(vars_[k]);
    cards.push_back(cards_[k]);
  }
  if (vars.size() == vars_.size()) throw InputError("factor: variable not in scope");
  // Iterate in source layout; map each cell to its destination.
  auto dest = aligned_strides(Factor(vars, cards, std::vector<double>(cell_count(cards))), vars_);
  std::vector<double> out(cell_count(cards), 0.0);
  odometer(cards_, dest, dest,
           [&](std::size_t linear, std::size_t d, std::size_t) { out[d] += values_[linear]; });
  return Factor(std::move(vars), std::move(cards), std::move(out));
}

double Factor::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

void Factor::relabel(std::span<const NodeId> map) {
  for (NodeId& v : vars_) v = map[v];
}

Factor operator*(const Factor& lhs, const Factor& rhs) {
  std::vector<NodeId> vars = lhs.vars();
  std::vector<std::size_t> cards = lhs.cards();
  for (std::size_t k = 0; k < rhs.vars().size(); ++k) {
    NodeId v = rhs.vars()[k];
    if (lhs.contains(v)) {
      if (lhs.cardinality(v) != rhs.cards()[k]) throw InputError("factor: cardinality mismatch in product");
      continue;
    }
    vars.push_back(v);
    cards.push_back(rhs.cards()[k]);
  }
  auto sa = aligned_strides(lhs, vars);
  auto sb = aligned_strides(rhs, vars);
  std::vector<double> out(cell_count(cards));
  odometer(cards, sa, sb, [&](std::size_t linear, std::size_t a, std::size_t b) {
    out[linear] = lhs.values()[a] * rhs.values()[b];
  });
  return Factor(std::move(vars), std::move(cards), std::move(out));
}

}  // namespace dirred
