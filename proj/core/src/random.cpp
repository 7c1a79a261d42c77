#include "dirred/random.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dirred {

namespace {

std::vector<NodeId> shuffled(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeId> seq(n);
  std::iota(seq.begin(), seq.end(), NodeId{0});
  std::shuffle(seq.begin(), seq.end(), rng);
  return seq;
}

}  // namespace

Pid random_network(std::mt19937_64& rng, const RandomNetworkOptions& options) {
  const std::size_t n = options.nodes;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("N" + std::to_string(k));
  DirectedGraph graph(names);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> card_dist(2, std::max<std::size_t>(2, options.max_cardinality));
  const std::vector<NodeId> rank = shuffled(rng, n);
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t added = 0;
    for (std::size_t a = 0; a < b && added < options.max_parents; ++a) {
      if (unit(rng) < options.arc_probability) {
        graph.add_arc(rank[a], rank[b]);
        ++added;
      }
    }
  }

  std::vector<std::vector<std::string>> outcomes(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t card = card_dist(rng);
    for (std::size_t x = 0; x < card; ++x) outcomes[k].push_back(std::to_string(x));
  }

  std::vector<Cpt> tables;
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> vars(graph.parents(v).begin(), graph.parents(v).end());
    vars.push_back(v);
    std::vector<std::size_t> cards;
    for (NodeId u : vars) cards.push_back(outcomes[u].size());
    const std::size_t card = outcomes[v].size();
    std::vector<double> values(cell_count(cards));
    for (std::size_t row = 0; row < values.size() / card; ++row) {
      double sum = 0.0;
      for (std::size_t x = 0; x < card; ++x) {
        double w = unit(rng) < options.zero_probability ? 0.0 : 0.05 + unit(rng);
        values[row * card + x] = w;
        sum += w;
      }
      if (sum == 0.0) {
        values[row * card] = 1.0;
        sum = 1.0;
      }
      for (std::size_t x = 0; x < card; ++x) values[row * card + x] /= sum;
    }
    tables.push_back(Cpt{v, TableKind::conditional, Factor(std::move(vars), std::move(cards), std::move(values))});
  }
  return Pid(std::move(graph), std::move(outcomes), std::move(tables), std::vector<std::optional<std::size_t>>(n));
}

NodeOrder random_order(std::mt19937_64& rng, std::size_t node_count) {
  return NodeOrder(shuffled(rng, node_count), node_count);
}

EvidenceSet random_evidence(std::mt19937_64& rng, const Pid& network, std::size_t observations,
                            std::size_t likelihoods) {
  EvidenceSet out;
  const std::vector<NodeId> picks = shuffled(rng, network.size());
  for (std::size_t k = 0; k < std::min(observations, picks.size()); ++k) {
    std::uniform_int_distribution<std::size_t> value(0, network.cardinality(picks[k]) - 1);
    out.observations.push_back({picks[k], value(rng)});
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < likelihoods && network.size() > 0; ++k) {
    const std::vector<NodeId> pool = shuffled(rng, network.size());
    const std::size_t count = std::min<std::size_t>(network.size(), 1 + (unit(rng) < 0.5 ? 1 : 0));
    VirtualEvidence ev{"L" + std::to_string(k), {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count)}, {}};
    std::size_t cells = 1;
    for (NodeId p : ev.parents) cells *= network.cardinality(p);
    for (std::size_t c = 0; c < cells; ++c) ev.table.push_back(0.05 + unit(rng));
    out.likelihoods.push_back(std::move(ev));
  }
  return out;
}

}  // namespace dirred
