#pragma once

// Random diagrams and evidence for property tests, benchmarks and the
// CLI's self-check. Deterministic for a given engine state.

#include <cstddef>
#include <random>

#include "dirred/infer.hpp"
#include "dirred/pid.hpp"

namespace dirred {

struct RandomNetworkOptions {
  std::size_t nodes = 6;
  std::size_t max_cardinality = 3;
  double arc_probability = 0.4;
  std::size_t max_parents = 4;
  // Chance that a table entry is forced to zero before normalization.
  double zero_probability = 0.0;
};

// Nodes are named N0, N1, ...; arcs only point from a lower to a higher
// position in a random permutation, so the node list itself is usually not
// an ordered list.
Pid random_network(std::mt19937_64& rng, const RandomNetworkOptions& options);

// Uniformly random permutation of the diagram's nodes.
NodeOrder random_order(std::mt19937_64& rng, std::size_t node_count);

// Exact observations at `observations` distinct random nodes, plus
// `likelihoods` virtual evidence nodes named L0, L1, ... over one or two
// random parents with positive random tables.
EvidenceSet random_evidence(std::mt19937_64& rng, const Pid& network, std::size_t observations,
                            std::size_t likelihoods);

}  // namespace dirred
