#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "arbor/graph.hpp"

namespace arbor::instances {

// Built-in instances: path_<n>, cycle_<n>, K4, Petersen, dodecahedron.
// Returns nullopt when the name is not recognised.
std::optional<MultiGraph> named(const std::string& name);

// Uniform random multigraph: m edges drawn uniformly over unordered pairs of
// distinct vertices. Seed-deterministic.
MultiGraph random_multigraph(int n, int m, std::uint64_t seed);

struct GenerateResult {
    bool ok = false;
    MultiGraph graph;
    int attempts = 0;
};

// Rejection sampling for a connected (k,d)-sparse graph with no
// (k+1)-overfull subgraph. Reports failure after the attempt budget, never
// silently.
GenerateResult generate_sparse(int n, int m, int k, int d, std::uint64_t seed, int budget = 1000);

}  // namespace arbor::instances
