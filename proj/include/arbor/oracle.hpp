#pragma once

#include <optional>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/rational.hpp"

namespace arbor::oracle {

struct OracleVerdict {
    bool feasible = false;
    // Edge-id lists per class when feasible; class k is the one whose
    // components all have at most d edges.
    std::optional<std::vector<std::vector<int>>> forests;
    unsigned long long nodesExplored = 0;
};

struct OracleLimits {
    int maxVertices = 10;
    int maxEdges = 16;
};

// Complete backtracking search over edge -> class assignments with forest
// pruning on every class and component-size pruning on the designated class.
// Refuses (throws CapError) instead of truncating when the instance exceeds
// the limits.
OracleVerdict brute_force_decompose(const MultiGraph& g, int k, int d, OracleLimits lim = {});

struct DensityScan {
    long long minBeta = 0;
    std::vector<int> minBetaVertices;
    Rat gamma;
    std::vector<int> gammaVertices;
};

// Serial reference: plain enumeration of connected induced subgraphs, no
// pruning, no parallelism. Cross-checks the sparsity module.
DensityScan exhaustive_density_scan(const MultiGraph& g, int k, int d);

}  // namespace arbor::oracle
