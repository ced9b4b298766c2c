#pragma once

#include <string>
#include <variant>
#include <vector>

#include "arbor/graph.hpp"

namespace arbor::decompose {

struct ForestDecomposition {
    int n = 0;                    // number of classes
    std::vector<int> assignment;  // edge id -> class in 0..n-1
};

struct InfeasibleWitness {
    std::vector<int> vertices;  // induced subgraph is n-overfull
};

using ForestResult = std::variant<ForestDecomposition, InfeasibleWitness>;

// Partition E(G) into n forests via breadth-first augmentation over the
// exchange digraph, or return an n-overfull witness proving infeasibility.
ForestResult forest_decomposition(const MultiGraph& g, int n);

struct SpanningPlusResidual {
    int k = 0;
    std::vector<int> assignment;  // edge id -> class; 0..k-1 spanning trees, k residual forest
};

struct RefineResult {
    bool ok = false;
    SpanningPlusResidual value;
    std::string reason;  // set when !ok
};

// Refine a (k+1)-forest decomposition into k spanning trees plus a residual
// forest. Starts from the class of minimum edge count as the residual and
// grows deficient trees by exchange chains through all classes; reports
// infeasible only once the exchange closure is exhausted. Requires G
// connected.
RefineResult to_spanning_plus_residual(const MultiGraph& g, int k);

// {n, assignment:[...]} round trip.
std::string decomposition_json(const ForestDecomposition& fd);
ForestDecomposition decomposition_from_json(const std::string& text);

}  // namespace arbor::decompose
