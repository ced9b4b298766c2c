#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/rational.hpp"

namespace arbor::sparsity {

// beta(H) = (k+1)(k+d) v(H) - (k+d+1) e(H) - k^2. Exact, may be negative.
long long beta(long long vcount, long long ecount, int k, int d);
long long beta(const MultiGraph& g, int k, int d);
long long beta(const MultiGraph& g, const Subgraph& s, int k, int d);

struct BetaReport {
    int k = 0, d = 0;
    long long minBeta = 0;
    std::vector<int> witnessVertices;
};

struct DensityReport {
    Rat value;
    std::vector<int> witnessVertices;
    long long witnessEdges = 0;
    int witnessVertexCount = 0;
};

enum class BetaSearch {
    ConnectedOnly,  // sufficient for the sign decision
    AllSubgraphs,   // diagnostic mode, minimum over every induced subgraph
};

// Minimum of beta over induced subgraphs (nonempty vertex sets). The witness
// is canonical: among all minimizers, smallest vertex count, then
// lexicographically least sorted vertex list. Enumeration is exhaustive;
// graphs above maxVertices are refused.
BetaReport min_beta_subgraph(const MultiGraph& g, int k, int d,
                             BetaSearch mode = BetaSearch::ConnectedOnly, int maxVertices = 26);

// Maximum of e(H)/(v(H)-1) over induced subgraphs with >= 2 vertices, exact.
// Requires v(G) >= 2. Witness selection is canonical as above.
DensityReport fractional_arboricity(const MultiGraph& g, int maxVertices = 26);

// A vertex set whose induced subgraph H has e(H) > n(v(H)-1), or nullopt.
// Canonical: smallest vertex count, then lexicographically least.
std::optional<std::vector<int>> find_overfull(const MultiGraph& g, int n, int maxVertices = 26);

// JSON report {kind, value_num, value_den, witness_vertices[]}.
std::string report_json(const std::string& kind, const Rat& value,
                        const std::vector<int>& witnessVertices);

}  // namespace arbor::sparsity
