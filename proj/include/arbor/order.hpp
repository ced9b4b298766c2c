#pragma once

#include <climits>
#include <optional>
#include <vector>

#include "arbor/state.hpp"

namespace arbor {

// Residue of the red forest: how many components have i edges, for i above
// the target bound d, compared lexicographically from the largest size down.
// Stored sparsely as (size, count) pairs, size descending.
struct Residue {
    int d = 0;
    std::vector<std::pair<int, int>> counts;

    bool zero() const { return counts.empty(); }
};

Residue residue(const RedComps& rc, int d);
// -1, 0, 1 as a < b, a == b, a > b.
int compare_residue(const Residue& a, const Residue& b);
// Residue of the forest after merging two components of sizes e1, e2 (the
// effect of adding one edge between them).
Residue residue_after_merge(const Residue& r, int e1, int e2);

struct RootChoice {
    bool alreadyDone = false;  // no component exceeds d edges
    int compId = -1;
    int r = -1;
};

// R* = oversized component with the most edges (tie: smallest vertex id);
// r = vertex of red degree >= 3 in it, else a vertex with two edge-disjoint
// red paths of length >= 2, else the maximum-degree vertex (only reachable
// when d <= 2).
RootChoice select_root(const State& s, const RedComps& rc);

// Closure of the root under blue-arc steps (towards parents) and red-edge
// steps; sorted vertex list.
std::vector<int> exploration_subgraph(const State& s);

struct GenArc {
    int tail = -1, head = -1, edge = -1, tree = -1;
};

struct LegalOrder {
    std::vector<int> comps;       // position -> red comp id
    std::vector<int> posOfComp;   // comp id -> position, -1 outside H
    std::vector<int> sizes;       // position -> e(comp)
    std::vector<GenArc> gen;      // per position, gen[0] unused
    std::vector<int> auxParentV;  // per vertex, -1 at r / outside H
    std::vector<int> auxParentE;
    std::vector<char> inH;

    // 1-based component index of v, INT_MAX outside H.
    int iSigma(int v) const {
        if (v < 0 || !inH[v]) return INT_MAX;
        return posOfCompSafe(v) + 1;
    }
    int posOfCompSafe(int v) const;
    const std::vector<int>* compOfVertex = nullptr;  // borrowed from RedComps

    // anc on the Aux parent chain of v (v is its own ancestor).
    bool auxAncestor(int anc, int v) const;
};

// Minimal legal order of the exploration subgraph: R* first, then the
// lexicographically least component-size sequence over all legal orders,
// computed exactly by a frontier search (greedy fallback past the internal
// frontier cap). Canonical tie-breaks: lowest minimum vertex id for the
// component, lexicographically least (tail, head) for generator arcs.
LegalOrder minimal_legal_order(const State& s, const RedComps& rc, const std::vector<int>& H);

// Builds the LegalOrder structure for an explicitly given component sequence.
// forcedGen may pin generator arcs for a prefix (entries with tail == -1 get
// the canonical lexicographically least choice). Returns nullopt when the
// sequence is not legal or a pinned arc no longer exists.
std::optional<LegalOrder> order_from_sequence(const State& s, const RedComps& rc,
                                              const std::vector<int>& H,
                                              const std::vector<int>& compSeq,
                                              const std::vector<GenArc>& forcedGen = {});

// Lexicographic comparison of size sequences, shorter side padded with zeros.
int compare_orders(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace arbor
