#pragma once

// Hand-built decomposition states and small independent oracles used across
// the move/order/certificate tests.

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "arbor/decompose.hpp"
#include "arbor/instances.hpp"
#include "arbor/order.hpp"
#include "arbor/state.hpp"

namespace crafted {

struct Spec {
    int n = 0, k = 1, d = 3;
    int root = 0;
    // (u, v, colour): colour 0..k-1 blue class, k red
    std::vector<std::array<int, 3>> edges;
};

// The state keeps a raw pointer to its graph, so the graph lives behind a
// stable heap allocation.
struct Built {
    std::shared_ptr<arbor::MultiGraph> g;
    arbor::State s;
};

inline Built build(const Spec& spec) {
    std::vector<arbor::Edge> edges;
    std::vector<int> colour;
    for (const auto& [u, v, c] : spec.edges) {
        edges.push_back({u, v});
        colour.push_back(c);
    }
    Built b;
    b.g = std::make_shared<arbor::MultiGraph>(spec.n, edges);
    b.s = arbor::make_state(*b.g, spec.k, spec.d, colour, spec.root, true);
    return b;
}

// State with an oversized root component, a one-edge component K entered from
// it, a zero-edge child of K, and an interesting neighbour of K (a path of
// three red edges whose articulation vertex has an edgeless child).
inline Spec interestingNeighbourSpec() {
    Spec spec;
    spec.n = 13;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        // red: root component (4 edges, root degree 3)
        {0, 1, RED},
        {1, 2, RED},
        {0, 3, RED},
        {0, 4, RED},
        // red: K = {5,6}
        {5, 6, RED},
        // red: L = path 8-9-10-11
        {8, 9, RED},
        {9, 10, RED},
        {10, 11, RED},
        // blue tree (arcs towards 0 after rooting)
        {1, 5, 0},   // generator into K
        {5, 7, 0},   // generator into the edgeless child {7}
        {7, 0, 0},
        {6, 8, 0},   // (x, x') for the interesting neighbour
        {8, 12, 0},  // (x', x'')
        {12, 0, 0},
        {9, 6, 0},   // blue chain n_{x'} -> x
        {10, 9, 0},
        {11, 10, 0},
        {2, 1, 0},
        {3, 0, 0},
        {4, 0, 0},
    };
    return spec;
}

// K is a 3-edge path with two edgeless children whose pair classifies with a
// boundary edge towards the second child.
inline Spec caseTwoSpec() {
    Spec spec;
    spec.n = 11;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {0, 1, RED}, {1, 2, RED}, {0, 3, RED}, {0, 4, RED},  // root component
        {5, 6, RED}, {6, 7, RED}, {7, 8, RED},                // K
        {1, 5, 0},                                            // into K
        {5, 9, 0},  {9, 0, 0},                                // child {9}
        {6, 7, 0},  {7, 8, 0},                                // chain inside K
        {8, 10, 0}, {10, 0, 0},                               // child {10}
        {2, 1, 0},  {3, 0, 0},  {4, 0, 0},
    };
    return spec;
}

// Same shape but the blue tree climbs out of K immediately, so the pair
// classifies with two boundary edges.
inline Spec caseOneSpec() {
    Spec spec;
    spec.n = 11;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {0, 1, RED}, {1, 2, RED}, {0, 3, RED}, {0, 4, RED},  // root component
        {5, 6, RED}, {6, 7, RED}, {7, 8, RED},                // K
        {1, 5, 0},                                            // into K
        {5, 9, 0},  {9, 0, 0},                                // child {9}
        {6, 7, 0},  {7, 0, 0},                                // chain leaves K
        {8, 10, 0}, {10, 0, 0},                               // child {10}
        {2, 1, 0},  {3, 0, 0},  {4, 0, 0},
    };
    return spec;
}

// Single oversized component covering the whole graph; no move can exist and
// the density certificate applies (the graph is not (1,3)-sparse).
inline Spec stuckDenseSpec() {
    Spec spec;
    spec.n = 5;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {1, 2, RED}, {2, 0, RED}, {0, 3, RED}, {3, 4, RED},  // red path through 0
        {0, 1, 0},   {1, 2, 0},   {2, 3, 0},   {3, 4, 0},    // blue spanning tree
    };
    return spec;
}

// A one-edge component and a zero-edge component joined by a blue arc whose
// augmentation keeps the residue and shrinks the order: the path start is the
// arc tail itself and its Aux parent edge is red.
inline Spec smallPairSpec() {
    Spec spec;
    spec.n = 8;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {0, 1, RED}, {1, 2, RED}, {0, 3, RED}, {0, 4, RED},  // root component
        {5, 6, RED},                                          // C1
        {1, 6, 0},                                            // entry into C1 at 6
        {6, 0, 0},
        {5, 7, 0},                                            // the arc C1 -> C2 = {7}
        {7, 0, 0},  {2, 1, 0},  {3, 0, 0},  {4, 0, 0},
    };
    return spec;
}

// Two candidate path starts inside one component, one the Aux ancestor of the
// other; the ancestor must win the minimality tie-break.
inline Spec competingStartsSpec() {
    Spec spec;
    spec.n = 9;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {0, 1, RED}, {1, 2, RED}, {0, 3, RED}, {0, 4, RED},  // root component
        {5, 6, RED}, {6, 7, RED},                             // C1 entered at 5
        {1, 5, 0},                                            // generator into C1
        {5, 0, 0},
        {6, 7, 0},                                            // blue hop inside C1
        {7, 8, 0},                                            // the target arc into {8}
        {8, 0, 0},  {2, 1, 0},  {3, 0, 0},  {4, 0, 0},
    };
    return spec;
}

// A bad component with a one-edge child and an edgeless child whose inbound
// chain tail lies in a second component; the one-edge child reroutes there.
inline Spec sinkChainSpec() {
    Spec spec;
    spec.n = 15;
    spec.k = 1;
    spec.d = 3;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {0, 1, RED},  {1, 2, RED},  {0, 3, RED},  {0, 4, RED},   // root component
        {5, 6, RED},  {6, 7, RED},  {7, 8, RED},                  // K1, 3 edges
        {9, 10, RED},                                             // C1, one edge
        {12, 13, RED}, {13, 14, RED},                             // K2, d-1 edges
        // blue arcs (rooted at 0)
        {1, 5, 0},    // into K1
        {5, 9, 0},    // generator of C1
        {8, 11, 0},   // generator of the edgeless child {11}
        {7, 12, 0},   // chain n_y -> z
        {12, 8, 0},   // chain tail arc (z, y)
        {9, 0, 0},  {10, 9, 0}, {11, 0, 0}, {6, 0, 0},
        {13, 12, 0}, {14, 13, 0}, {2, 1, 0}, {3, 0, 0}, {4, 0, 0},
    };
    return spec;
}

// Exploration stops at the root component: the only inter-component arc
// points into the explored side.
inline Spec limitedExplorationSpec() {
    Spec spec;
    spec.n = 5;
    spec.k = 1;
    spec.d = 1;
    spec.root = 0;
    int RED = 1;
    spec.edges = {
        {0, 1, RED}, {1, 2, RED},  // root component, 2 > d edges
        {3, 4, RED},
        {1, 0, 0},  {2, 1, 0},  // blue arcs inside the root component
        {3, 2, 0},  {4, 3, 0},  // chain entering the explored set
    };
    return spec;
}

// Greedy-by-size order tie break needs lookahead: picking the lower-id
// one-edge component first delays the zero-edge component.
inline Spec orderLookaheadSpec() {
    Spec spec;
    spec.n = 8;
    spec.k = 1;
    spec.d = 1;
    spec.root = 1;
    int RED = 1;
    spec.edges = {
        {0, 1, RED}, {1, 2, RED},  // root component
        {3, 4, RED},               // A
        {5, 6, RED},               // B
        {0, 3, 0},                 // R* -> A
        {2, 5, 0},                 // R* -> B
        {6, 7, 0},                 // B -> C = {7}
        {3, 4, 0},  {4, 1, 0},  {5, 6, 0},  {7, 1, 0},
    };
    return spec;
}

// --- independent oracles -----------------------------------------------------

// Closure of the two step rules, computed by plain fixpoint iteration.
inline std::vector<int> explorationOracle(const arbor::State& s) {
    std::vector<char> in(s.n(), 0);
    in[s.root] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < s.n(); ++v) {
            if (!in[v]) continue;
            for (int b = 0; b < s.k; ++b) {
                int p = s.parentVert[b][v];
                if (p != -1 && !in[p]) {
                    in[p] = 1;
                    changed = true;
                }
            }
            for (int eid : s.g->incident(v))
                if (s.colour[eid] == s.k) {
                    int w = s.g->edge(eid).other(v);
                    if (!in[w]) {
                        in[w] = 1;
                        changed = true;
                    }
                }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < s.n(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

// All legal orders of the exploration subgraph, as component-size sequences.
inline void enumerateOrdersRec(const arbor::State& s, const arbor::RedComps& rc,
                               const std::vector<std::vector<int>>& unlocks,
                               std::vector<int>& placedSeq, std::vector<char>& placed,
                               int total, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(placedSeq.size()) == total) {
        std::vector<int> sizes;
        for (int c : placedSeq) sizes.push_back(rc.edgeCount[c]);
        out.push_back(sizes);
        return;
    }
    for (int c = 0; c < rc.count; ++c) {
        if (placed[c]) continue;
        bool avail = false;
        for (int p : placedSeq)
            for (int q : unlocks[p])
                if (q == c) avail = true;
        if (!avail) continue;
        placed[c] = 1;
        placedSeq.push_back(c);
        enumerateOrdersRec(s, rc, unlocks, placedSeq, placed, total, out);
        placedSeq.pop_back();
        placed[c] = 0;
    }
}

inline std::vector<int> lexMinOrderOracle(const arbor::State& s) {
    arbor::RedComps rc = arbor::red_components(s);
    std::vector<int> H = arbor::exploration_subgraph(s);
    std::vector<char> inH(s.n(), 0);
    for (int v : H) inH[v] = 1;
    std::vector<std::vector<int>> unlocks(rc.count);
    for (int v : H)
        for (int b = 0; b < s.k; ++b) {
            int p = s.parentVert[b][v];
            if (p != -1 && rc.compOfVertex[p] != rc.compOfVertex[v])
                unlocks[rc.compOfVertex[v]].push_back(rc.compOfVertex[p]);
        }
    int total = 0;
    for (int c = 0; c < rc.count; ++c)
        if (inH[rc.verts[c][0]]) ++total;
    std::vector<int> seq{rc.compOfVertex[s.root]};
    std::vector<char> placed(rc.count, 0);
    placed[rc.compOfVertex[s.root]] = 1;
    std::vector<std::vector<int>> all;
    enumerateOrdersRec(s, rc, unlocks, seq, placed, total, all);
    std::vector<int> best;
    for (const auto& sizes : all)
        if (best.empty() || arbor::compare_orders(sizes, best) < 0) best = sizes;
    return best;
}

// Random spanning-mode state with an oversized component, or nullopt.
inline std::optional<Built> randomState(int n, int m, int k, int d, std::uint64_t seed) {
    auto g = std::make_shared<arbor::MultiGraph>(arbor::instances::random_multigraph(n, m, seed));
    if (!g->connected()) return std::nullopt;
    auto refined = arbor::decompose::to_spanning_plus_residual(*g, k);
    if (!refined.ok) return std::nullopt;
    Built b;
    b.g = g;
    b.s = arbor::make_state(*b.g, k, d, refined.value.assignment, 0, true);
    arbor::RedComps rc = arbor::red_components(b.s);
    arbor::RootChoice rt = arbor::select_root(b.s, rc);
    if (rt.alreadyDone) return std::nullopt;
    b.s.root = rt.r;
    for (int t = 0; t < k; ++t) b.s.reorientTree(t);
    b.s.validate();
    return b;
}

}  // namespace crafted
