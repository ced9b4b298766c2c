#pragma once

#include <vector>

#include "arbor/graph.hpp"

namespace arbor {

// Working decomposition: k directed tree classes ("blue", arcs toward the
// root) plus a residual undirected forest ("red"). Every edge carries exactly
// one colour; colour k is red. In spanning mode each blue class is a single
// spanning tree rooted at `root`; otherwise blue classes are rooted forests
// (one parentless vertex per blue component).
struct State {
    const MultiGraph* g = nullptr;
    int k = 0, d = 0;
    std::vector<int> colour;                  // edge -> 0..k-1 blue, k red
    std::vector<std::vector<int>> parentEdge; // [b][v] edge to parent, -1 at roots
    std::vector<std::vector<int>> parentVert; // [b][v] parent vertex, -1 at roots
    int root = -1;
    bool spanningMode = true;

    static constexpr int RED = -2;  // sentinel only for readability in call sites

    int n() const { return g->vertexCount(); }
    int m() const { return g->edgeCount(); }
    bool isRed(int eid) const { return colour[eid] == k; }
    int parentV(int b, int v) const { return parentVert[b][v]; }
    int parentE(int b, int v) const { return parentEdge[b][v]; }

    std::vector<int> redEdges() const;

    // True when `anc` lies on the parent chain of v in tree b (v counts as
    // its own descendant).
    bool isDescendant(int b, int v, int anc) const;

    // Recompute parent pointers of tree b from its current edge set: the
    // component containing `root` is rooted there, any other component at its
    // smallest vertex id.
    void reorientTree(int b);

    // Full structural check; throws InternalError on violation.
    void validate() const;
};

// Build a state from a class assignment (classes 0..k-1 blue, k red).
State make_state(const MultiGraph& g, int k, int d, const std::vector<int>& assignment, int root,
                 bool spanningMode);

// Red components of the state's forest, ids assigned by smallest contained
// vertex in ascending order.
struct RedComps {
    int count = 0;
    std::vector<int> compOfVertex;       // vertex -> comp id
    std::vector<int> edgeCount;          // comp id -> red edge count
    std::vector<std::vector<int>> verts; // comp id -> sorted vertices
    std::vector<std::vector<int>> edges; // comp id -> red edge ids
};

RedComps red_components(const State& s);

}  // namespace arbor
