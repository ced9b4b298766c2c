#include "arbor/state.hpp"

#include <algorithm>
#include <queue>

namespace arbor {

std::vector<int> State::redEdges() const {
    std::vector<int> out;
    for (int eid = 0; eid < m(); ++eid)
        if (colour[eid] == k) out.push_back(eid);
    return out;
}

bool State::isDescendant(int b, int v, int anc) const {
    int cur = v;
    int guard = 0;
    while (cur != -1) {
        if (cur == anc) return true;
        cur = parentVert[b][cur];
        if (++guard > n() + 1) throw InternalError("isDescendant: parent chain cycles");
    }
    return false;
}

void State::reorientTree(int b) {
    std::vector<std::vector<int>> adj(n());
    for (int eid = 0; eid < m(); ++eid)
        if (colour[eid] == b) {
            adj[g->edge(eid).u].push_back(eid);
            adj[g->edge(eid).v].push_back(eid);
        }
    std::vector<char> seen(n(), 0);
    std::fill(parentEdge[b].begin(), parentEdge[b].end(), -1);
    std::fill(parentVert[b].begin(), parentVert[b].end(), -1);
    auto bfs = [&](int r) {
        std::queue<int> q;
        q.push(r);
        seen[r] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int eid : adj[v]) {
                int w = g->edge(eid).other(v);
                if (!seen[w]) {
                    seen[w] = 1;
                    parentEdge[b][w] = eid;
                    parentVert[b][w] = v;
                    q.push(w);
                }
            }
        }
    };
    if (root >= 0) bfs(root);
    for (int v = 0; v < n(); ++v)
        if (!seen[v]) bfs(v);
}

void State::validate() const {
    if (!g) throw InternalError("state: no graph");
    if (static_cast<int>(colour.size()) != m()) throw InternalError("state: colour size");
    for (int eid = 0; eid < m(); ++eid)
        if (colour[eid] < 0 || colour[eid] > k) throw InternalError("state: bad colour");
    // Red forest.
    {
        Dsu dsu(n());
        for (int eid = 0; eid < m(); ++eid)
            if (colour[eid] == k && !dsu.unite(g->edge(eid).u, g->edge(eid).v))
                throw InternalError("state: red edges contain a cycle");
    }
    for (int b = 0; b < k; ++b) {
        int arcs = 0;
        std::vector<int> useCount(m(), 0);
        for (int v = 0; v < n(); ++v) {
            int pe = parentEdge[b][v];
            int pv = parentVert[b][v];
            if ((pe == -1) != (pv == -1)) throw InternalError("state: parent arrays disagree");
            if (pe == -1) continue;
            ++arcs;
            if (colour[pe] != b) throw InternalError("state: parent edge has wrong colour");
            if (!g->edge(pe).touches(v) || g->edge(pe).other(v) != pv)
                throw InternalError("state: parent edge does not join v to parent");
            ++useCount[pe];
        }
        int blueEdges = 0;
        for (int eid = 0; eid < m(); ++eid)
            if (colour[eid] == b) {
                ++blueEdges;
                if (useCount[eid] != 1) throw InternalError("state: blue edge not used exactly once");
            }
        if (arcs != blueEdges) throw InternalError("state: arc/edge count mismatch");
        // Acyclic parent chains.
        for (int v = 0; v < n(); ++v) {
            int cur = v, guard = 0;
            while (cur != -1) {
                cur = parentVert[b][cur];
                if (++guard > n()) throw InternalError("state: parent chain cycles");
            }
        }
        if (spanningMode) {
            if (blueEdges != n() - 1) throw InternalError("state: blue class is not spanning");
            if (root < 0 || parentEdge[b][root] != -1)
                throw InternalError("state: root has a parent");
            for (int v = 0; v < n(); ++v)
                if (v != root && parentEdge[b][v] == -1)
                    throw InternalError("state: non-root vertex without parent in spanning mode");
        }
    }
}

State make_state(const MultiGraph& g, int k, int d, const std::vector<int>& assignment, int root,
                 bool spanningMode) {
    State s;
    s.g = &g;
    s.k = k;
    s.d = d;
    s.colour = assignment;
    s.root = root;
    s.spanningMode = spanningMode;
    s.parentEdge.assign(k, std::vector<int>(g.vertexCount(), -1));
    s.parentVert.assign(k, std::vector<int>(g.vertexCount(), -1));
    for (int b = 0; b < k; ++b) s.reorientTree(b);
    s.validate();
    return s;
}

RedComps red_components(const State& s) {
    const MultiGraph& g = *s.g;
    RedComps rc;
    rc.compOfVertex.assign(g.vertexCount(), -1);
    std::vector<std::vector<int>> adj(g.vertexCount());
    for (int eid = 0; eid < g.edgeCount(); ++eid)
        if (s.colour[eid] == s.k) {
            adj[g.edge(eid).u].push_back(eid);
            adj[g.edge(eid).v].push_back(eid);
        }
    for (int v0 = 0; v0 < g.vertexCount(); ++v0) {
        if (rc.compOfVertex[v0] != -1) continue;
        int id = rc.count++;
        rc.verts.emplace_back();
        rc.edges.emplace_back();
        rc.edgeCount.push_back(0);
        std::queue<int> q;
        q.push(v0);
        rc.compOfVertex[v0] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            rc.verts[id].push_back(v);
            for (int eid : adj[v]) {
                int w = g.edge(eid).other(v);
                if (rc.compOfVertex[w] == -1) {
                    rc.compOfVertex[w] = id;
                    q.push(w);
                }
            }
        }
        std::sort(rc.verts[id].begin(), rc.verts[id].end());
    }
    for (int eid = 0; eid < g.edgeCount(); ++eid)
        if (s.colour[eid] == s.k) {
            int c = rc.compOfVertex[g.edge(eid).u];
            rc.edges[c].push_back(eid);
            ++rc.edgeCount[c];
        }
    return rc;
}

}  // namespace arbor
