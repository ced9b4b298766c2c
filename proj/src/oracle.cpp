#include "arbor/oracle.hpp"

#include <algorithm>

#include "arbor/sparsity.hpp"

namespace arbor::oracle {

namespace {

// Union-find with an undo stack, no path compression so rollback stays exact.
struct UndoDsu {
    std::vector<int> parent, size, compEdges;
    struct Entry {
        int child, root, prevEdges;
    };
    std::vector<Entry> log;

    explicit UndoDsu(int n) : parent(n), size(n, 1), compEdges(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    // Returns false when u,v already share a component (would close a cycle).
    bool unite(int u, int v) {
        int a = find(u), b = find(v);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        log.push_back({b, a, compEdges[a]});
        parent[b] = a;
        size[a] += size[b];
        compEdges[a] += compEdges[b] + 1;
        return true;
    }
    int edgesAt(int v) const { return compEdges[find(v)]; }
    std::size_t mark() const { return log.size(); }
    void rollback(std::size_t m) {
        while (log.size() > m) {
            const Entry& e = log.back();
            size[e.root] -= size[e.child];
            compEdges[e.root] = e.prevEdges;
            parent[e.child] = e.child;
            log.pop_back();
        }
    }
};

struct Search {
    const MultiGraph& g;
    int k, d;
    std::vector<UndoDsu> cls;  // k+1 union-finds
    std::vector<int> assign;
    unsigned long long nodes = 0;
    bool found = false;

    Search(const MultiGraph& gg, int kk, int dd)
        : g(gg), k(kk), d(dd), assign(gg.edgeCount(), -1) {
        for (int i = 0; i <= k; ++i) cls.emplace_back(gg.vertexCount());
    }

    bool place(int eid) {
        ++nodes;
        if (eid == g.edgeCount()) {
            found = true;
            return true;
        }
        const Edge& e = g.edge(eid);
        // Blue classes are interchangeable, so the first edge only ever tries
        // class 0 or the designated class.
        int lastBlue = (eid == 0) ? 0 : k - 1;
        for (int c = 0; c <= lastBlue; ++c) {
            std::size_t m = cls[c].mark();
            if (cls[c].unite(e.u, e.v)) {
                assign[eid] = c;
                if (place(eid + 1)) return true;
                assign[eid] = -1;
            }
            cls[c].rollback(m);
        }
        {
            int c = k;
            std::size_t m = cls[c].mark();
            int merged = cls[c].edgesAt(e.u) + cls[c].edgesAt(e.v) + 1;
            if (merged <= d && cls[c].unite(e.u, e.v)) {
                assign[eid] = c;
                if (place(eid + 1)) return true;
                assign[eid] = -1;
            }
            cls[c].rollback(m);
        }
        return false;
    }
};

}  // namespace

OracleVerdict brute_force_decompose(const MultiGraph& g, int k, int d, OracleLimits lim) {
    if (g.vertexCount() > lim.maxVertices || g.edgeCount() > lim.maxEdges)
        throw CapError("brute_force_decompose: instance exceeds caps (v=" +
                       std::to_string(g.vertexCount()) + ", e=" + std::to_string(g.edgeCount()) +
                       ", cap v<=" + std::to_string(lim.maxVertices) +
                       ", e<=" + std::to_string(lim.maxEdges) + ")");
    if (k < 1 || d < 1) throw Error("brute_force_decompose: k and d must be positive");
    Search s(g, k, d);
    OracleVerdict verdict;
    verdict.feasible = s.place(0);
    verdict.nodesExplored = s.nodes;
    if (verdict.feasible) {
        std::vector<std::vector<int>> forests(k + 1);
        for (int eid = 0; eid < g.edgeCount(); ++eid) forests[s.assign[eid]].push_back(eid);
        verdict.forests = std::move(forests);
    }
    return verdict;
}

DensityScan exhaustive_density_scan(const MultiGraph& g, int k, int d) {
    if (g.vertexCount() > 20)
        throw CapError("exhaustive_density_scan: refused above 20 vertices");
    if (g.vertexCount() == 0) throw Error("exhaustive_density_scan: empty graph");
    const int n = g.vertexCount();
    DensityScan out;
    bool haveBeta = false, haveGamma = false;

    std::vector<char> in(n), seen(n);
    std::vector<int> verts, stack;
    for (std::uint32_t m = 1; m < (std::uint32_t(1) << n); ++m) {
        std::fill(in.begin(), in.end(), 0);
        std::fill(seen.begin(), seen.end(), 0);
        verts.clear();
        stack.clear();
        for (int v = 0; v < n; ++v)
            if (m & (std::uint32_t(1) << v)) {
                in[v] = 1;
                verts.push_back(v);
            }
        // depth-first walk inside the subset
        stack.push_back(verts[0]);
        seen[verts[0]] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int eid : g.incident(v)) {
                int w = g.edge(eid).other(v);
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != static_cast<int>(verts.size())) continue;

        long long ecount = 0;
        for (const Edge& e : g.edges())
            if (in[e.u] && in[e.v]) ++ecount;

        long long b = sparsity::beta(static_cast<long long>(verts.size()), ecount, k, d);
        if (!haveBeta || b < out.minBeta) {
            out.minBeta = b;
            out.minBetaVertices = verts;
            haveBeta = true;
        }
        if (verts.size() >= 2) {
            Rat val(ecount, static_cast<long long>(verts.size()) - 1);
            if (!haveGamma || out.gamma < val) {
                out.gamma = val;
                out.gammaVertices = verts;
                haveGamma = true;
            }
        }
    }
    return out;
}

}  // namespace arbor::oracle
