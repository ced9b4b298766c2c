#include "arbor/decompose.hpp"

#include <algorithm>
#include <queue>

#include "arbor/sparsity.hpp"
#include "json.hpp"

namespace arbor::decompose {

namespace {

// Shared machinery: classes as edge->class assignment (-1 unassigned), with
// per-class adjacency rebuilt on demand for cycle queries.
struct Classes {
    const MultiGraph& g;
    int n;
    std::vector<int> cls;

    Classes(const MultiGraph& gg, int nn) : g(gg), n(nn), cls(gg.edgeCount(), -1) {}

    std::vector<std::vector<int>> adjacency(int c) const {
        std::vector<std::vector<int>> adj(g.vertexCount());
        for (int eid = 0; eid < g.edgeCount(); ++eid)
            if (cls[eid] == c) {
                adj[g.edge(eid).u].push_back(eid);
                adj[g.edge(eid).v].push_back(eid);
            }
        return adj;
    }

    // Path between the endpoints of edge x inside class c, or empty when the
    // endpoints lie in different components (x may then enter c cleanly).
    std::vector<int> fundamentalCycle(int x, const std::vector<std::vector<int>>& adj) const {
        int from = g.edge(x).u, to = g.edge(x).v;
        std::vector<int> via(g.vertexCount(), -2);
        std::queue<int> q;
        q.push(from);
        via[from] = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (v == to) break;
            for (int eid : adj[v]) {
                if (eid == x) continue;
                int w = g.edge(eid).other(v);
                if (via[w] == -2) {
                    via[w] = eid;
                    q.push(w);
                }
            }
        }
        std::vector<int> path;
        if (via[to] == -2) return path;
        int cur = to;
        while (cur != from) {
            path.push_back(via[cur]);
            cur = g.edge(via[cur]).other(cur);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }
};

}  // namespace

ForestResult forest_decomposition(const MultiGraph& g, int n) {
    if (n < 1) throw Error("forest_decomposition: n must be positive");
    Classes st(g, n);
    for (int e0 = 0; e0 < g.edgeCount(); ++e0) {
        std::vector<std::vector<std::vector<int>>> adj(n);
        for (int c = 0; c < n; ++c) adj[c] = st.adjacency(c);

        std::vector<char> visited(g.edgeCount(), 0);
        std::vector<int> reachedVia(g.edgeCount(), -1);
        std::queue<int> q;
        q.push(e0);
        visited[e0] = 1;
        int insertEdge = -1, insertClass = -1;
        while (!q.empty() && insertEdge == -1) {
            int x = q.front();
            q.pop();
            for (int c = 0; c < n && insertEdge == -1; ++c) {
                if (st.cls[x] == c) continue;
                std::vector<int> cyc = st.fundamentalCycle(x, adj[c]);
                if (cyc.empty()) {
                    insertEdge = x;
                    insertClass = c;
                } else {
                    for (int y : cyc)
                        if (!visited[y]) {
                            visited[y] = 1;
                            reachedVia[y] = x;
                            q.push(y);
                        }
                }
            }
        }
        if (insertEdge == -1) {
            // Exchange closure exhausted: the visited span is n-overfull.
            std::vector<char> inS(g.vertexCount(), 0);
            for (int eid = 0; eid < g.edgeCount(); ++eid)
                if (visited[eid]) inS[g.edge(eid).u] = inS[g.edge(eid).v] = 1;
            std::vector<int> verts;
            for (int v = 0; v < g.vertexCount(); ++v)
                if (inS[v]) verts.push_back(v);
            Subgraph h = induced_subgraph(g, verts);
            if (h.edgeCount() > static_cast<long long>(n) * (h.vertexCount() - 1))
                return InfeasibleWitness{verts};
            // Should not happen; fall back to the exhaustive search.
            auto w = sparsity::find_overfull(g, n);
            if (!w) throw InternalError("forest_decomposition: augmentation failed on a feasible instance");
            return InfeasibleWitness{*w};
        }
        // Unwind the displacement chain; each attempt assigns exactly one
        // more edge.
        int assignedBefore = 0;
        for (int c : st.cls) assignedBefore += c != -1;
        int cur = insertEdge;
        int target = insertClass;
        while (cur != -1) {
            int freed = st.cls[cur];
            st.cls[cur] = target;
            target = freed;
            cur = reachedVia[cur];
        }
        int assignedAfter = 0;
        for (int c : st.cls) assignedAfter += c != -1;
        if (assignedAfter != assignedBefore + 1)
            throw InternalError("forest_decomposition: chain did not grow the assignment");
    }
    ForestDecomposition fd;
    fd.n = n;
    fd.assignment = st.cls;
    return fd;
}

RefineResult to_spanning_plus_residual(const MultiGraph& g, int k) {
    RefineResult out;
    if (k < 1) throw Error("to_spanning_plus_residual: k must be positive");
    if (!g.connected()) throw Error("to_spanning_plus_residual: graph must be connected");
    const int v = g.vertexCount();
    if (g.edgeCount() < static_cast<long long>(k) * (v - 1)) {
        out.reason = "fewer than k(v-1) edges";
        return out;
    }
    ForestResult fr = forest_decomposition(g, k + 1);
    if (std::holds_alternative<InfeasibleWitness>(fr)) {
        out.reason = "no decomposition into k+1 forests";
        return out;
    }
    ForestDecomposition fd = std::get<ForestDecomposition>(fr);

    // Residual = class of minimum edge count, relabelled to slot k.
    std::vector<int> count(k + 1, 0);
    for (int c : fd.assignment) ++count[c];
    int residual = 0;
    for (int c = 1; c <= k; ++c)
        if (count[c] < count[residual]) residual = c;
    std::vector<int> relabel(k + 1);
    int next = 0;
    for (int c = 0; c <= k; ++c) relabel[c] = (c == residual) ? k : next++;
    Classes st(g, k + 1);
    for (int eid = 0; eid < g.edgeCount(); ++eid) st.cls[eid] = relabel[fd.assignment[eid]];

    auto classSize = [&](int c) {
        int s = 0;
        for (int x : st.cls)
            if (x == c) ++s;
        return s;
    };

    long long growths = 0;
    for (int b = 0; b < k; ++b) {
        while (classSize(b) < v - 1) {
            if (++growths > static_cast<long long>(k) * (v - 1))
                throw InternalError("to_spanning_plus_residual: growth did not terminate");
            std::vector<std::vector<std::vector<int>>> adj(k + 1);
            for (int c = 0; c <= k; ++c) adj[c] = st.adjacency(c);

            std::vector<char> visited(g.edgeCount(), 0);
            std::vector<int> prevEdge(g.edgeCount(), -1);
            std::queue<int> q;
            for (int eid = 0; eid < g.edgeCount(); ++eid)
                if (st.cls[eid] == k) {
                    visited[eid] = 1;
                    q.push(eid);
                }
            int goal = -1;
            while (!q.empty() && goal == -1) {
                int x = q.front();
                q.pop();
                if (st.cls[x] != b && st.fundamentalCycle(x, adj[b]).empty()) {
                    goal = x;
                    break;
                }
                for (int c = 0; c <= k && goal == -1; ++c) {
                    if (st.cls[x] == c) continue;
                    for (int y : st.fundamentalCycle(x, adj[c]))
                        if (!visited[y]) {
                            visited[y] = 1;
                            prevEdge[y] = x;
                            q.push(y);
                        }
                }
            }
            if (goal == -1) {
                out.reason = "exchange closure exhausted growing tree " + std::to_string(b);
                return out;
            }
            int cur = goal, target = b;
            while (cur != -1) {
                int freed = st.cls[cur];
                st.cls[cur] = target;
                target = freed;
                cur = prevEdge[cur];
            }
            // Every class must still be a forest after the chain.
            for (int c = 0; c <= k; ++c) {
                std::vector<int> eids;
                for (int eid = 0; eid < g.edgeCount(); ++eid)
                    if (st.cls[eid] == c) eids.push_back(eid);
                if (!is_forest(g, eids))
                    throw InternalError("to_spanning_plus_residual: chain broke a forest");
            }
        }
    }
    out.ok = true;
    out.value.k = k;
    out.value.assignment = st.cls;
    return out;
}

std::string decomposition_json(const ForestDecomposition& fd) {
    nlohmann::json j;
    j["n"] = fd.n;
    j["assignment"] = fd.assignment;
    return j.dump();
}

ForestDecomposition decomposition_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ForestDecomposition fd;
    fd.n = j.at("n").get<int>();
    fd.assignment = j.at("assignment").get<std::vector<int>>();
    return fd;
}

}  // namespace arbor::decompose
