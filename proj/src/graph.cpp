#include "arbor/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace arbor {

MultiGraph::MultiGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw Error("negative vertex count");
    inc_.assign(n_, {});
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        const Edge& e = edges_[id];
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw Error("edge " + std::to_string(id) + " has endpoint out of range");
        if (e.u == e.v) throw Error("edge " + std::to_string(id) + " is a loop");
        inc_[e.u].push_back(id);
        inc_[e.v].push_back(id);
    }
}

bool MultiGraph::connected() const {
    if (n_ <= 1) return true;
    return static_cast<int>(components().size()) == 1;
}

std::vector<std::vector<int>> MultiGraph::components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n_; ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::queue<int> q;
        q.push(s);
        comp[s] = id;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            out[id].push_back(v);
            for (int eid : inc_[v]) {
                int w = edges_[eid].other(v);
                if (comp[w] == -1) {
                    comp[w] = id;
                    q.push(w);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

MultiGraph MultiGraph::parse(const std::string& text) {
    std::vector<Edge> edges;
    int maxId = -1;
    std::vector<char> seen;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u)) continue;  // blank / comment-only line
        if (!(ls >> v)) throw ParseError(lineNo, "expected two vertex ids");
        std::string rest;
        if (ls >> rest) throw ParseError(lineNo, "trailing token '" + rest + "'");
        if (u < 0 || v < 0) throw ParseError(lineNo, "negative vertex id");
        if (u == v) throw ParseError(lineNo, "loop '" + std::to_string(u) + " " + std::to_string(u) + "' rejected");
        if (u > 1000000 || v > 1000000) throw ParseError(lineNo, "vertex id too large");
        maxId = std::max(maxId, static_cast<int>(std::max(u, v)));
        if (static_cast<int>(seen.size()) <= maxId) seen.resize(maxId + 1, 0);
        seen[u] = seen[v] = 1;
        edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    for (int i = 0; i <= maxId; ++i)
        if (!seen[i])
            throw ParseError(lineNo, "vertex ids are not dense: id " + std::to_string(i) + " missing");
    return MultiGraph(maxId + 1, std::move(edges));
}

std::string MultiGraph::serialize() const {
    std::ostringstream out;
    for (const Edge& e : edges_) out << e.u << " " << e.v << "\n";
    return out.str();
}

Subgraph induced_subgraph(const MultiGraph& g, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::vector<char> in(g.vertexCount(), 0);
    for (int v : vertices) {
        if (v < 0 || v >= g.vertexCount())
            throw Error("induced_subgraph: unknown vertex " + std::to_string(v));
        in[v] = 1;
    }
    Subgraph s;
    s.vertices = std::move(vertices);
    for (int id = 0; id < g.edgeCount(); ++id) {
        const Edge& e = g.edge(id);
        if (in[e.u] && in[e.v]) s.edges.push_back(id);
    }
    return s;
}

MultiGraph extract_graph(const MultiGraph& g, const Subgraph& s, std::vector<int>* outMap) {
    std::vector<int> newId(g.vertexCount(), -1);
    for (int i = 0; i < s.vertexCount(); ++i) newId[s.vertices[i]] = i;
    std::vector<Edge> edges;
    edges.reserve(s.edges.size());
    for (int eid : s.edges) {
        const Edge& e = g.edge(eid);
        edges.push_back({newId[e.u], newId[e.v]});
    }
    if (outMap) *outMap = s.vertices;
    return MultiGraph(s.vertexCount(), std::move(edges));
}

bool is_forest(const MultiGraph& g, const std::vector<int>& edgeIds) {
    Dsu dsu(g.vertexCount());
    for (int eid : edgeIds) {
        const Edge& e = g.edge(eid);
        if (!dsu.unite(e.u, e.v)) return false;
    }
    return true;
}

std::optional<std::vector<int>> forest_path(const MultiGraph& g, const std::vector<int>& forestEdges,
                                            int x, int y) {
    if (x < 0 || x >= g.vertexCount() || y < 0 || y >= g.vertexCount())
        throw Error("forest_path: vertex out of range");
    if (!is_forest(g, forestEdges)) throw Error("forest_path: edge set is not a forest");
    if (x == y) return std::vector<int>{};
    std::vector<std::vector<int>> adj(g.vertexCount());
    for (int eid : forestEdges) {
        adj[g.edge(eid).u].push_back(eid);
        adj[g.edge(eid).v].push_back(eid);
    }
    std::vector<int> via(g.vertexCount(), -1);  // edge used to reach vertex
    std::vector<char> vis(g.vertexCount(), 0);
    std::queue<int> q;
    q.push(x);
    vis[x] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == y) break;
        for (int eid : adj[v]) {
            int w = g.edge(eid).other(v);
            if (!vis[w]) {
                vis[w] = 1;
                via[w] = eid;
                q.push(w);
            }
        }
    }
    if (!vis[y]) return std::nullopt;
    std::vector<int> path;
    int cur = y;
    while (cur != x) {
        int eid = via[cur];
        path.push_back(eid);
        cur = g.edge(eid).other(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace arbor
