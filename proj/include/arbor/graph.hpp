#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbor {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or rejected input text.
struct ParseError : Error {
    int line;
    ParseError(int ln, const std::string& msg)
        : Error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// A move precondition failed; the state was not modified.
struct MoveError : Error {
    using Error::Error;
};

// An exhaustive routine refused to run past its size cap.
struct CapError : Error {
    using Error::Error;
};

// An internal consistency check failed; indicates a bug, never bad input.
struct InternalError : Error {
    using Error::Error;
};

struct Edge {
    int u = -1;
    int v = -1;
    int other(int w) const { return w == u ? v : u; }
    bool touches(int w) const { return w == u || w == v; }
};

// Loop-free multigraph over dense vertex ids 0..n-1. Edge ids are stable
// integers in input order; parallel edges get distinct ids. Immutable after
// construction.
class MultiGraph {
   public:
    MultiGraph() = default;
    MultiGraph(int n, std::vector<Edge> edges);

    int vertexCount() const { return n_; }
    int edgeCount() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int id) const { return edges_[id]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& incident(int v) const { return inc_[v]; }

    bool connected() const;
    // Vertex lists per connected component, ordered by smallest contained id.
    std::vector<std::vector<int>> components() const;

    // Text format: one "u v" pair per line, '#' starts a comment, blank lines
    // allowed. Vertex ids must be dense (every id in 0..max appears).
    static MultiGraph parse(const std::string& text);
    std::string serialize() const;

   private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> inc_;
};

// Induced subgraph view; vertex and edge ids refer to the host graph.
struct Subgraph {
    std::vector<int> vertices;  // sorted host vertex ids
    std::vector<int> edges;     // host edge ids with both endpoints inside
    int vertexCount() const { return static_cast<int>(vertices.size()); }
    int edgeCount() const { return static_cast<int>(edges.size()); }
};

Subgraph induced_subgraph(const MultiGraph& g, std::vector<int> vertices);

// Relabels a subgraph view into a standalone graph; outMap[i] gives the host
// vertex id of new vertex i.
MultiGraph extract_graph(const MultiGraph& g, const Subgraph& s, std::vector<int>* outMap = nullptr);

struct Dsu {
    std::vector<int> parent, size;
    explicit Dsu(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return true;
    }
};

bool is_forest(const MultiGraph& g, const std::vector<int>& edgeIds);

// Unique path between x and y inside the given forest, as an ordered edge-id
// sequence; nullopt when x and y lie in different components. The forest is
// taken as a spanning subgraph of g, so isolated vertices are valid inputs.
std::optional<std::vector<int>> forest_path(const MultiGraph& g, const std::vector<int>& forestEdges,
                                            int x, int y);

}  // namespace arbor
