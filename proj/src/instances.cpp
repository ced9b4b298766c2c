#include "arbor/instances.hpp"

#include <random>

#include "arbor/sparsity.hpp"

namespace arbor::instances {

namespace {

MultiGraph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return MultiGraph(n, std::move(e));
}

MultiGraph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return MultiGraph(n, std::move(e));
}

MultiGraph completeGraph(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return MultiGraph(n, std::move(e));
}

MultiGraph petersen() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});       // outer cycle
    for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});             // spokes
    for (int i = 0; i < 5; ++i) e.push_back({5 + i, 5 + (i + 2) % 5});  // pentagram
    return MultiGraph(10, std::move(e));
}

MultiGraph dodecahedron() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) e.push_back({i, (i + 1) % 5});  // outer pentagon
    for (int i = 0; i < 5; ++i) e.push_back({i, i + 5});        // outer spokes
    // middle 10-cycle alternating 5,10,6,11,7,12,8,13,9,14
    int mid[10] = {5, 10, 6, 11, 7, 12, 8, 13, 9, 14};
    for (int i = 0; i < 10; ++i) e.push_back({mid[i], mid[(i + 1) % 10]});
    for (int i = 0; i < 5; ++i) e.push_back({10 + i, 15 + i});  // inner spokes
    for (int i = 0; i < 5; ++i) e.push_back({15 + i, 15 + (i + 1) % 5});  // inner pentagon
    return MultiGraph(20, std::move(e));
}

}  // namespace

std::optional<MultiGraph> named(const std::string& name) {
    auto prefixed = [&](const std::string& p) -> std::optional<int> {
        if (name.rfind(p, 0) != 0) return std::nullopt;
        try {
            std::size_t pos = 0;
            int v = std::stoi(name.substr(p.size()), &pos);
            if (pos != name.size() - p.size() || v < 1 || v > 1000) return std::nullopt;
            return v;
        } catch (...) {
            return std::nullopt;
        }
    };
    if (auto n = prefixed("path_")) return path(*n);
    if (auto n = prefixed("cycle_")) {
        if (*n < 3) return std::nullopt;
        return cycle(*n);
    }
    if (name == "K4") return completeGraph(4);
    if (name == "Petersen") return petersen();
    if (name == "dodecahedron") return dodecahedron();
    return std::nullopt;
}

MultiGraph random_multigraph(int n, int m, std::uint64_t seed) {
    if (n < 2) throw Error("random_multigraph: need at least 2 vertices");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<Edge> e;
    e.reserve(m);
    while (static_cast<int>(e.size()) < m) {
        int u = pick(rng), v = pick(rng);
        if (u == v) continue;
        e.push_back({std::min(u, v), std::max(u, v)});
    }
    return MultiGraph(n, std::move(e));
}

GenerateResult generate_sparse(int n, int m, int k, int d, std::uint64_t seed, int budget) {
    GenerateResult res;
    for (int attempt = 0; attempt < budget; ++attempt) {
        res.attempts = attempt + 1;
        MultiGraph g = random_multigraph(n, m, seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL);
        if (!g.connected()) continue;
        if (sparsity::min_beta_subgraph(g, k, d).minBeta < 0) continue;
        if (sparsity::find_overfull(g, k + 1)) continue;
        res.ok = true;
        res.graph = std::move(g);
        return res;
    }
    return res;
}

}  // namespace arbor::instances
