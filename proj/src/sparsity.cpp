#include "arbor/sparsity.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace arbor::sparsity {

long long beta(long long vcount, long long ecount, int k, int d) {
    return static_cast<long long>(k + 1) * (k + d) * vcount -
           static_cast<long long>(k + d + 1) * ecount - static_cast<long long>(k) * k;
}

long long beta(const MultiGraph& g, int k, int d) {
    return beta(g.vertexCount(), g.edgeCount(), k, d);
}

long long beta(const MultiGraph& g, const Subgraph& s, int k, int d) {
    (void)g;
    return beta(s.vertexCount(), s.edgeCount(), k, d);
}

namespace {

using Mask = std::uint32_t;

// Lexicographic order on the sorted vertex lists of two equal-size masks:
// the lower differing bit decides, and it lies in the smaller list.
bool lexMaskLess(Mask a, Mask b) {
    Mask d = a ^ b;
    if (d == 0) return false;
    Mask low = d & (~d + 1);
    return (a & low) != 0;
}

// (size, lex) canonical order used for witness tie-breaking.
bool canonicalLess(Mask a, Mask b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return lexMaskLess(a, b);
}

struct ScanContext {
    int n = 0;
    std::vector<Mask> adj;                    // simple adjacency masks
    std::vector<std::pair<Mask, Mask>> edgeBits;  // one entry per edge (parallel kept)

    explicit ScanContext(const MultiGraph& g) : n(g.vertexCount()), adj(g.vertexCount(), 0) {
        for (const Edge& e : g.edges()) {
            adj[e.u] |= Mask(1) << e.v;
            adj[e.v] |= Mask(1) << e.u;
            edgeBits.emplace_back(Mask(1) << e.u, Mask(1) << e.v);
        }
    }

    int edgesInside(Mask m) const {
        int c = 0;
        for (const auto& [bu, bv] : edgeBits)
            if ((m & bu) && (m & bv)) ++c;
        return c;
    }

    bool connectedMask(Mask m) const {
        if (m == 0) return false;
        Mask reach = m & (~m + 1);
        for (;;) {
            Mask next = reach;
            Mask rest = reach;
            while (rest) {
                int v = __builtin_ctz(rest);
                rest &= rest - 1;
                next |= adj[v] & m;
            }
            if (next == reach) break;
            reach = next;
        }
        return reach == m;
    }
};

std::vector<int> maskVertices(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(__builtin_ctz(m));
        m &= m - 1;
    }
    return out;
}

void checkCap(const MultiGraph& g, int maxVertices, const char* what) {
    if (maxVertices > 26) maxVertices = 26;
    if (g.vertexCount() > maxVertices)
        throw CapError(std::string(what) + ": exhaustive scan refused for " +
                       std::to_string(g.vertexCount()) + " vertices (cap " +
                       std::to_string(maxVertices) + ")");
}

}  // namespace

// Below this vertex count a scan runs serially; spawning a thread team costs
// more than the whole enumeration.
constexpr int kParallelThreshold = 16;

BetaReport min_beta_subgraph(const MultiGraph& g, int k, int d, BetaSearch mode, int maxVertices) {
    checkCap(g, maxVertices, "min_beta_subgraph");
    BetaReport rep;
    rep.k = k;
    rep.d = d;
    if (g.vertexCount() == 0) {
        rep.minBeta = 0;  // vacuously sparse
        return rep;
    }
    ScanContext ctx(g);
    const Mask total = Mask(1) << g.vertexCount();
    long long bestBeta = 0;
    Mask bestMask = 0;
    bool haveBest = false;

    auto consider = [&](Mask m, long long& locBeta, Mask& locMask, bool& locHave) {
        if (mode == BetaSearch::ConnectedOnly && !ctx.connectedMask(m)) return;
        long long b = beta(__builtin_popcount(m), ctx.edgesInside(m), k, d);
        if (!locHave || b < locBeta || (b == locBeta && canonicalLess(m, locMask))) {
            locBeta = b;
            locMask = m;
            locHave = true;
        }
    };
    auto merge = [&](long long locBeta, Mask locMask, bool locHave) {
        if (locHave && (!haveBest || locBeta < bestBeta ||
                        (locBeta == bestBeta && canonicalLess(locMask, bestMask)))) {
            bestBeta = locBeta;
            bestMask = locMask;
            haveBest = true;
        }
    };

    if (g.vertexCount() < kParallelThreshold) {
        for (Mask m = 1; m < total; ++m) consider(m, bestBeta, bestMask, haveBest);
    } else {
#pragma omp parallel
        {
            long long locBeta = 0;
            Mask locMask = 0;
            bool locHave = false;
#pragma omp for schedule(static)
            for (long long mi = 1; mi < static_cast<long long>(total); ++mi)
                consider(static_cast<Mask>(mi), locBeta, locMask, locHave);
#pragma omp critical
            merge(locBeta, locMask, locHave);
        }
    }
    rep.minBeta = bestBeta;
    rep.witnessVertices = maskVertices(bestMask);
    return rep;
}

DensityReport fractional_arboricity(const MultiGraph& g, int maxVertices) {
    if (g.vertexCount() < 2) throw Error("fractional_arboricity: needs at least 2 vertices");
    checkCap(g, maxVertices, "fractional_arboricity");
    ScanContext ctx(g);
    const Mask total = Mask(1) << g.vertexCount();
    Rat best(0);
    Mask bestMask = 0;
    bool haveBest = false;

    auto consider = [&](Mask m, Rat& locVal, Mask& locMask, bool& locHave) {
        int vc = __builtin_popcount(m);
        if (vc < 2) return;
        if (!ctx.connectedMask(m)) return;
        Rat val(ctx.edgesInside(m), vc - 1);
        if (!locHave || locVal < val || (val == locVal && canonicalLess(m, locMask))) {
            locVal = val;
            locMask = m;
            locHave = true;
        }
    };
    auto merge = [&](const Rat& locVal, Mask locMask, bool locHave) {
        if (locHave && (!haveBest || best < locVal ||
                        (locVal == best && canonicalLess(locMask, bestMask)))) {
            best = locVal;
            bestMask = locMask;
            haveBest = true;
        }
    };

    if (g.vertexCount() < kParallelThreshold) {
        for (Mask m = 1; m < total; ++m) consider(m, best, bestMask, haveBest);
    } else {
#pragma omp parallel
        {
            Rat locVal(0);
            Mask locMask = 0;
            bool locHave = false;
#pragma omp for schedule(static)
            for (long long mi = 1; mi < static_cast<long long>(total); ++mi)
                consider(static_cast<Mask>(mi), locVal, locMask, locHave);
#pragma omp critical
            merge(locVal, locMask, locHave);
        }
    }
    DensityReport rep;
    rep.value = best;
    rep.witnessVertices = maskVertices(bestMask);
    rep.witnessVertexCount = static_cast<int>(rep.witnessVertices.size());
    rep.witnessEdges = ctx.edgesInside(bestMask);
    return rep;
}

std::optional<std::vector<int>> find_overfull(const MultiGraph& g, int n, int maxVertices) {
    checkCap(g, maxVertices, "find_overfull");
    if (g.vertexCount() == 0) return std::nullopt;
    ScanContext ctx(g);
    const Mask total = Mask(1) << g.vertexCount();
    Mask bestMask = 0;
    bool haveBest = false;

    auto consider = [&](Mask m, Mask& locMask, bool& locHave) {
        // Overfull sets exist iff a connected one does.
        if (!ctx.connectedMask(m)) return;
        int vc = __builtin_popcount(m);
        long long ec = ctx.edgesInside(m);
        if (ec > static_cast<long long>(n) * (vc - 1)) {
            if (!locHave || canonicalLess(m, locMask)) {
                locMask = m;
                locHave = true;
            }
        }
    };

    if (g.vertexCount() < kParallelThreshold) {
        for (Mask m = 1; m < total; ++m) consider(m, bestMask, haveBest);
    } else {
#pragma omp parallel
        {
            Mask locMask = 0;
            bool locHave = false;
#pragma omp for schedule(static)
            for (long long mi = 1; mi < static_cast<long long>(total); ++mi)
                consider(static_cast<Mask>(mi), locMask, locHave);
#pragma omp critical
            {
                if (locHave && (!haveBest || canonicalLess(locMask, bestMask))) {
                    bestMask = locMask;
                    haveBest = true;
                }
            }
        }
    }
    if (!haveBest) return std::nullopt;
    return maskVertices(bestMask);
}

std::string report_json(const std::string& kind, const Rat& value,
                        const std::vector<int>& witnessVertices) {
    std::ostringstream out;
    out << "{\"kind\":\"" << kind << "\",\"value_num\":" << value.num
        << ",\"value_den\":" << value.den << ",\"witness_vertices\":[";
    for (std::size_t i = 0; i < witnessVertices.size(); ++i) {
        if (i) out << ",";
        out << witnessVertices[i];
    }
    out << "]}";
    return out.str();
}

}  // namespace arbor::sparsity
