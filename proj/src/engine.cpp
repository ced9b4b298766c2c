#include "arbor/engine.hpp"

#include <algorithm>

#include "arbor/certify.hpp"
#include "arbor/decompose.hpp"
#include "arbor/moves.hpp"
#include "arbor/oracle.hpp"
#include "arbor/order.hpp"
#include "arbor/sparsity.hpp"
#include "arbor/state.hpp"
#include "json.hpp"

namespace arbor::engine {

namespace {

Outcome validOutcome(const MultiGraph& g, int k, const std::vector<int>& assignment,
                     int boundedClass, unsigned long long moves, bool fellBack) {
    Outcome o;
    o.status = Outcome::Status::Valid;
    o.forests.assign(k + 1, {});
    for (int eid = 0; eid < g.edgeCount(); ++eid) o.forests[assignment[eid]].push_back(eid);
    o.boundedForestIndex = boundedClass;
    o.movesApplied = moves;
    o.oracleFallbackUsed = fellBack;
    return o;
}

// Residual class choice for degraded states: least residue, then fewest
// edges, then lowest index.
int pickResidualClass(const MultiGraph& g, int k, int d, const std::vector<int>& assignment) {
    int best = -1;
    Residue bestR;
    int bestEdges = 0;
    for (int c = 0; c <= k; ++c) {
        Dsu dsu(g.vertexCount());
        std::vector<int> compEdges(g.vertexCount(), 0);
        for (int eid = 0; eid < g.edgeCount(); ++eid)
            if (assignment[eid] == c) dsu.unite(g.edge(eid).u, g.edge(eid).v);
        for (int eid = 0; eid < g.edgeCount(); ++eid)
            if (assignment[eid] == c) ++compEdges[dsu.find(g.edge(eid).u)];
        Residue r;
        r.d = d;
        std::vector<std::pair<int, int>> acc;
        for (int v = 0; v < g.vertexCount(); ++v)
            if (compEdges[v] > d) acc.push_back({compEdges[v], 1});
        std::sort(acc.begin(), acc.end(), std::greater<>());
        for (const auto& [sz, cnt] : acc) {
            if (!r.counts.empty() && r.counts.back().first == sz)
                r.counts.back().second += cnt;
            else
                r.counts.push_back({sz, cnt});
        }
        int edges = 0;
        for (int eid = 0; eid < g.edgeCount(); ++eid)
            if (assignment[eid] == c) ++edges;
        if (best == -1 || compare_residue(r, bestR) < 0 ||
            (compare_residue(r, bestR) == 0 && edges < bestEdges)) {
            best = c;
            bestR = r;
            bestEdges = edges;
        }
    }
    return best;
}

Outcome runComponent(const MultiGraph& g, int k, int d, const EngineOptions& opts) {
    Outcome out;
    if (g.vertexCount() <= 1 || g.edgeCount() == 0) {
        std::vector<int> assignment(g.edgeCount(), k);
        return validOutcome(g, k, assignment, k, 0, false);
    }

    auto fr = decompose::forest_decomposition(g, k + 1);
    if (std::holds_alternative<decompose::InfeasibleWitness>(fr)) {
        const auto& w = std::get<decompose::InfeasibleWitness>(fr);
        Subgraph h = induced_subgraph(g, w.vertices);
        if (h.edgeCount() <= static_cast<long long>(k + 1) * (h.vertexCount() - 1))
            throw InternalError("engine: overfull witness fails its own inequality");
        out.status = Outcome::Status::Overfull;
        out.witnessVertices = w.vertices;
        return out;
    }
    std::vector<int> assignment = std::get<decompose::ForestDecomposition>(fr).assignment;

    State s;
    auto refined = decompose::to_spanning_plus_residual(g, k);
    if (refined.ok) {
        s = make_state(g, k, d, refined.value.assignment, 0, true);
    } else {
        int residual = pickResidualClass(g, k, d, assignment);
        std::vector<int> relabel(k + 1);
        int next = 0;
        for (int c = 0; c <= k; ++c) relabel[c] = (c == residual) ? k : next++;
        std::vector<int> cls(assignment.size());
        for (std::size_t eid = 0; eid < assignment.size(); ++eid)
            cls[eid] = relabel[assignment[eid]];
        s = make_state(g, k, d, cls, 0, false);
        out.stuckDiagnostics.push_back("no refinement into k spanning trees (" + refined.reason +
                                       "); blue classes rooted per component");
    }

    unsigned long long moves = 0;
    bool retriedAfterCertificate = false;
    for (;;) {
        RedComps rc = red_components(s);
        RootChoice rt = select_root(s, rc);
        if (rt.alreadyDone) {
            auto rep = certify::verify(g, k, d, [&] {
                std::vector<std::vector<int>> f(k + 1);
                for (int eid = 0; eid < g.edgeCount(); ++eid) f[s.colour[eid]].push_back(eid);
                return f;
            }());
            if (!rep.pass) throw InternalError("engine: finished state fails verification");
            Outcome o = validOutcome(g, k, s.colour, k, moves, false);
            o.stuckDiagnostics = out.stuckDiagnostics;
            return o;
        }
        if (s.root != rt.r) {
            s.root = rt.r;
            for (int b = 0; b < k; ++b) s.reorientTree(b);
        }

        if (moves > opts.stepCap) throw InternalError("engine: step cap exceeded");
        RoundResult rr = move_round(s, opts.compositeDepth, opts.debugAsserts, false);
        if (rr.moved) {
            s = std::move(rr.next);
            ++moves;
            retriedAfterCertificate = false;
            continue;
        }

        // Stuck: try the density certificate first.
        certify::Certificate cert = certify::dense_witness(s);
        if (cert.ok) {
            Subgraph h = induced_subgraph(g, cert.witnessVertices);
            if (sparsity::beta(g, h, k, d) != cert.betaValue || cert.betaValue >= 0)
                throw InternalError("engine: dense witness failed revalidation");
            out.status = Outcome::Status::Dense;
            out.witnessVertices = cert.witnessVertices;
            out.witnessBeta = cert.betaValue;
            out.movesApplied = moves;
            return out;
        }
        if (!retriedAfterCertificate) {
            // One deeper search round after certificate diagnostics.
            retriedAfterCertificate = true;
            RoundResult rr2 = move_round(s, opts.compositeDepth + 1, opts.debugAsserts, true);
            if (rr2.moved) {
                s = std::move(rr2.next);
                ++moves;
                retriedAfterCertificate = false;
                continue;
            }
            out.stuckDiagnostics.insert(out.stuckDiagnostics.end(), rr2.diagnostics.begin(),
                                        rr2.diagnostics.end());
        }
        out.stuckDiagnostics.insert(out.stuckDiagnostics.end(), cert.diagnostics.begin(),
                                    cert.diagnostics.end());

        // Oracle fallback for small instances.
        if (g.vertexCount() <= opts.oracleThreshold) {
            oracle::OracleLimits lim;
            lim.maxVertices = opts.oracleThreshold;
            lim.maxEdges = 24;
            try {
                auto verdict = oracle::brute_force_decompose(g, k, d, lim);
                if (verdict.feasible) {
                    std::vector<int> cls(g.edgeCount(), -1);
                    for (int c = 0; c <= k; ++c)
                        for (int eid : (*verdict.forests)[c]) cls[eid] = c;
                    auto rep = certify::verify(g, k, d, *verdict.forests);
                    if (!rep.pass) throw InternalError("engine: oracle decomposition invalid");
                    Outcome o = validOutcome(g, k, cls, rep.boundedClass, moves, true);
                    o.stuckDiagnostics = out.stuckDiagnostics;
                    return o;
                }
                // No decomposition exists; the input must be refutable.
                auto mb = sparsity::min_beta_subgraph(g, k, d);
                if (mb.minBeta < 0) {
                    out.status = Outcome::Status::Dense;
                    out.witnessVertices = mb.witnessVertices;
                    out.witnessBeta = mb.minBeta;
                    out.movesApplied = moves;
                    return out;
                }
                if (auto of = sparsity::find_overfull(g, k + 1)) {
                    out.status = Outcome::Status::Overfull;
                    out.witnessVertices = *of;
                    out.movesApplied = moves;
                    return out;
                }
                throw InternalError("engine: sparse instance with no decomposition");
            } catch (const CapError& e) {
                out.stuckDiagnostics.push_back(std::string("oracle refused: ") + e.what());
            }
        }
        out.status = Outcome::Status::Stuck;
        out.movesApplied = moves;
        return out;
    }
}

}  // namespace

Outcome run(const MultiGraph& g, int k, int d, const EngineOptions& opts) {
    if (k < 1 || d < 1) throw Error("run: k and d must be positive");
    if (d > 2 * (k + 1)) throw Error("run: d must be at most 2(k+1)");

    auto comps = g.components();
    if (comps.size() <= 1) return runComponent(g, k, d, opts);

    Outcome merged;
    merged.status = Outcome::Status::Valid;
    merged.forests.assign(k + 1, {});
    merged.boundedForestIndex = k;
    for (const auto& compVerts : comps) {
        std::vector<int> vmap;
        MultiGraph sub = extract_graph(g, induced_subgraph(g, compVerts), &vmap);
        std::vector<int> emap;  // local edge id -> host edge id
        {
            Subgraph sg = induced_subgraph(g, compVerts);
            emap = sg.edges;
        }
        Outcome o = runComponent(sub, k, d, opts);
        merged.movesApplied += o.movesApplied;
        merged.oracleFallbackUsed = merged.oracleFallbackUsed || o.oracleFallbackUsed;
        for (const std::string& dgn : o.stuckDiagnostics)
            merged.stuckDiagnostics.push_back(dgn);
        if (o.status != Outcome::Status::Valid) {
            Outcome bad;
            bad.status = o.status;
            bad.movesApplied = merged.movesApplied;
            bad.oracleFallbackUsed = merged.oracleFallbackUsed;
            bad.stuckDiagnostics = merged.stuckDiagnostics;
            bad.witnessBeta = o.witnessBeta;
            for (int v : o.witnessVertices) bad.witnessVertices.push_back(vmap[v]);
            return bad;
        }
        // Rotate classes so the bounded class lands at slot k.
        for (int c = 0; c <= k; ++c) {
            int slot = c == o.boundedForestIndex ? k : (c < o.boundedForestIndex ? c : c - 1);
            for (int eid : o.forests[c]) merged.forests[slot].push_back(emap[eid]);
        }
    }
    for (auto& f : merged.forests) std::sort(f.begin(), f.end());
    return merged;
}

std::string outcome_json(const Outcome& o) {
    nlohmann::json j;
    switch (o.status) {
        case Outcome::Status::Valid: j["status"] = "valid"; break;
        case Outcome::Status::Overfull: j["status"] = "overfull_witness"; break;
        case Outcome::Status::Dense: j["status"] = "dense_witness"; break;
        case Outcome::Status::Stuck: j["status"] = "stuck"; break;
    }
    j["forests"] = o.forests;
    j["oversize_forest_index"] = o.boundedForestIndex;
    j["witness_vertices"] = o.witnessVertices;
    j["moves_applied"] = o.movesApplied;
    if (o.status == Outcome::Status::Stuck && !o.stuckDiagnostics.empty())
        j["stuck_diagnostics"] = o.stuckDiagnostics;
    return j.dump();
}

std::vector<std::vector<int>> forests_from_json(const std::string& text, int expectedClasses) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("forests")) return j.at("forests").get<std::vector<std::vector<int>>>();
    if (j.contains("assignment")) {
        int n = j.at("n").get<int>();
        if (expectedClasses > 0 && n != expectedClasses)
            throw Error("decomposition has " + std::to_string(n) + " classes, expected " +
                        std::to_string(expectedClasses));
        std::vector<int> assignment = j.at("assignment").get<std::vector<int>>();
        std::vector<std::vector<int>> forests(n);
        for (std::size_t eid = 0; eid < assignment.size(); ++eid) {
            int c = assignment[eid];
            if (c < 0 || c >= n) throw Error("class index out of range in assignment");
            forests[c].push_back(static_cast<int>(eid));
        }
        return forests;
    }
    throw Error("decomposition JSON needs either 'forests' or 'assignment'");
}

}  // namespace arbor::engine
