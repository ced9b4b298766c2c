#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arbor/certify.hpp"
#include "arbor/engine.hpp"
#include "arbor/instances.hpp"
#include "arbor/oracle.hpp"
#include "arbor/sparsity.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitParse = 2;
constexpr int kExitWitness = 3;
constexpr int kExitStuck = 4;
constexpr int kExitRefused = 5;
constexpr int kExitBudget = 6;

arbor::MultiGraph loadGraph(const std::string& spec) {
    if (auto g = arbor::instances::named(spec)) return *g;
    std::ifstream in(spec);
    if (!in) throw arbor::Error("cannot open graph file or unknown named instance: " + spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    return arbor::MultiGraph::parse(buf.str());
}

void writeOrPrint(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(path);
        out << text << "\n";
    }
}

int cmdAnalyze(const std::string& graphSpec, int k, int d) {
    arbor::MultiGraph g = loadGraph(graphSpec);
    if (g.vertexCount() >= 2) {
        auto gamma = arbor::sparsity::fractional_arboricity(g);
        std::cout << "gamma = " << gamma.value.str() << "  (witness "
                  << gamma.witnessEdges << " edges on " << gamma.witnessVertexCount
                  << " vertices)\n";
        std::cout << arbor::sparsity::report_json("fractional_arboricity", gamma.value,
                                                  gamma.witnessVertices)
                  << "\n";
    } else {
        std::cout << "gamma undefined (fewer than 2 vertices)\n";
    }
    auto beta = arbor::sparsity::min_beta_subgraph(g, k, d);
    std::cout << "min beta = " << beta.minBeta << "  -> " << (beta.minBeta >= 0 ? "" : "NOT ")
              << "(" << k << "," << d << ")-sparse\n";
    std::cout << arbor::sparsity::report_json("min_beta", arbor::Rat(beta.minBeta),
                                              beta.witnessVertices)
              << "\n";
    auto overfull = arbor::sparsity::find_overfull(g, k + 1);
    if (overfull) {
        std::cout << "(" << (k + 1) << ")-overfull subgraph: yes\n";
        std::cout << arbor::sparsity::report_json("overfull", arbor::Rat(k + 1), *overfull)
                  << "\n";
    } else {
        std::cout << "(" << (k + 1) << ")-overfull subgraph: none\n";
    }
    return 0;
}

int cmdDecompose(const std::string& graphSpec, int k, int d, const std::string& jsonOut,
                 const arbor::engine::EngineOptions& opts) {
    arbor::MultiGraph g = loadGraph(graphSpec);
    arbor::engine::Outcome o = arbor::engine::run(g, k, d, opts);
    writeOrPrint(jsonOut, arbor::engine::outcome_json(o));
    using Status = arbor::engine::Outcome::Status;
    switch (o.status) {
        case Status::Valid: {
            auto rep = arbor::certify::verify(g, k, d, o.forests);
            if (!rep.pass) throw arbor::InternalError("decompose produced an invalid partition");
            std::cerr << "valid decomposition (" << o.movesApplied << " moves"
                      << (o.oracleFallbackUsed ? ", oracle fallback" : "") << ")\n";
            return 0;
        }
        case Status::Overfull:
            std::cerr << "refuted: (k+1)-overfull subgraph found\n";
            return kExitWitness;
        case Status::Dense:
            std::cerr << "refuted: beta-negative subgraph found (beta = " << o.witnessBeta
                      << ")\n";
            return kExitWitness;
        case Status::Stuck:
            std::cerr << "stuck: no move found and no certificate assembled\n";
            return kExitStuck;
    }
    return kExitStuck;
}

int cmdVerify(const std::string& graphSpec, const std::string& decompPath, int k, int d) {
    arbor::MultiGraph g = loadGraph(graphSpec);
    std::ifstream in(decompPath);
    if (!in) throw arbor::Error("cannot open decomposition file: " + decompPath);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto forests = arbor::engine::forests_from_json(buf.str(), k + 1);
    auto rep = arbor::certify::verify(g, k, d, forests);
    if (rep.pass) {
        std::cout << "pass (bounded class " << rep.boundedClass << ")\n";
        return 0;
    }
    std::cout << "fail\n";
    for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
    return 1;
}

int cmdOracle(const std::string& graphSpec, int k, int d) {
    arbor::MultiGraph g = loadGraph(graphSpec);
    auto verdict = arbor::oracle::brute_force_decompose(g, k, d);
    std::cout << (verdict.feasible ? "feasible" : "infeasible") << " (nodes "
              << verdict.nodesExplored << ")\n";
    if (verdict.feasible) {
        auto rep = arbor::certify::verify(g, k, d, *verdict.forests);
        if (!rep.pass) throw arbor::InternalError("oracle produced an invalid partition");
        for (int c = 0; c <= k; ++c) {
            std::cout << "class " << c << ":";
            for (int eid : (*verdict.forests)[c]) std::cout << " " << eid;
            std::cout << "\n";
        }
        return 0;
    }
    return kExitWitness;
}

int cmdGenerate(int n, int m, int k, int d, std::uint64_t seed, int budget) {
    auto res = arbor::instances::generate_sparse(n, m, k, d, seed, budget);
    if (!res.ok) {
        std::cerr << "generation budget exhausted after " << res.attempts << " attempts\n";
        return kExitBudget;
    }
    std::cout << res.graph.serialize();
    std::cerr << "# accepted after " << res.attempts << " attempts\n";
    return 0;
}

int cmdFuzz(int count, int n, int m, int k, int d, std::uint64_t seed,
            const arbor::engine::EngineOptions& opts) {
    int valid = 0, witness = 0, stuck = 0;
    std::vector<std::string> failures;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < count; ++i) {
        arbor::MultiGraph g =
            arbor::instances::random_multigraph(n, m, seed + static_cast<std::uint64_t>(i));
        arbor::engine::Outcome o;
        try {
            o = arbor::engine::run(g, k, d, opts);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
            failures.push_back(std::string("instance ") + std::to_string(i) + ": " + e.what());
            continue;
        }
        using Status = arbor::engine::Outcome::Status;
        bool bad = false;
        if (o.status == Status::Valid) {
            auto rep = arbor::certify::verify(g, k, d, o.forests);
            if (!rep.pass) bad = true;
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            if (bad)
                failures.push_back("instance " + std::to_string(i) + ": invalid decomposition");
            else if (o.status == Status::Valid)
                ++valid;
            else if (o.status == Status::Stuck)
                ++stuck;
            else
                ++witness;
        }
    }
    std::cout << "fuzz: " << valid << " valid, " << witness << " refuted, " << stuck
              << " stuck of " << count << "\n";
    for (const auto& f : failures) std::cout << "FAIL " << f << "\n";
    return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forest decompositions with one bounded-component class, or refutations"};
    app.require_subcommand(1);

    std::string graphSpec, decompPath, jsonOut;
    int k = 1, d = 3;
    int n = 7, m = 10, count = 100, budget = 1000;
    std::uint64_t seed = 1;
    arbor::engine::EngineOptions opts;

    auto addKD = [&](CLI::App* cmd) {
        cmd->add_option("--k", k, "number of unrestricted forest classes")->check(CLI::Range(1, 8));
        cmd->add_option("--d", d, "component edge bound for the last class")
            ->check(CLI::Range(1, 64));
    };
    auto addEngineFlags = [&](CLI::App* cmd) {
        cmd->add_option("--oracle-threshold", opts.oracleThreshold,
                        "exhaustive fallback below this vertex count");
        cmd->add_option("--composite-depth", opts.compositeDepth,
                        "generic exchange search depth");
        cmd->add_flag("--debug-asserts,!--no-debug-asserts", opts.debugAsserts,
                      "per-move contract verification (default on)");
    };

    auto* analyze = app.add_subcommand("analyze", "density and sparseness report");
    analyze->add_option("graph", graphSpec)->required();
    addKD(analyze);

    auto* dec = app.add_subcommand("decompose", "decompose or refute");
    dec->add_option("graph", graphSpec)->required();
    addKD(dec);
    dec->add_option("--json", jsonOut, "write the outcome JSON here");
    addEngineFlags(dec);

    auto* ver = app.add_subcommand("verify", "check a decomposition file");
    ver->add_option("graph", graphSpec)->required();
    ver->add_option("decomposition", decompPath)->required();
    addKD(ver);

    auto* orc = app.add_subcommand("oracle", "complete search on a small instance");
    orc->add_option("graph", graphSpec)->required();
    addKD(orc);

    auto* gen = app.add_subcommand("generate", "random instance accepted by analyze");
    gen->add_option("--n", n)->required();
    gen->add_option("--m", m)->required();
    addKD(gen);
    gen->add_option("--seed", seed);
    gen->add_option("--budget", budget);

    auto* fuzz = app.add_subcommand("fuzz", "batch random instances through the engine");
    fuzz->add_option("--count", count);
    fuzz->add_option("--n", n);
    fuzz->add_option("--m", m);
    addKD(fuzz);
    fuzz->add_option("--seed", seed);
    addEngineFlags(fuzz);

    CLI11_PARSE(app, argc, argv);

    if (d > 2 * (k + 1)) {
        std::cerr << "error: d must be at most 2(k+1)\n";
        return kExitParse;
    }

    try {
        if (app.got_subcommand(analyze)) return cmdAnalyze(graphSpec, k, d);
        if (app.got_subcommand(dec)) return cmdDecompose(graphSpec, k, d, jsonOut, opts);
        if (app.got_subcommand(ver)) return cmdVerify(graphSpec, decompPath, k, d);
        if (app.got_subcommand(orc)) return cmdOracle(graphSpec, k, d);
        if (app.got_subcommand(gen)) return cmdGenerate(n, m, k, d, seed, budget);
        if (app.got_subcommand(fuzz)) return cmdFuzz(count, n, m, k, d, seed, opts);
    } catch (const arbor::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const arbor::CapError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
