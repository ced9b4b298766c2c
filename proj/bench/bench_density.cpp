// Compares the parallel pruned density scanner against the serial reference
// on growing random instances, and times the engine against the complete
// search where both apply.

#include <chrono>
#include <iostream>

#include "arbor/engine.hpp"
#include "arbor/instances.hpp"
#include "arbor/oracle.hpp"
#include "arbor/sparsity.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (no OpenMP)\n";
#endif
    std::cout << "-- density scan: parallel module vs serial reference --\n";
    for (int n = 10; n <= 20; n += 2) {
        int m = 2 * n;
        arbor::MultiGraph g = arbor::instances::random_multigraph(n, m, 0xbeef + n);
        auto t0 = std::chrono::steady_clock::now();
        auto rep = arbor::sparsity::min_beta_subgraph(g, 1, 3);
        auto gamma = arbor::sparsity::fractional_arboricity(g);
        auto t1 = std::chrono::steady_clock::now();
        auto ref = arbor::oracle::exhaustive_density_scan(g, 1, 3);
        auto t2 = std::chrono::steady_clock::now();
        bool agree = rep.minBeta == ref.minBeta && gamma.value == ref.gamma;
        std::cout << "n=" << n << " m=" << m << "  module " << seconds(t0, t1) << "s  reference "
                  << seconds(t1, t2) << "s  speedup x" << seconds(t1, t2) / seconds(t0, t1)
                  << (agree ? "" : "  MISMATCH") << "\n";
    }

    std::cout << "-- decomposition: engine vs complete search --\n";
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto gen = arbor::instances::generate_sparse(8, 11, 1, 3, seed);
        if (!gen.ok) continue;
        auto t0 = std::chrono::steady_clock::now();
        auto o = arbor::engine::run(gen.graph, 1, 3);
        auto t1 = std::chrono::steady_clock::now();
        auto v = arbor::oracle::brute_force_decompose(gen.graph, 1, 3);
        auto t2 = std::chrono::steady_clock::now();
        std::cout << "seed " << seed << "  engine "
                  << (o.status == arbor::engine::Outcome::Status::Valid ? "valid" : "other") << " "
                  << seconds(t0, t1) << "s  search " << (v.feasible ? "feasible" : "infeasible")
                  << " " << seconds(t1, t2) << "s (" << v.nodesExplored << " nodes)\n";
    }
    return 0;
}
