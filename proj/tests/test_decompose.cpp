#include "arbor/decompose.hpp"

#include "arbor/instances.hpp"
#include "arbor/sparsity.hpp"
#include "doctest.h"

using namespace arbor;
namespace dc = arbor::decompose;

namespace {

bool classesAreForests(const MultiGraph& g, const std::vector<int>& assignment, int n) {
    for (int c = 0; c < n; ++c) {
        std::vector<int> eids;
        for (int eid = 0; eid < g.edgeCount(); ++eid)
            if (assignment[eid] == c) eids.push_back(eid);
        if (!is_forest(g, eids)) return false;
    }
    for (int a : assignment)
        if (a < 0 || a >= n) return false;
    return true;
}

}  // namespace

TEST_CASE("a path is a single forest") {
    MultiGraph g = *instances::named("path_3");
    auto r = dc::forest_decomposition(g, 1);
    REQUIRE(std::holds_alternative<dc::ForestDecomposition>(r));
    auto fd = std::get<dc::ForestDecomposition>(r);
    CHECK(classesAreForests(g, fd.assignment, 1));
}

TEST_CASE("a triangle is not one forest; witness is 1-overfull") {
    MultiGraph g = MultiGraph::parse("0 1\n1 2\n2 0");
    auto r = dc::forest_decomposition(g, 1);
    REQUIRE(std::holds_alternative<dc::InfeasibleWitness>(r));
    auto w = std::get<dc::InfeasibleWitness>(r);
    Subgraph h = induced_subgraph(g, w.vertices);
    CHECK(h.edgeCount() > 1 * (h.vertexCount() - 1));
}

TEST_CASE("K4 splits into two spanning trees") {
    MultiGraph g = *instances::named("K4");
    auto r = dc::forest_decomposition(g, 2);
    REQUIRE(std::holds_alternative<dc::ForestDecomposition>(r));
    auto fd = std::get<dc::ForestDecomposition>(r);
    CHECK(classesAreForests(g, fd.assignment, 2));
    int c0 = 0;
    for (int a : fd.assignment) c0 += a == 0 ? 1 : 0;
    CHECK(c0 == 3);  // both classes spanning trees of K4
}

TEST_CASE("feasibility agrees with the overfull test") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        MultiGraph g = instances::random_multigraph(6, 3 + static_cast<int>(seed % 9), seed);
        for (int n = 1; n <= 3; ++n) {
            auto r = dc::forest_decomposition(g, n);
            bool feasible = std::holds_alternative<dc::ForestDecomposition>(r);
            CHECK(feasible == !sparsity::find_overfull(g, n).has_value());
            if (feasible)
                CHECK(classesAreForests(g, std::get<dc::ForestDecomposition>(r).assignment, n));
        }
    }
}

TEST_CASE("refinement on a tree: the tree itself plus an empty residual") {
    MultiGraph g = *instances::named("path_5");
    auto r = dc::to_spanning_plus_residual(g, 1);
    REQUIRE(r.ok);
    for (int eid = 0; eid < g.edgeCount(); ++eid) CHECK(r.value.assignment[eid] == 0);
}

TEST_CASE("triangle cannot host two spanning trees") {
    MultiGraph g = MultiGraph::parse("0 1\n1 2\n2 0");
    auto r = dc::to_spanning_plus_residual(g, 2);
    CHECK(!r.ok);
}

TEST_CASE("K4 refines into a spanning tree plus a three edge forest") {
    MultiGraph g = *instances::named("K4");
    auto r = dc::to_spanning_plus_residual(g, 1);
    REQUIRE(r.ok);
    int tree = 0, residual = 0;
    for (int eid = 0; eid < g.edgeCount(); ++eid)
        r.value.assignment[eid] == 0 ? ++tree : ++residual;
    CHECK(tree == 3);
    CHECK(residual == 3);
    std::vector<int> treeEdges, resEdges;
    for (int eid = 0; eid < g.edgeCount(); ++eid)
        (r.value.assignment[eid] == 0 ? treeEdges : resEdges).push_back(eid);
    CHECK(is_forest(g, treeEdges));
    CHECK(is_forest(g, resEdges));
}

TEST_CASE("refinement is refused on disconnected graphs") {
    MultiGraph g = MultiGraph::parse("0 1\n2 3");
    CHECK_THROWS_AS(dc::to_spanning_plus_residual(g, 1), Error);
}

TEST_CASE("refinement across random connected instances") {
    int refined = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        MultiGraph g = instances::random_multigraph(7, 9 + static_cast<int>(seed % 6), 77 + seed);
        if (!g.connected()) continue;
        if (sparsity::find_overfull(g, 2).has_value()) continue;
        auto r = dc::to_spanning_plus_residual(g, 1);
        if (!r.ok) continue;  // honest refusal is allowed
        ++refined;
        CHECK(classesAreForests(g, r.value.assignment, 2));
        int tree = 0;
        for (int eid = 0; eid < g.edgeCount(); ++eid)
            if (r.value.assignment[eid] == 0) ++tree;
        CHECK(tree == g.vertexCount() - 1);
    }
    CHECK(refined > 10);
}

TEST_CASE("decomposition json round trip") {
    dc::ForestDecomposition fd;
    fd.n = 2;
    fd.assignment = {0, 1, 1, 0};
    auto back = dc::decomposition_from_json(dc::decomposition_json(fd));
    CHECK(back.n == fd.n);
    CHECK(back.assignment == fd.assignment);
}
