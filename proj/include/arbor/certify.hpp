#pragma once

#include <map>
#include <string>
#include <vector>

#include "arbor/order.hpp"
#include "arbor/rational.hpp"
#include "arbor/state.hpp"

namespace arbor::certify {

struct VerifyReport {
    bool pass = false;
    int boundedClass = -1;  // lowest class whose components all have <= d edges
    std::vector<std::string> failures;
};

// Checks an edge partition: every edge in exactly one class, every class a
// forest, and some class with all components at most d edges.
VerifyReport verify(const MultiGraph& g, int k, int d,
                    const std::vector<std::vector<int>>& forests);

struct ComponentPartition {
    int rstar = -1;
    std::vector<int> big;    // neither R* nor small
    std::vector<int> small;  // at most one edge
};

ComponentPartition partition_components(const RedComps& rc, const LegalOrder& lo, int rstarComp);

struct SinkSequence {
    int tree = -1;
    std::vector<std::pair<int, int>> items;  // (component, chain vertex)
};

struct SinkResult {
    bool ok = true;
    std::vector<SinkSequence> seqs;
    std::vector<std::string> diagnostics;
};

// For every component that is bad for tree b (two relevant neighbours in b,
// one of them edgeless) and has a one-edge child in b: the chain of rerouting
// targets, following the inbound blue chain tails until a non-bad component
// receives the child. Diagnoses structural violations instead of failing.
SinkResult sink_sequences(const State& s, const RedComps& rc, const LegalOrder& lo, int b);

struct Assignment {
    bool ok = true;
    std::map<int, std::vector<int>> preimage;  // receiving comp -> small comps
    std::vector<std::string> diagnostics;
};

// Assigns every small component to a receiving big component: its order
// parent, except that a one-edge child of a bad parent is rerouted along the
// sink sequence. Verifies the receiving-side tallies: nothing assigned below
// d-1 edges, at most k one-edge children at exactly d-1, and q0 + q1 <= k
// with q0 zero-edge plus 2*q1 one-edge children at d or above.
Assignment build_assignment(const State& s, const RedComps& rc, const LegalOrder& lo);

struct DensityCheck {
    Rat value;
    bool pass = false;
};

// (e(K) + sum e(C)) / (v(K) + sum v(C)) compared against d/(d+k+1), exact.
DensityCheck density_check(int edgesK, int vertsK,
                           const std::vector<std::pair<int, int>>& assignees, int k, int d);

struct Certificate {
    bool ok = false;
    long long betaValue = 0;
    std::vector<int> witnessVertices;
    std::string json;  // {beta, witness_vertices, groups, checks}
    std::vector<std::string> diagnostics;
};

// Assembles the density certificate over the exploration subgraph of a stuck
// state: partition, sink sequences, assignment, per-group density checks and
// the exact beta < 0 conclusion. Any failed check yields diagnostics instead
// of a certificate.
Certificate dense_witness(const State& s);

}  // namespace arbor::certify
