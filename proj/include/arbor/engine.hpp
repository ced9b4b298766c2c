#pragma once

#include <string>
#include <vector>

#include "arbor/graph.hpp"

namespace arbor::engine {

struct EngineOptions {
    int oracleThreshold = 10;    // brute-force fallback below this vertex count
    int compositeDepth = 3;      // generic exchange search depth
    bool debugAsserts = true;    // verify move contracts after every step
    unsigned long long stepCap = 200000;
};

struct Outcome {
    enum class Status { Valid, Overfull, Dense, Stuck };
    Status status = Status::Stuck;
    std::vector<std::vector<int>> forests;  // k+1 edge-id lists when Valid
    int boundedForestIndex = -1;            // class whose components stay within d
    std::vector<int> witnessVertices;
    long long witnessBeta = 0;  // beta of the witness for Dense outcomes
    unsigned long long movesApplied = 0;
    bool oracleFallbackUsed = false;
    std::vector<std::string> stuckDiagnostics;
};

// Decompose-or-refute: either k+1 forests with one forest's components
// bounded by d (verified), or a machine-checkable witness (an overfull vertex
// set or a beta-negative vertex set), or an honest stuck report. Disconnected
// inputs are solved per component.
Outcome run(const MultiGraph& g, int k, int d, const EngineOptions& opts = {});

std::string outcome_json(const Outcome& o);

// Reads either outcome JSON ({forests: [[...]]}) or a class assignment
// ({n, assignment: [...]}).
std::vector<std::vector<int>> forests_from_json(const std::string& text, int expectedClasses);

}  // namespace arbor::engine
