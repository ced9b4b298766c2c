#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbor/order.hpp"
#include "arbor/state.hpp"

namespace arbor {

// ---- primitive exchange ----------------------------------------------------
// Swap the blue arc (tail, parent_b(tail)) with a red edge.
struct ExchangeSpec {
    int tail = -1;
    int tree = -1;
    int redEdge = -1;
};

// Shared precondition: red set minus redEdge plus the arc's edge is a forest.
bool exchange_precondition(const State& s, const ExchangeSpec& x);
// Characterisation (a): tree stays spanning after the swap, red set a forest.
bool exchange_cond_swap_valid(const State& s, const ExchangeSpec& x);
// Characterisation (b): the arc lies on the unique cycle of tree + redEdge.
bool exchange_cond_on_cycle(const State& s, const ExchangeSpec& x);
// Characterisation (c): exactly one endpoint of redEdge descends from tail.
bool exchange_cond_descendant(const State& s, const ExchangeSpec& x);

// Performs the exchange: redEdge enters the tree oriented towards its
// non-descendant endpoint, the blue path from the descendant endpoint up to
// tail is reversed, and the arc's edge turns red. Throws MoveError when the
// preconditions fail.
void apply_exchange(State& s, const ExchangeSpec& x);

// ---- special paths ----------------------------------------------------------
struct SpecialPath {
    std::vector<int> verts;                  // v_0 .. v_l
    std::vector<std::pair<int, int>> steps;  // per arc: (edge id, tree)
    int vm1 = -1;                            // Aux parent of v_0
    int vm1Edge = -1;                        // red edge v_{-1} v_0
};

// Minimal special path ending with the blue arc identified by (tail x, tree
// b), with respect to the given order, or nullopt if none exists. Minimality:
// smallest start component index, then Aux-ancestor preference, then lowest
// start vertex id.
std::optional<SpecialPath> find_minimal_special_path(const State& s, const RedComps& rc,
                                                     const LegalOrder& lo, int x, int b);

// Applies the path augmentation: the last path edge turns red, the red edge
// v_{-1}v_0 turns blue, interior path edges shift one tree along the path,
// affected trees are re-rooted. With check set, the contract is verified:
// only the two edges change colour, (v_0, v_{-1}) is a blue arc afterwards,
// and arcs whose tail lies in a component before v_0's stay untouched.
void augment_special_path(State& s, const SpecialPath& p, const LegalOrder& lo, bool check);

// ---- relevant neighbours -----------------------------------------------------
struct RelNeighbour {
    int comp = -1;  // the neighbour component
    int x = -1;     // generator arc tail (in K)
    int xp = -1;    // generator arc head x'
    int tree = -1;
    int genEdge = -1;
    bool interesting = false;  // otherwise a small child
    int cx = 0;                // 0 iff the neighbour has no edges
    int xpp = -1;              // parent of x' in the tree (interesting only)
    int nxp = -1;              // unique red neighbour of x' (interesting only)
};

// All small children of K plus all interesting neighbours of K, each with its
// generator arc and derived data, in deterministic scan order.
std::vector<RelNeighbour> relevant_neighbours(const State& s, const RedComps& rc,
                                              const LegalOrder& lo, int K);

// Pre-exchange: for an interesting neighbour, swap the generator arc with the
// red edge x'n_{x'}; for a small child, a plain copy.
State make_tx(const State& s, const RelNeighbour& nb);
// (xbar, xbar') as it exists inside make_tx's result.
std::pair<int, int> bar_arc(const RelNeighbour& nb);

// ---- the two-neighbour dichotomy --------------------------------------------
struct PairCase {
    int kind = 0;  // 2 or 1
    // kind 2: red edge (u,v), v on y's side
    int u = -1, v = -1, uvEdge = -1;
    // kind 1: red edges (u,u') and (v',v)
    int u1 = -1, u1p = -1, uu1Edge = -1;
    int v1p = -1, v1 = -1, vv1Edge = -1;
};

// Classifies the red path from x to y inside K by descendant boundaries in
// the pre-exchanged state tx. Preconditions: y in V(K), y not a descendant of
// xbar in tx, and y's tree-parent differs from x'. Throws MoveError.
PairCase classify_pair(const State& s, const State& tx, const RedComps& rc,
                       const RelNeighbour& cx, int y);

// ---- one search round ---------------------------------------------------------
struct RoundResult {
    bool moved = false;
    State next;
    std::string label;
    std::vector<std::string> diagnostics;
};

// Tries the move catalogue in deterministic order and returns the first
// strictly improving state: root-component splits, plain special-path
// augmentations, the named composite exchanges for relevant-neighbour
// configurations, then a bounded generic exchange search. Every acceptance is
// verified by recomputing (residue, minimal order) on the candidate.
RoundResult move_round(const State& s, int compositeDepth, bool debugAsserts,
                       bool collectDiagnostics);

}  // namespace arbor
