#include "arbor/moves.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

namespace arbor {

// ---------------------------------------------------------------- exchange --

bool exchange_precondition(const State& s, const ExchangeSpec& x) {
    if (x.tail < 0 || x.tail >= s.n() || x.tree < 0 || x.tree >= s.k) return false;
    if (s.parentEdge[x.tree][x.tail] == -1) return false;
    if (x.redEdge < 0 || x.redEdge >= s.m() || s.colour[x.redEdge] != s.k) return false;
    int arcEdge = s.parentEdge[x.tree][x.tail];
    const MultiGraph& g = *s.g;
    Dsu dsu(s.n());
    for (int eid = 0; eid < s.m(); ++eid)
        if (s.colour[eid] == s.k && eid != x.redEdge) dsu.unite(g.edge(eid).u, g.edge(eid).v);
    return dsu.find(g.edge(arcEdge).u) != dsu.find(g.edge(arcEdge).v);
}

bool exchange_cond_swap_valid(const State& s, const ExchangeSpec& x) {
    if (!exchange_precondition(s, x)) return false;
    const MultiGraph& g = *s.g;
    int arcEdge = s.parentEdge[x.tree][x.tail];
    // tree minus arc edge plus red edge: still a forest with as many edges
    Dsu dsu(s.n());
    int edges = 0;
    for (int eid = 0; eid < s.m(); ++eid) {
        int use = -1;
        if (s.colour[eid] == x.tree && eid != arcEdge) use = eid;
        if (eid == x.redEdge) use = eid;
        if (use == -1) continue;
        ++edges;
        if (!dsu.unite(g.edge(use).u, g.edge(use).v)) return false;
    }
    if (s.spanningMode) return edges == s.n() - 1;
    return true;
}

bool exchange_cond_on_cycle(const State& s, const ExchangeSpec& x) {
    if (x.tail < 0 || s.parentEdge[x.tree][x.tail] == -1) return false;
    int arcEdge = s.parentEdge[x.tree][x.tail];
    std::vector<int> treeEdges;
    for (int eid = 0; eid < s.m(); ++eid)
        if (s.colour[eid] == x.tree) treeEdges.push_back(eid);
    const Edge& re = s.g->edge(x.redEdge);
    auto path = forest_path(*s.g, treeEdges, re.u, re.v);
    if (!path) return false;
    return std::find(path->begin(), path->end(), arcEdge) != path->end();
}

bool exchange_cond_descendant(const State& s, const ExchangeSpec& x) {
    if (x.tail < 0 || x.tree < 0 || x.tree >= s.k || s.parentEdge[x.tree][x.tail] == -1)
        return false;
    const Edge& re = s.g->edge(x.redEdge);
    bool du = s.isDescendant(x.tree, re.u, x.tail);
    bool dv = s.isDescendant(x.tree, re.v, x.tail);
    return du != dv;
}

void apply_exchange(State& s, const ExchangeSpec& x) {
    if (!exchange_precondition(s, x))
        throw MoveError("exchange rejected: red set would not remain a forest");
    if (!exchange_cond_descendant(s, x))
        throw MoveError("exchange rejected: descendant condition fails");
    const MultiGraph& g = *s.g;
    const int b = x.tree;
    const int u = x.tail;
    const int arcEdge = s.parentEdge[b][u];
    const Edge& re = g.edge(x.redEdge);
    int v = re.u, vp = re.v;
    if (!s.isDescendant(b, v, u)) std::swap(v, vp);

    // Collect the blue path v -> u before mutating.
    std::vector<std::pair<int, int>> chain;  // (vertex, its parent edge)
    for (int cur = v; cur != u;) {
        chain.push_back({cur, s.parentEdge[b][cur]});
        cur = s.parentVert[b][cur];
    }
    s.colour[arcEdge] = s.k;
    s.colour[x.redEdge] = b;
    // Reverse the path: former parents now point at their former children.
    for (const auto& [w, e] : chain) {
        int pw = g.edge(e).other(w);
        s.parentEdge[b][pw] = e;
        s.parentVert[b][pw] = w;
    }
    s.parentEdge[b][v] = x.redEdge;
    s.parentVert[b][v] = vp;
}

// ------------------------------------------------------------ special paths --

std::optional<SpecialPath> find_minimal_special_path(const State& s, const RedComps& rc,
                                                     const LegalOrder& lo, int x, int b) {
    const MultiGraph& g = *s.g;
    if (x < 0 || b < 0 || b >= s.k) return std::nullopt;
    int y = s.parentVert[b][x];
    if (y == -1 || !lo.inH[x] || !lo.inH[y]) return std::nullopt;
    if (rc.compOfVertex[x] == rc.compOfVertex[y]) return std::nullopt;

    // Reverse reachability to x over blue arcs inside H, avoiding y.
    struct Hop {
        int next = -1, edge = -1, tree = -1;
    };
    std::vector<Hop> hop(g.vertexCount());
    std::vector<char> reached(g.vertexCount(), 0);
    std::vector<std::vector<std::tuple<int, int, int>>> preds(g.vertexCount());
    for (int v = 0; v < g.vertexCount(); ++v) {
        if (!lo.inH[v] || v == y) continue;
        for (int bb = 0; bb < s.k; ++bb) {
            int p = s.parentVert[bb][v];
            if (p == -1 || p == y) continue;
            preds[p].emplace_back(v, bb, s.parentEdge[bb][v]);
        }
    }
    std::queue<int> q;
    q.push(x);
    reached[x] = 1;
    while (!q.empty()) {
        int p = q.front();
        q.pop();
        for (const auto& [v, bb, e] : preds[p])
            if (!reached[v]) {
                reached[v] = 1;
                hop[v] = {p, e, bb};
                q.push(v);
            }
    }

    const int iY = lo.iSigma(y);
    std::vector<int> cand;
    int bestI = INT_MAX;
    for (int w = 0; w < g.vertexCount(); ++w) {
        if (!reached[w]) continue;
        int iw = lo.iSigma(w);
        if (iw >= iY) continue;
        if (rc.compOfVertex[w] == rc.compOfVertex[x] && !lo.auxAncestor(w, x)) continue;
        if (lo.auxParentV[w] == -1) continue;
        if (s.colour[lo.auxParentE[w]] != s.k) continue;  // Aux parent edge must be red
        cand.push_back(w);
        bestI = std::min(bestI, iw);
    }
    if (cand.empty()) return std::nullopt;
    std::vector<int> front;
    for (int w : cand)
        if (lo.iSigma(w) == bestI) front.push_back(w);
    // Keep starts with no other candidate as a proper Aux ancestor.
    int start = -1;
    for (int w : front) {
        bool dominated = false;
        for (int w2 : front)
            if (w2 != w && lo.auxAncestor(w2, w)) dominated = true;
        if (!dominated && (start == -1 || w < start)) start = w;
    }
    if (start == -1) return std::nullopt;

    SpecialPath p;
    p.vm1 = lo.auxParentV[start];
    p.vm1Edge = lo.auxParentE[start];
    for (int cur = start; cur != x;) {
        p.verts.push_back(cur);
        p.steps.emplace_back(hop[cur].edge, hop[cur].tree);
        cur = hop[cur].next;
    }
    p.verts.push_back(x);
    p.steps.emplace_back(s.parentEdge[b][x], b);
    p.verts.push_back(y);
    return p;
}

void augment_special_path(State& s, const SpecialPath& p, const LegalOrder& lo, bool check) {
    const std::size_t l = p.steps.size();
    if (l == 0 || p.verts.size() != l + 1) throw MoveError("augment: malformed path");
    if (p.vm1Edge < 0 || s.colour[p.vm1Edge] != s.k)
        throw MoveError("augment: v_{-1} v_0 is not a red edge");
    const int i0 = lo.iSigma(p.verts[0]);

    std::vector<int> colourBefore;
    std::vector<std::tuple<int, int, int, int>> prefixArcs;  // (b, v, pv, pe)
    if (check) {
        colourBefore = s.colour;
        for (int b = 0; b < s.k; ++b)
            for (int v = 0; v < s.n(); ++v)
                if (s.parentEdge[b][v] != -1 && lo.iSigma(v) < i0)
                    prefixArcs.emplace_back(b, v, s.parentVert[b][v], s.parentEdge[b][v]);
    }

    // Interior path edges shift one tree along the path, the last edge turns
    // red, and the freed red edge enters the first tree.
    for (std::size_t j = 0; j + 1 < l; ++j) s.colour[p.steps[j].first] = p.steps[j + 1].second;
    s.colour[p.steps[l - 1].first] = s.k;
    s.colour[p.vm1Edge] = p.steps[0].second;

    std::set<int> trees;
    for (const auto& [e, b] : p.steps) trees.insert(b);
    for (int b : trees) s.reorientTree(b);

    s.validate();
    if (check && s.spanningMode) {
        // Colour delta: exactly the last path edge turned red and v_{-1}v_0
        // turned blue.
        for (int eid = 0; eid < s.m(); ++eid) {
            bool wasRed = colourBefore[eid] == s.k;
            bool isRed = s.colour[eid] == s.k;
            if (wasRed != isRed && eid != p.steps[l - 1].first && eid != p.vm1Edge)
                throw InternalError("augment: unexpected colour change");
        }
        if (s.colour[p.steps[l - 1].first] != s.k || s.colour[p.vm1Edge] == s.k)
            throw InternalError("augment: prescribed recolouring failed");
        // (v_0, v_{-1}) must be a blue arc now.
        if (s.parentVert[p.steps[0].second][p.verts[0]] != p.vm1 ||
            s.parentEdge[p.steps[0].second][p.verts[0]] != p.vm1Edge)
            throw InternalError("augment: v_0 does not point at v_{-1}");
        // Arcs with tails in earlier components are untouched.
        for (const auto& [b, v, pv, pe] : prefixArcs)
            if (s.parentVert[b][v] != pv || s.parentEdge[b][v] != pe)
                throw InternalError("augment: prefix arc changed");
    }
}

// ------------------------------------------------------- relevant neighbours --

namespace {

int uniqueRedNeighbour(const State& s, int v, int* edgeOut) {
    int nb = -1, cnt = 0;
    for (int eid : s.g->incident(v))
        if (s.colour[eid] == s.k) {
            ++cnt;
            nb = s.g->edge(eid).other(v);
            if (edgeOut) *edgeOut = eid;
        }
    return cnt == 1 ? nb : -1;
}

int redEdgeBetween(const State& s, int a, int b) {
    for (int eid : s.g->incident(a))
        if (s.colour[eid] == s.k && s.g->edge(eid).other(a) == b) return eid;
    return -1;
}

}  // namespace

std::vector<RelNeighbour> relevant_neighbours(const State& s, const RedComps& rc,
                                              const LegalOrder& lo, int K) {
    std::vector<RelNeighbour> out;
    if (lo.posOfComp[K] == -1) return out;
    const int posK = lo.posOfComp[K];

    // Small children: components whose generator arc starts in K.
    for (std::size_t pos = 1; pos < lo.comps.size(); ++pos) {
        int c = lo.comps[pos];
        if (rc.edgeCount[c] > 1) continue;
        const GenArc& g = lo.gen[pos];
        if (rc.compOfVertex[g.tail] != K) continue;
        RelNeighbour nb;
        nb.comp = c;
        nb.x = g.tail;
        nb.xp = g.head;
        nb.tree = g.tree;
        nb.genEdge = g.edge;
        nb.interesting = false;
        nb.cx = rc.edgeCount[c] > 0 ? 1 : 0;
        out.push_back(nb);
    }

    // Interesting neighbours.
    for (int x : rc.verts[K]) {
        for (int b = 0; b < s.k; ++b) {
            int xp = s.parentVert[b][x];
            if (xp == -1 || xp == s.root) continue;
            int L = rc.compOfVertex[xp];
            if (L == K || lo.posOfComp[L] == -1) continue;
            int nxpEdge = -1;
            int nxp = uniqueRedNeighbour(s, xp, &nxpEdge);
            if (nxp == -1) continue;
            int xpp = s.parentVert[b][xp];
            if (xpp == -1) continue;
            int c2 = rc.compOfVertex[xpp];
            if (rc.edgeCount[c2] != 0 || lo.posOfComp[c2] == -1 || lo.posOfComp[c2] == 0)
                continue;
            if (rc.compOfVertex[lo.gen[lo.posOfComp[c2]].tail] != L) continue;  // child of L
            if (!s.isDescendant(b, nxp, x)) continue;  // blue path n_{x'} -> x
            RelNeighbour nb;
            nb.comp = L;
            nb.x = x;
            nb.xp = xp;
            nb.tree = b;
            nb.genEdge = s.parentEdge[b][x];
            nb.interesting = true;
            nb.cx = rc.edgeCount[L] > 0 ? 1 : 0;
            nb.xpp = xpp;
            nb.nxp = nxp;
            out.push_back(nb);
        }
    }
    (void)posK;
    return out;
}

State make_tx(const State& s, const RelNeighbour& nb) {
    State tx = s;
    if (nb.interesting) {
        int redEdge = redEdgeBetween(s, nb.xp, nb.nxp);
        if (redEdge == -1) throw MoveError("make_tx: missing red edge x' n_x'");
        apply_exchange(tx, {nb.x, nb.tree, redEdge});
    }
    return tx;
}

std::pair<int, int> bar_arc(const RelNeighbour& nb) {
    if (nb.interesting) return {nb.xp, nb.xpp};
    return {nb.x, nb.xp};
}

// --------------------------------------------------------------- classify --

PairCase classify_pair(const State& s, const State& tx, const RedComps& rc,
                       const RelNeighbour& cx, int y) {
    const int b = cx.tree;
    auto [xb, xbp] = bar_arc(cx);
    (void)xbp;
    const int K = rc.compOfVertex[cx.x];
    if (rc.compOfVertex[y] != K) throw MoveError("classify: y lies outside K");
    if (tx.isDescendant(b, y, xb)) throw MoveError("classify: y descends from xbar");
    int yp = tx.parentVert[b][y];
    if (yp == -1 || yp == cx.xp) throw MoveError("classify: y' missing or equal to x'");

    auto pathEdges = forest_path(*s.g, s.redEdges(), cx.x, y);
    if (!pathEdges || pathEdges->empty()) throw MoveError("classify: no red path x..y");
    std::vector<int> verts{cx.x};
    for (int eid : *pathEdges) verts.push_back(s.g->edge(eid).other(verts.back()));
    const int n = static_cast<int>(verts.size());

    std::vector<char> descX(n), descY(n);
    for (int i = 0; i < n; ++i) {
        descX[i] = tx.isDescendant(b, verts[i], xb);
        descY[i] = tx.isDescendant(b, verts[i], y);
    }
    if (!descX[0]) throw InternalError("classify: x does not descend from xbar");
    if (descX[n - 1]) throw InternalError("classify: y descends from xbar after precondition");

    PairCase pc;
    for (int i = 0; i + 1 < n; ++i)
        if (descX[i] && !descX[i + 1] && descY[i + 1]) {
            pc.kind = 2;
            pc.u = verts[i];
            pc.v = verts[i + 1];
            pc.uvEdge = (*pathEdges)[i];
            return pc;
        }
    int i = -1;
    for (int t = 0; t + 1 < n; ++t)
        if (descX[t] && !descX[t + 1]) i = t;
    if (i < 0 || i > n - 3) throw InternalError("classify: boundary index out of range");
    int j = -1;
    for (int t = i + 2; t < n; ++t)
        if (descY[t]) {
            j = t;
            break;
        }
    if (j == -1) throw InternalError("classify: no descendant of y past the boundary");
    if (descY[j - 1]) throw InternalError("classify: case-2 pattern inside case 1");
    pc.kind = 1;
    pc.u1 = verts[i];
    pc.u1p = verts[i + 1];
    pc.uu1Edge = (*pathEdges)[i];
    pc.v1p = verts[j - 1];
    pc.v1 = verts[j];
    pc.vv1Edge = (*pathEdges)[j - 1];
    return pc;
}

// ------------------------------------------------------------- move search --

namespace {

struct GainStats {
    int condA = 0, condB = 0, sizeBound = 0, condC = 0, prefixBroken = 0, built = 0;
};

struct Ctx {
    const State* s0 = nullptr;
    const RedComps* rc0 = nullptr;
    const LegalOrder* lo0 = nullptr;
    Residue rho0;
    std::vector<int> sigma0;
    std::vector<int> rstarEdges;
    bool debug = false;
    GainStats* gain = nullptr;
};

std::vector<int> sortedCompEdges(const RedComps& rc, int c) {
    std::vector<int> e = rc.edges[c];
    std::sort(e.begin(), e.end());
    return e;
}

std::optional<State> gate(const Ctx& ctx, State cand) {
    cand.validate();
    RedComps rcN = red_components(cand);
    Residue rhoN = residue(rcN, cand.d);
    int cmp = compare_residue(rhoN, ctx.rho0);
    if (cmp < 0) return cand;
    if (cmp > 0) return std::nullopt;
    if (sortedCompEdges(rcN, rcN.compOfVertex[cand.root]) != ctx.rstarEdges) return std::nullopt;
    std::vector<int> H = exploration_subgraph(cand);
    LegalOrder loN = minimal_legal_order(cand, rcN, H);
    if (compare_orders(loN.sizes, ctx.sigma0) < 0) return cand;
    return std::nullopt;
}

// Try one exchange on a copy; nullopt when the exchange is invalid.
std::optional<State> tryExchange(const State& base, const ExchangeSpec& x) {
    if (!exchange_precondition(base, x) || !exchange_cond_descendant(base, x))
        return std::nullopt;
    State next = base;
    apply_exchange(next, x);
    return next;
}

std::vector<char> reverseReachable(const State& s, int target) {
    std::vector<std::vector<int>> preds(s.n());
    for (int v = 0; v < s.n(); ++v)
        for (int b = 0; b < s.k; ++b) {
            int p = s.parentVert[b][v];
            if (p != -1) preds[p].push_back(v);
        }
    std::vector<char> in(s.n(), 0);
    std::queue<int> q;
    q.push(target);
    in[target] = 1;
    while (!q.empty()) {
        int p = q.front();
        q.pop();
        for (int v : preds[p])
            if (!in[v]) {
                in[v] = 1;
                q.push(v);
            }
    }
    return in;
}

// Prefix-preserving order for tbar per the path-gain acceptance conditions:
// the old order survives below i_A, the component of w_{i_A} follows, and the
// remainder is completed greedily. Returns nullopt when a condition fails.
std::optional<LegalOrder> buildPrefixOrder(const Ctx& ctx, const State& tbar, const RedComps& rcB,
                                           int aTail, int aTree) {
    const State& s0 = *ctx.s0;
    const LegalOrder& lo0 = *ctx.lo0;
    int ap = tbar.parentVert[aTree][aTail];
    if (ap == -1) return std::nullopt;

    std::vector<char> inA = reverseReachable(tbar, aTail);
    int iA = INT_MAX;
    for (int v = 0; v < tbar.n(); ++v)
        if (inA[v]) iA = std::min(iA, lo0.iSigma(v));
    if (iA == INT_MAX || iA < 2) return std::nullopt;
    if (lo0.iSigma(ap) <= iA) {  // condition a
        if (ctx.gain) ++ctx.gain->condA;
        return std::nullopt;
    }
    for (int v = 0; v < tbar.n(); ++v) {
        if (inA[v]) continue;
        for (int b = 0; b < s0.k; ++b) {
            int pe0 = s0.parentEdge[b][v];
            if (pe0 != -1 && tbar.parentEdge[b][v] != pe0 && lo0.iSigma(v) < iA) {
                if (ctx.gain) ++ctx.gain->condB;
                return std::nullopt;  // condition b
            }
        }
    }
    const GenArc& genIA = lo0.gen[iA - 1];
    int w = genIA.head;
    int Lcomp = rcB.compOfVertex[w];
    int rstarIA = lo0.comps[iA - 1];
    bool same = sortedCompEdges(rcB, Lcomp) == sortedCompEdges(*ctx.rc0, rstarIA);
    int eL = rcB.edgeCount[Lcomp], eR = ctx.rc0->edgeCount[rstarIA];
    if (eL > eR) {
        if (ctx.gain) ++ctx.gain->sizeBound;
        return std::nullopt;
    }
    if (!same && eL == eR) {  // condition c
        bool touch = false;
        for (int v : rcB.verts[Lcomp])
            if (inA[v]) touch = true;
        if (!touch) {
            if (ctx.gain) ++ctx.gain->condC;
            return std::nullopt;
        }
    }

    // Assemble the sequence: old prefix, then L, then greedy completion.
    std::vector<int> H = exploration_subgraph(tbar);
    std::vector<char> inH(tbar.n(), 0);
    for (int v : H) inH[v] = 1;
    std::vector<int> seq;
    std::vector<GenArc> forced;
    std::vector<char> placed(rcB.count, 0);
    for (int pos = 0; pos < iA - 1; ++pos) {
        int oldComp = lo0.comps[pos];
        int v0 = ctx.rc0->verts[oldComp][0];
        int nc = rcB.compOfVertex[v0];
        if (sortedCompEdges(rcB, nc) != sortedCompEdges(*ctx.rc0, oldComp)) {
            if (ctx.gain) ++ctx.gain->prefixBroken;
            return std::nullopt;
        }
        if (!inH[v0]) return std::nullopt;
        seq.push_back(nc);
        placed[nc] = 1;
        if (pos == 0)
            forced.push_back({});
        else {
            const GenArc& g0 = lo0.gen[pos];
            GenArc ga = g0;
            if (tbar.parentVert[g0.tree][g0.tail] != g0.head) {
                ga = {};  // let the builder pick a fresh arc
            }
            forced.push_back(ga);
        }
    }
    if (placed[Lcomp] || !inH[w]) return std::nullopt;
    seq.push_back(Lcomp);
    placed[Lcomp] = 1;
    forced.push_back({});

    // Greedy canonical completion over the remaining components of H.
    std::vector<int> remaining;
    for (int c = 0; c < rcB.count; ++c)
        if (!placed[c] && inH[rcB.verts[c][0]]) remaining.push_back(c);
    while (!remaining.empty()) {
        int best = -1;
        for (int c : remaining) {
            bool avail = false;
            for (int v : H) {
                if (avail) break;
                int cv = rcB.compOfVertex[v];
                if (!placed[cv]) continue;
                for (int b = 0; b < tbar.k && !avail; ++b) {
                    int p = tbar.parentVert[b][v];
                    if (p != -1 && rcB.compOfVertex[p] == c) avail = true;
                }
            }
            if (!avail) continue;
            if (best == -1 || rcB.edgeCount[c] < rcB.edgeCount[best] ||
                (rcB.edgeCount[c] == rcB.edgeCount[best] &&
                 rcB.verts[c][0] < rcB.verts[best][0]))
                best = c;
        }
        if (best == -1) return std::nullopt;
        seq.push_back(best);
        placed[best] = 1;
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }
    if (ctx.gain) ++ctx.gain->built;
    return order_from_sequence(tbar, rcB, H, seq, forced);
}

// Pre-screened special-path finish at the arc (aTail, aTree) of tbar.
std::optional<State> finishWithPath(const Ctx& ctx, const State& tbar, int aTail, int aTree) {
    if (aTail < 0 || aTree < 0 || aTree >= tbar.k) return std::nullopt;
    int ap = tbar.parentVert[aTree][aTail];
    if (ap == -1) return std::nullopt;
    RedComps rcB = red_components(tbar);
    int ca = rcB.compOfVertex[aTail], cap = rcB.compOfVertex[ap];
    if (ca == cap) return std::nullopt;
    if (rcB.edgeCount[ca] + rcB.edgeCount[cap] + 1 > tbar.d) return std::nullopt;

    std::vector<int> H = exploration_subgraph(tbar);
    std::vector<char> inH(tbar.n(), 0);
    for (int v : H) inH[v] = 1;
    if (!inH[aTail]) return std::nullopt;

    LegalOrder loB = minimal_legal_order(tbar, rcB, H);
    if (auto p = find_minimal_special_path(tbar, rcB, loB, aTail, aTree)) {
        State cand = tbar;
        augment_special_path(cand, *p, loB, ctx.debug);
        if (auto acc = gate(ctx, std::move(cand))) return acc;
    }
    if (auto lo2 = buildPrefixOrder(ctx, tbar, rcB, aTail, aTree)) {
        if (auto p = find_minimal_special_path(tbar, rcB, *lo2, aTail, aTree)) {
            State cand = tbar;
            augment_special_path(cand, *p, *lo2, ctx.debug);
            if (auto acc = gate(ctx, std::move(cand))) return acc;
        }
    }
    return std::nullopt;
}

std::vector<int> redPathVerts(const State& s, const std::vector<int>& pathEdges, int from) {
    std::vector<int> verts{from};
    for (int eid : pathEdges) verts.push_back(s.g->edge(eid).other(verts.back()));
    return verts;
}

struct Catalogue {
    const Ctx& ctx;
    const State& s;
    const RedComps& rc;
    const LegalOrder& lo;
    std::vector<std::string> notes;

    std::optional<State> found;
    std::string label;

    bool accept(std::optional<State> st, const std::string& lab) {
        if (!st) return false;
        found = std::move(st);
        label = lab;
        return true;
    }

    // Root component split: a relevant neighbour of R* yields an exchange
    // that breaks R* into strictly smaller parts.
    bool rootSplit() {
        int Kroot = rc.compOfVertex[s.root];
        for (const auto& nb : relevant_neighbours(s, rc, lo, Kroot)) {
            State tx;
            try {
                tx = make_tx(s, nb);
            } catch (const MoveError&) {
                continue;
            }
            auto [xb, xbp] = bar_arc(nb);
            (void)xbp;
            auto pe = forest_path(*s.g, tx.redEdges(), nb.x, s.root);
            if (!pe || pe->empty()) continue;
            std::vector<int> verts = redPathVerts(tx, *pe, nb.x);
            int cut = -1;
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (!tx.isDescendant(nb.tree, verts[i], xb)) {
                    cut = static_cast<int>(i);
                    break;
                }
            if (cut <= 0) continue;
            auto next = tryExchange(tx, {xb, nb.tree, (*pe)[cut - 1]});
            if (!next) continue;
            if (accept(gate(ctx, std::move(*next)), "root-split")) return true;
        }
        return false;
    }

    // Plain special-path augmentations ending at any cross-component arc.
    bool basicPaths() {
        std::vector<std::tuple<int, int, int, int, int>> arcs;  // (ix, iy, x, y, b)
        for (int x = 0; x < s.n(); ++x) {
            if (!lo.inH[x]) continue;
            for (int b = 0; b < s.k; ++b) {
                int y = s.parentVert[b][x];
                if (y == -1 || rc.compOfVertex[x] == rc.compOfVertex[y]) continue;
                arcs.emplace_back(lo.iSigma(x), lo.iSigma(y), x, y, b);
            }
        }
        std::sort(arcs.begin(), arcs.end());
        for (const auto& [ix, iy, x, y, b] : arcs) {
            int cx = rc.compOfVertex[x], cy = rc.compOfVertex[y];
            if (rc.edgeCount[cx] + rc.edgeCount[cy] + 1 > s.d) continue;
            auto p = find_minimal_special_path(s, rc, lo, x, b);
            if (!p) continue;
            State cand = s;
            augment_special_path(cand, *p, lo, ctx.debug);
            if (accept(gate(ctx, std::move(cand)), "special-path")) return true;
        }
        return false;
    }

    // Single interesting neighbour: pre-exchange and finish at (xbar, xbar').
    bool singleNeighbour(const RelNeighbour& nb) {
        if (!nb.interesting) return false;
        State tx;
        try {
            tx = make_tx(s, nb);
        } catch (const MoveError&) {
            return false;
        }
        auto [xb, xbp] = bar_arc(nb);
        (void)xbp;
        return accept(finishWithPath(ctx, tx, xb, nb.tree), "neighbour-size-push");
    }

    // Degree-one tail: exchange (xbar, xbar') with the pendant red edge at x.
    bool leafHop(const RelNeighbour& nb) {
        int xeEdge = -1;
        int u = uniqueRedNeighbour(s, nb.x, &xeEdge);
        if (u == -1) return false;
        State tx;
        try {
            tx = make_tx(s, nb);
        } catch (const MoveError&) {
            return false;
        }
        auto [xb, xbp] = bar_arc(nb);
        (void)xbp;
        if (tx.isDescendant(nb.tree, u, xb)) return false;
        auto next = tryExchange(tx, {xb, nb.tree, xeEdge});
        if (!next) return false;
        return accept(gate(ctx, std::move(*next)), "leaf-hop");
    }

    // Two relevant neighbours in one tree, boundary edge case.
    bool pairCaseTwo(const RelNeighbour& cx, const RelNeighbour& cy, const State& tx,
                     const PairCase& pc) {
        auto [xb, xbp] = bar_arc(cx);
        (void)xbp;
        auto t1 = tryExchange(tx, {xb, cx.tree, pc.uvEdge});
        if (!t1) return false;
        if (accept(gate(ctx, *t1), "pair-boundary-swap")) return true;
        State t2 = *t1;
        if (cy.interesting) {
            int re = redEdgeBetween(t2, cy.xp, cy.nxp);
            if (re == -1) return false;
            auto t2x = tryExchange(t2, {cy.x, cy.tree, re});
            if (!t2x) return false;
            t2 = *t2x;
            if (accept(gate(ctx, t2), "pair-boundary-swap")) return true;
        }
        auto [yb, ybp] = bar_arc(cy);
        (void)ybp;
        return accept(finishWithPath(ctx, t2, yb, cy.tree), "pair-boundary-swap");
    }

    // Two relevant neighbours in one tree, double-boundary case: the five
    // exchange recipes, each guarded, first acceptance wins.
    bool pairCaseOne(const RelNeighbour& cx, const RelNeighbour& cy, const State& tx,
                     const PairCase& pc) {
        auto [xb, xbp] = bar_arc(cx);
        auto [yb, ybp] = bar_arc(cy);
        (void)xbp;
        (void)ybp;
        const int b = cx.tree;
        const int y = cy.x;

        // recipe 1: swap at (u,u'), optionally expose y', finish at ybar
        if (auto t1 = tryExchange(tx, {xb, b, pc.uu1Edge})) {
            if (accept(gate(ctx, *t1), "pair-two-step")) return true;
            State t2 = *t1;
            bool ok = true;
            if (cy.interesting) {
                int re = redEdgeBetween(t2, cy.xp, cy.nxp);
                auto nx = re == -1 ? std::nullopt : tryExchange(t2, {y, b, re});
                if (nx)
                    t2 = *nx;
                else
                    ok = false;
            }
            if (ok) {
                if (accept(gate(ctx, t2), "pair-two-step")) return true;
                if (accept(finishWithPath(ctx, t2, yb, b), "pair-two-step")) return true;
            }
        }

        // recipe 2: expose y', swap ybar onto the red path u'..v, finish at xbar
        {
            State t1 = tx;
            bool ok = true;
            if (cy.interesting) {
                int re = redEdgeBetween(t1, cy.xp, cy.nxp);
                auto nx = re == -1 ? std::nullopt : tryExchange(t1, {y, b, re});
                if (nx)
                    t1 = *nx;
                else
                    ok = false;
            }
            if (ok) {
                auto pe = forest_path(*s.g, t1.redEdges(), pc.u1p, pc.v1);
                if (pe && !pe->empty()) {
                    std::vector<int> verts = redPathVerts(t1, *pe, pc.u1p);
                    int vi = -1;
                    for (std::size_t i = 1; i < verts.size(); ++i)
                        if (t1.isDescendant(b, verts[i], yb)) {
                            vi = static_cast<int>(i);
                            break;
                        }
                    if (vi >= 1) {
                        if (auto t2 = tryExchange(t1, {yb, b, (*pe)[vi - 1]})) {
                            if (accept(gate(ctx, *t2), "pair-two-step")) return true;
                            if (accept(finishWithPath(ctx, *t2, xb, b), "pair-two-step"))
                                return true;
                        }
                    }
                }
            }
        }

        if (cy.interesting) {
            // recipe 3: swap at (v',v), pull xbar under y', finish at (y', y'')
            if (auto t1 = tryExchange(tx, {y, b, pc.vv1Edge})) {
                int re = redEdgeBetween(*t1, cy.xp, cy.nxp);
                if (re != -1) {
                    if (auto t2 = tryExchange(*t1, {xb, b, re})) {
                        if (accept(gate(ctx, *t2), "pair-two-step")) return true;
                        if (accept(finishWithPath(ctx, *t2, cy.xp, b), "pair-two-step"))
                            return true;
                    }
                }
            }
            // recipe 4: swap at (u,u'), free y' upward, finish at (y, y')
            if (auto t1 = tryExchange(tx, {xb, b, pc.uu1Edge})) {
                int re = redEdgeBetween(*t1, cy.xp, cy.nxp);
                if (re != -1) {
                    if (auto t2 = tryExchange(*t1, {cy.xp, b, re})) {
                        if (accept(gate(ctx, *t2), "pair-two-step")) return true;
                        if (accept(finishWithPath(ctx, *t2, y, b), "pair-two-step")) return true;
                    }
                }
            }
            // recipe 5: pull xbar under y' first, then cut the red path where
            // the blue reach to y' ends, finish at (y, y')
            {
                int re = redEdgeBetween(tx, cy.xp, cy.nxp);
                if (re != -1) {
                    if (auto t1 = tryExchange(tx, {xb, b, re})) {
                        auto pe = forest_path(*s.g, tx.redEdges(), pc.u1p, pc.v1p);
                        if (pe && !pe->empty()) {
                            std::vector<int> verts = redPathVerts(tx, *pe, pc.u1p);
                            // first path vertex with no blue chain to y'
                            int wi = -1;
                            for (std::size_t i = 0; i < verts.size(); ++i) {
                                if (!tx.isDescendant(b, verts[i], cy.xp)) {
                                    wi = static_cast<int>(i);
                                    break;
                                }
                            }
                            if (wi >= 1) {
                                if (auto t2 = tryExchange(*t1, {cy.xp, b, (*pe)[wi - 1]})) {
                                    if (accept(gate(ctx, *t2), "pair-two-step")) return true;
                                    if (accept(finishWithPath(ctx, *t2, y, b), "pair-two-step"))
                                        return true;
                                }
                            }
                        }
                    }
                }
            }
        }
        return false;
    }

    bool pairMoves(const std::vector<RelNeighbour>& rels) {
        for (std::size_t i = 0; i < rels.size(); ++i)
            for (std::size_t j = 0; j < rels.size(); ++j) {
                if (i == j) continue;
                const RelNeighbour& cx = rels[i];
                const RelNeighbour& cy = rels[j];
                if (cx.x == cy.x) continue;
                State tx;
                try {
                    tx = make_tx(s, cx);
                } catch (const MoveError&) {
                    continue;
                }
                PairCase pc;
                try {
                    pc = classify_pair(s, tx, rc, cx, cy.x);
                } catch (const MoveError&) {
                    continue;
                } catch (const InternalError&) {
                    continue;
                }
                if (pc.kind == 2) {
                    if (pairCaseTwo(cx, cy, tx, pc)) return true;
                } else {
                    if (pairCaseOne(cx, cy, tx, pc)) return true;
                }
            }
        return false;
    }

    // Three relevant neighbours in one tree: chained exchanges towards the
    // outermost neighbour, finish at its bar arc.
    bool tripleMoves(const std::vector<RelNeighbour>& rels) {
        const int b = rels.empty() ? -1 : rels[0].tree;
        std::vector<int> idx(rels.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end());
        do {
            if (idx.size() < 3) break;
            const RelNeighbour& c1 = rels[idx[0]];
            const RelNeighbour& c2 = rels[idx[1]];
            const RelNeighbour& c3 = rels[idx[2]];
            if (c1.x == c2.x || c2.x == c3.x || c1.x == c3.x) continue;
            int ny = -1, nyE = -1, nz = -1, nzE = -1;
            ny = uniqueRedNeighbour(s, c2.x, &nyE);
            nz = uniqueRedNeighbour(s, c3.x, &nzE);
            if (ny == -1 || nz == -1) continue;

            State tx;
            PairCase pcXY, pcYZ;
            try {
                tx = make_tx(s, c1);
                pcXY = classify_pair(s, tx, rc, c1, c2.x);
                State ty = make_tx(s, c2);
                pcYZ = classify_pair(s, ty, rc, c2, c3.x);
            } catch (const Error&) {
                continue;
            }
            auto [xb, xbp] = bar_arc(c1);
            auto [yb, ybp] = bar_arc(c2);
            auto [zb, zbp] = bar_arc(c3);
            (void)xbp;
            (void)ybp;
            (void)zbp;

            std::optional<State> t1;
            if (pcXY.kind == 1) {
                if (!c2.interesting) continue;
                int re = redEdgeBetween(tx, c2.xp, c2.nxp);
                t1 = re == -1 ? std::nullopt : tryExchange(tx, {xb, b, re});
                if (t1) t1 = tryExchange(*t1, {c2.x, b, nyE});
            } else {
                t1 = tryExchange(tx, {xb, b, nyE});
                if (t1 && c2.interesting) {
                    int re = redEdgeBetween(*t1, c2.xp, c2.nxp);
                    t1 = re == -1 ? std::nullopt : tryExchange(*t1, {c2.x, b, re});
                }
            }
            if (!t1) continue;

            std::optional<State> t2;
            if (pcYZ.kind == 1) {
                if (!c3.interesting) continue;
                int re = redEdgeBetween(*t1, c3.xp, c3.nxp);
                t2 = re == -1 ? std::nullopt : tryExchange(*t1, {yb, b, re});
                if (t2) t2 = tryExchange(*t2, {c3.x, b, nzE});
            } else {
                t2 = tryExchange(*t1, {yb, b, nzE});
                if (t2 && c3.interesting) {
                    int re = redEdgeBetween(*t2, c3.xp, c3.nxp);
                    t2 = re == -1 ? std::nullopt : tryExchange(*t2, {c3.x, b, re});
                }
            }
            if (!t2) continue;
            if (accept(gate(ctx, *t2), "triple-chain")) return true;
            if (accept(finishWithPath(ctx, *t2, zb, b), "triple-chain")) return true;
        } while (std::next_permutation(idx.begin(), idx.end()));
        return false;
    }

    // A component with a one-edge and a zero-edge neighbour in one tree whose
    // inbound blue chain re-enters the component: reroute exchanges.
    bool badChainMoves(const std::vector<RelNeighbour>& rels, int K) {
        for (const auto& cy : rels) {
            if (cy.cx != 0) continue;
            for (const auto& cx : rels) {
                if (&cx == &cy || cx.x == cy.x) continue;
                const int b = cx.tree;
                int y = cy.x;
                int nyE = -1;
                int ny = uniqueRedNeighbour(s, y, &nyE);
                if (ny == -1) continue;
                // blue chain from n_y towards the root; find y's predecessor
                int z = -1;
                for (int cur = ny; cur != -1; cur = s.parentVert[b][cur]) {
                    int p = s.parentVert[b][cur];
                    if (p == y) {
                        z = cur;
                        break;
                    }
                }
                if (z == -1 || rc.compOfVertex[z] != K) continue;  // no violation
                notes.push_back("component " + std::to_string(K) + ": inbound chain tail " +
                                std::to_string(z) + " lies inside the component (tree " +
                                std::to_string(b) + ")");
                State tx;
                PairCase pc;
                try {
                    tx = make_tx(s, cx);
                    pc = classify_pair(s, tx, rc, cx, z);
                } catch (const Error&) {
                    continue;
                }
                auto [xb, xbp] = bar_arc(cx);
                (void)xbp;
                if (pc.kind == 2) {
                    if (auto t1 = tryExchange(tx, {xb, b, pc.uvEdge})) {
                        if (accept(gate(ctx, *t1), "chain-reroute")) return true;
                        if (auto t2 = tryExchange(*t1, {z, b, nyE})) {
                            if (accept(gate(ctx, *t2), "chain-reroute")) return true;
                            if (accept(finishWithPath(ctx, *t2, y, b), "chain-reroute"))
                                return true;
                        }
                    }
                } else {
                    // pendant side: single swap, then retry the boundary move
                    if (z == pc.v1) {
                        if (auto t1 = tryExchange(tx, {z, b, pc.vv1Edge})) {
                            if (accept(gate(ctx, *t1), "chain-reroute")) return true;
                            if (accept(finishWithPath(ctx, *t1, y, b), "chain-reroute"))
                                return true;
                            if (accept(finishWithPath(ctx, *t1, xb, b), "chain-reroute"))
                                return true;
                        }
                    }
                    if (auto t1 = tryExchange(tx, {xb, b, pc.uu1Edge})) {
                        if (accept(gate(ctx, *t1), "chain-reroute")) return true;
                        if (accept(finishWithPath(ctx, *t1, y, b), "chain-reroute")) return true;
                    }
                    if (auto t1 = tryExchange(tx, {xb, b, nyE})) {
                        if (auto t2 = tryExchange(*t1, {z, b, pc.vv1Edge})) {
                            if (accept(gate(ctx, *t2), "chain-reroute")) return true;
                            if (accept(finishWithPath(ctx, *t2, y, b), "chain-reroute"))
                                return true;
                        }
                    }
                }
            }
        }
        return false;
    }

    // Bounded generic search: exchange sequences up to the given depth, each
    // node also attempting special-path finishes at nearby arcs.
    bool genericSearch(int depth, int* budget) {
        return genericFrom(s, depth, budget);
    }

    bool genericFrom(const State& cur, int depth, int* budget) {
        if (*budget <= 0) return false;
        RedComps rcC = red_components(cur);
        // candidate final arcs: cross-component, small merged size, scan order
        std::vector<std::tuple<int, int, int>> finals;  // (x, b, iSigma-ish)
        for (int x = 0; x < cur.n() && static_cast<int>(finals.size()) < 16; ++x) {
            for (int b = 0; b < cur.k; ++b) {
                int y = cur.parentVert[b][x];
                if (y == -1 || rcC.compOfVertex[x] == rcC.compOfVertex[y]) continue;
                if (rcC.edgeCount[rcC.compOfVertex[x]] + rcC.edgeCount[rcC.compOfVertex[y]] + 1 >
                    cur.d)
                    continue;
                finals.emplace_back(x, b, 0);
            }
        }
        for (const auto& [x, b, unused] : finals) {
            (void)unused;
            if (--*budget <= 0) return false;
            if (accept(finishWithPath(ctx, cur, x, b), "generic")) return true;
        }
        if (depth == 0) return false;

        // candidate exchanges: arcs into / red edges of active components
        std::vector<char> active(rcC.count, 0);
        for (int c = 0; c < rcC.count; ++c)
            if (rcC.edgeCount[c] >= cur.d - 1) active[c] = 1;
        active[rcC.compOfVertex[cur.root]] = 1;
        int tried = 0;
        for (int tail = 0; tail < cur.n() && tried < 40; ++tail) {
            for (int b = 0; b < cur.k && tried < 40; ++b) {
                if (cur.parentEdge[b][tail] == -1) continue;
                for (int eid = 0; eid < cur.m() && tried < 40; ++eid) {
                    if (cur.colour[eid] != cur.k) continue;
                    int cu = rcC.compOfVertex[cur.g->edge(eid).u];
                    if (!active[cu] && !active[rcC.compOfVertex[tail]]) continue;
                    ExchangeSpec spec{tail, b, eid};
                    if (!exchange_precondition(cur, spec) || !exchange_cond_descendant(cur, spec))
                        continue;
                    ++tried;
                    if (--*budget <= 0) return false;
                    State next = cur;
                    apply_exchange(next, spec);
                    if (accept(gate(ctx, next), "generic")) return true;
                    if (genericFrom(next, depth - 1, budget)) return true;
                }
            }
        }
        return false;
    }
};

}  // namespace

RoundResult move_round(const State& s, int compositeDepth, bool debugAsserts,
                       bool collectDiagnostics) {
    RoundResult rr;
    RedComps rc = red_components(s);
    std::vector<int> H = exploration_subgraph(s);
    LegalOrder lo = minimal_legal_order(s, rc, H);

    Ctx ctx;
    ctx.s0 = &s;
    ctx.rc0 = &rc;
    ctx.lo0 = &lo;
    ctx.rho0 = residue(rc, s.d);
    ctx.sigma0 = lo.sizes;
    ctx.rstarEdges = sortedCompEdges(rc, rc.compOfVertex[s.root]);
    ctx.debug = debugAsserts;
    GainStats gain;
    if (collectDiagnostics) ctx.gain = &gain;

    Catalogue cat{ctx, s, rc, lo, {}, std::nullopt, {}};

    auto finish = [&](const char* why) {
        (void)why;
        rr.moved = true;
        rr.next = std::move(*cat.found);
        rr.label = cat.label;
        return rr;
    };

    if (cat.rootSplit()) return finish("root");
    if (cat.basicPaths()) return finish("basic");

    // Per-component relevant-neighbour moves, in order positions.
    for (std::size_t pos = 1; pos < lo.comps.size(); ++pos) {
        int K = lo.comps[pos];
        std::vector<RelNeighbour> rels = relevant_neighbours(s, rc, lo, K);
        if (rels.empty()) continue;
        for (const auto& nb : rels) {
            if (cat.singleNeighbour(nb)) return finish("single");
            if (cat.leafHop(nb)) return finish("leaf");
        }
        for (int b = 0; b < s.k; ++b) {
            std::vector<RelNeighbour> relsB;
            for (const auto& nb : rels)
                if (nb.tree == b) relsB.push_back(nb);
            if (relsB.size() >= 2 && cat.pairMoves(relsB)) return finish("pair");
            if (relsB.size() >= 3) {
                cat.notes.push_back("component " + std::to_string(K) + ": " +
                                    std::to_string(relsB.size()) +
                                    " relevant neighbours in tree " + std::to_string(b));
                if (cat.tripleMoves(relsB)) return finish("triple");
            }
            if (relsB.size() >= 2 && cat.badChainMoves(relsB, K)) return finish("chain");
        }
    }

    int budget = 4000;
    if (compositeDepth > 0 && cat.genericSearch(compositeDepth, &budget)) return finish("generic");

    rr.moved = false;
    if (collectDiagnostics) {
        rr.diagnostics = cat.notes;
        rr.diagnostics.push_back("no improving move; generic budget left " +
                                 std::to_string(budget));
        rr.diagnostics.push_back(
            "path-gain conditions failed: a=" + std::to_string(gain.condA) +
            " b=" + std::to_string(gain.condB) + " c=" + std::to_string(gain.condC) +
            " size=" + std::to_string(gain.sizeBound) +
            " prefix=" + std::to_string(gain.prefixBroken) +
            "; prefix orders built: " + std::to_string(gain.built));
    }
    return rr;
}

}  // namespace arbor
