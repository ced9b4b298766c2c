#include "arbor/order.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace arbor {

Residue residue(const RedComps& rc, int d) {
    std::map<int, int, std::greater<int>> acc;
    for (int c = 0; c < rc.count; ++c)
        if (rc.edgeCount[c] > d) ++acc[rc.edgeCount[c]];
    Residue r;
    r.d = d;
    r.counts.assign(acc.begin(), acc.end());
    return r;
}

int compare_residue(const Residue& a, const Residue& b) {
    std::size_t i = 0, j = 0;
    while (i < a.counts.size() || j < b.counts.size()) {
        int sa = i < a.counts.size() ? a.counts[i].first : -1;
        int sb = j < b.counts.size() ? b.counts[j].first : -1;
        if (sa == sb) {
            if (a.counts[i].second != b.counts[j].second)
                return a.counts[i].second < b.counts[j].second ? -1 : 1;
            ++i;
            ++j;
        } else if (sa > sb) {
            return 1;  // a has components at a larger size
        } else {
            return -1;
        }
    }
    return 0;
}

namespace {
void bump(Residue& r, int size, int delta) {
    if (size <= r.d || delta == 0) return;
    auto it = std::find_if(r.counts.begin(), r.counts.end(),
                           [&](const auto& p) { return p.first <= size; });
    if (it != r.counts.end() && it->first == size) {
        it->second += delta;
        if (it->second == 0) r.counts.erase(it);
    } else {
        r.counts.insert(it, {size, delta});
    }
}
}  // namespace

Residue residue_after_merge(const Residue& r, int e1, int e2) {
    Residue out = r;
    bump(out, e1, -1);
    bump(out, e2, -1);
    bump(out, e1 + e2 + 1, +1);
    return out;
}

RootChoice select_root(const State& s, const RedComps& rc) {
    RootChoice choice;
    for (int c = 0; c < rc.count; ++c) {
        if (rc.edgeCount[c] <= s.d) continue;
        if (choice.compId == -1 || rc.edgeCount[c] > rc.edgeCount[choice.compId])
            choice.compId = c;  // comp ids are ordered by smallest vertex already
    }
    if (choice.compId == -1) {
        choice.alreadyDone = true;
        return choice;
    }
    const MultiGraph& g = *s.g;
    const auto& verts = rc.verts[choice.compId];
    std::vector<int> deg(g.vertexCount(), 0);
    for (int eid : rc.edges[choice.compId]) {
        ++deg[g.edge(eid).u];
        ++deg[g.edge(eid).v];
    }
    for (int v : verts)
        if (deg[v] >= 3) {
            choice.r = v;
            return choice;
        }
    // Two edge-disjoint red paths of length >= 2: two distinct neighbours of
    // degree >= 2 inside the component.
    for (int v : verts) {
        int branches = 0;
        for (int eid : g.incident(v))
            if (s.colour[eid] == s.k && deg[g.edge(eid).other(v)] >= 2) ++branches;
        if (branches >= 2) {
            choice.r = v;
            return choice;
        }
    }
    // Short-path components (possible only for d <= 2): fall back to the
    // maximum-degree vertex.
    int best = verts[0];
    for (int v : verts)
        if (deg[v] > deg[best]) best = v;
    choice.r = best;
    return choice;
}

std::vector<int> exploration_subgraph(const State& s) {
    const MultiGraph& g = *s.g;
    std::vector<char> in(g.vertexCount(), 0);
    std::queue<int> q;
    q.push(s.root);
    in[s.root] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int eid : g.incident(v))
            if (s.colour[eid] == s.k) {
                int w = g.edge(eid).other(v);
                if (!in[w]) {
                    in[w] = 1;
                    q.push(w);
                }
            }
        for (int b = 0; b < s.k; ++b) {
            int p = s.parentVert[b][v];
            if (p != -1 && !in[p]) {
                in[p] = 1;
                q.push(p);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.vertexCount(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

int LegalOrder::posOfCompSafe(int v) const { return posOfComp[(*compOfVertex)[v]]; }

bool LegalOrder::auxAncestor(int anc, int v) const {
    int cur = v, guard = 0;
    while (cur != -1) {
        if (cur == anc) return true;
        cur = auxParentV[cur];
        if (++guard > static_cast<int>(auxParentV.size()) + 1) return false;
    }
    return false;
}

int compare_orders(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        int va = i < a.size() ? a[i] : 0;
        int vb = i < b.size() ? b[i] : 0;
        if (va != vb) return va < vb ? -1 : 1;
    }
    return 0;
}

namespace {

struct OrderProblem {
    int t = 0;                              // components inside H
    std::vector<int> compIds;               // local idx -> comp id
    std::vector<int> localOf;               // comp id -> local idx or -1
    std::vector<int> size;                  // local idx -> edge count
    std::vector<int> minVert;               // local idx -> smallest vertex
    std::vector<std::uint64_t> unlocks;     // local idx -> bitmask of comps entered from it
    int rootLocal = -1;

    std::uint64_t availMask(std::uint64_t placed) const {
        std::uint64_t avail = 0;
        std::uint64_t rest = placed;
        while (rest) {
            int i = __builtin_ctzll(rest);
            rest &= rest - 1;
            avail |= unlocks[i];
        }
        return avail & ~placed;
    }
};

constexpr std::size_t kFrontierCap = 20000;

}  // namespace

LegalOrder minimal_legal_order(const State& s, const RedComps& rc, const std::vector<int>& H) {
    const MultiGraph& g = *s.g;
    LegalOrder lo;
    lo.inH.assign(g.vertexCount(), 0);
    for (int v : H) lo.inH[v] = 1;
    lo.posOfComp.assign(rc.count, -1);
    lo.compOfVertex = &rc.compOfVertex;
    lo.auxParentV.assign(g.vertexCount(), -1);
    lo.auxParentE.assign(g.vertexCount(), -1);

    OrderProblem p;
    p.localOf.assign(rc.count, -1);
    for (int c = 0; c < rc.count; ++c)
        if (lo.inH[rc.verts[c][0]]) {
            p.localOf[c] = p.t++;
            p.compIds.push_back(c);
            p.size.push_back(rc.edgeCount[c]);
            p.minVert.push_back(rc.verts[c][0]);
        }
    if (p.t > 63) throw CapError("minimal_legal_order: more than 63 components");
    p.unlocks.assign(p.t, 0);
    int rootComp = rc.compOfVertex[s.root];
    p.rootLocal = p.localOf[rootComp];

    // Arc availability between components: a blue arc (v, parent) entering a
    // different component unlocks the head's component.
    for (int v : H)
        for (int b = 0; b < s.k; ++b) {
            int pv = s.parentVert[b][v];
            if (pv == -1) continue;
            int cv = p.localOf[rc.compOfVertex[v]];
            int cp = p.localOf[rc.compOfVertex[pv]];
            if (cv != cp) p.unlocks[cv] |= std::uint64_t(1) << cp;
        }

    // Frontier search for the exact lexicographic minimum size sequence.
    std::vector<int> seq{p.size[p.rootLocal]};
    std::vector<std::set<std::uint64_t>> layers;
    layers.push_back({std::uint64_t(1) << p.rootLocal});
    for (int step = 1; step < p.t; ++step) {
        int best = INT_MAX;
        for (std::uint64_t mask : layers.back()) {
            std::uint64_t avail = p.availMask(mask);
            while (avail) {
                int i = __builtin_ctzll(avail);
                avail &= avail - 1;
                best = std::min(best, p.size[i]);
            }
        }
        if (best == INT_MAX)
            throw InternalError("minimal_legal_order: no available component before covering H");
        std::set<std::uint64_t> next;
        for (std::uint64_t mask : layers.back()) {
            std::uint64_t avail = p.availMask(mask);
            while (avail) {
                int i = __builtin_ctzll(avail);
                avail &= avail - 1;
                if (p.size[i] == best) next.insert(mask | (std::uint64_t(1) << i));
                if (next.size() > 2 * kFrontierCap) break;
            }
        }
        if (next.size() > kFrontierCap) {
            // Scale guard: keep the numerically smallest masks. Exactness is
            // only needed (and exercised) at desk scale.
            auto it = next.begin();
            std::advance(it, kFrontierCap);
            next.erase(it, next.end());
        }
        seq.push_back(best);
        layers.push_back(std::move(next));
    }

    // Backward filter: keep only masks from which the rest of the optimal
    // sequence stays reachable.
    std::vector<std::set<std::uint64_t>> good(layers.size());
    good.back() = layers.back();
    for (int step = p.t - 2; step >= 0; --step) {
        for (std::uint64_t mask : layers[step]) {
            std::uint64_t avail = p.availMask(mask);
            bool ok = false;
            while (avail && !ok) {
                int i = __builtin_ctzll(avail);
                avail &= avail - 1;
                if (p.size[i] == seq[step + 1] &&
                    good[step + 1].count(mask | (std::uint64_t(1) << i)))
                    ok = true;
            }
            if (ok) good[step].insert(mask);
        }
    }

    // Canonical forward reconstruction: lowest-minVert component among the
    // choices that keep the optimal suffix reachable.
    std::uint64_t mask = std::uint64_t(1) << p.rootLocal;
    std::vector<int> orderLocal{p.rootLocal};
    for (int step = 1; step < p.t; ++step) {
        std::uint64_t avail = p.availMask(mask);
        int pick = -1;
        while (avail) {
            int i = __builtin_ctzll(avail);
            avail &= avail - 1;
            if (p.size[i] != seq[step]) continue;
            std::uint64_t nm = mask | (std::uint64_t(1) << i);
            if (!good[step].count(nm)) continue;
            if (pick == -1 || p.minVert[i] < p.minVert[pick]) pick = i;
        }
        if (pick == -1) {
            // Reachable only under frontier truncation: fall back to the
            // canonical greedy choice (smallest size, then lowest vertex).
            std::uint64_t av = p.availMask(mask);
            while (av) {
                int i = __builtin_ctzll(av);
                av &= av - 1;
                if (pick == -1 || p.size[i] < p.size[pick] ||
                    (p.size[i] == p.size[pick] && p.minVert[i] < p.minVert[pick]))
                    pick = i;
            }
        }
        if (pick == -1) throw InternalError("minimal_legal_order: reconstruction failed");
        orderLocal.push_back(pick);
        mask |= std::uint64_t(1) << pick;
    }

    std::vector<int> compSeq;
    for (int i : orderLocal) compSeq.push_back(p.compIds[i]);
    auto built = order_from_sequence(s, rc, H, compSeq);
    if (!built) throw InternalError("minimal_legal_order: constructed sequence is not legal");
    return *built;
}

std::optional<LegalOrder> order_from_sequence(const State& s, const RedComps& rc,
                                              const std::vector<int>& H,
                                              const std::vector<int>& compSeq,
                                              const std::vector<GenArc>& forcedGen) {
    const MultiGraph& g = *s.g;
    LegalOrder lo;
    lo.inH.assign(g.vertexCount(), 0);
    for (int v : H) lo.inH[v] = 1;
    lo.posOfComp.assign(rc.count, -1);
    lo.compOfVertex = &rc.compOfVertex;
    lo.auxParentV.assign(g.vertexCount(), -1);
    lo.auxParentE.assign(g.vertexCount(), -1);

    const int t = static_cast<int>(compSeq.size());
    if (t == 0 || compSeq[0] != rc.compOfVertex[s.root]) return std::nullopt;
    lo.comps = compSeq;
    lo.sizes.resize(t);
    lo.gen.resize(t);
    for (int pos = 0; pos < t; ++pos) {
        int c = compSeq[pos];
        if (lo.posOfComp[c] != -1) return std::nullopt;
        lo.posOfComp[c] = pos;
        lo.sizes[pos] = rc.edgeCount[c];
    }

    for (int pos = 1; pos < t; ++pos) {
        int c = lo.comps[pos];
        GenArc arc;
        bool forced = pos < static_cast<int>(forcedGen.size()) && forcedGen[pos].tail != -1;
        if (forced) {
            arc = forcedGen[pos];
            int ct = rc.compOfVertex[arc.tail];
            if (lo.posOfComp[ct] == -1 || lo.posOfComp[ct] >= pos) return std::nullopt;
            if (rc.compOfVertex[arc.head] != c) return std::nullopt;
            if (arc.tree < 0 || arc.tree >= s.k || s.parentVert[arc.tree][arc.tail] != arc.head)
                return std::nullopt;
            arc.edge = s.parentEdge[arc.tree][arc.tail];
        } else {
            // lexicographically least (tail, head), lowest tree on ties
            for (int tail : H) {
                int ct = rc.compOfVertex[tail];
                if (lo.posOfComp[ct] == -1 || lo.posOfComp[ct] >= pos) continue;
                for (int b = 0; b < s.k; ++b) {
                    int head = s.parentVert[b][tail];
                    if (head == -1 || rc.compOfVertex[head] != c) continue;
                    if (arc.tail == -1 || tail < arc.tail ||
                        (tail == arc.tail && head < arc.head)) {
                        arc = {tail, head, s.parentEdge[b][tail], b};
                    }
                }
            }
            if (arc.tail == -1) return std::nullopt;
        }
        lo.gen[pos] = arc;
    }

    // Auxiliary tree: inside every component, red edges oriented away from
    // the entry vertex; entry vertices hang from their generator tails.
    for (int pos = 0; pos < t; ++pos) {
        int c = lo.comps[pos];
        int entry = pos == 0 ? s.root : lo.gen[pos].head;
        if (pos > 0) {
            lo.auxParentV[entry] = lo.gen[pos].tail;
            lo.auxParentE[entry] = lo.gen[pos].edge;
        }
        std::vector<char> seen(g.vertexCount(), 0);
        std::queue<int> q;
        q.push(entry);
        seen[entry] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int eid : g.incident(v)) {
                if (s.colour[eid] != s.k) continue;
                int w = g.edge(eid).other(v);
                if (rc.compOfVertex[w] != c || seen[w]) continue;
                seen[w] = 1;
                lo.auxParentV[w] = v;
                lo.auxParentE[w] = eid;
                q.push(w);
            }
        }
    }
    return lo;
}

}  // namespace arbor
