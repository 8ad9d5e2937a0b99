#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "angulation.hpp"

namespace mang {

struct QArrow {
    int id;
    int src;
    int tgt;
    std::string label;

    bool operator==(const QArrow& o) const {
        return id == o.id && src == o.src && tgt == o.tgt && label == o.label;
    }
};

// Quiver with length-2 zero relations. A relation (a, b) means the path
// "arrow a then arrow b" (so target(a) = source(b)) is zero.
struct BoundQuiver {
    int n_vertices = 0;
    std::vector<QArrow> arrows;
    std::set<std::pair<int, int>> relations;

    const QArrow* arrow(int id) const {
        for (const auto& a : arrows)
            if (a.id == id) return &a;
        return nullptr;
    }

    bool operator==(const BoundQuiver& o) const {
        return n_vertices == o.n_vertices && arrows == o.arrows &&
               relations == o.relations;
    }
};

inline void validate_quiver(const BoundQuiver& q) {
    std::set<int> ids;
    for (const auto& a : q.arrows) {
        if (!ids.insert(a.id).second)
            fail("ParseError", "duplicate arrow id " + std::to_string(a.id));
        if (a.src < 0 || a.src >= q.n_vertices || a.tgt < 0 || a.tgt >= q.n_vertices)
            fail("ParseError", "arrow " + std::to_string(a.id) +
                                   " endpoint out of range");
    }
    for (const auto& [x, y] : q.relations) {
        const QArrow *a = q.arrow(x), *b = q.arrow(y);
        if (!a || !b)
            fail("ParseError", "relation references missing arrow");
        if (a->tgt != b->src)
            fail("ParseError", "relation (" + std::to_string(x) + "," +
                                   std::to_string(y) + ") is not composable");
    }
}

// Bound quiver of an angulation. One vertex per arc. Each face contributes
// an arrow for every pair of arc edges adjacent in its clockwise edge cycle,
// directed from the clockwise-following arc to the preceding one, and a
// relation for every three cyclically consecutive arc edges. Arrow ids run
// by face, then by position within the face, so equal inputs give identical
// quivers.
inline BoundQuiver bound_quiver(const Angulation& ang) {
    BoundQuiver q;
    q.n_vertices = int(ang.arcs.size());
    for (size_t fi = 0; fi < ang.faces.size(); ++fi) {
        const Face& f = ang.faces[fi];
        int sz = f.size();
        auto arc_at = [&](int t) -> int {
            const FaceEdge& e = f.edges[imod(t, sz)];
            return e.kind == EdgeKind::ArcEdge ? e.arc : -1;
        };
        std::map<int, int> pair_arrow; // position t -> arrow id of (e_t, e_{t+1})
        for (int t = 0; t < sz; ++t) {
            int a = arc_at(t), b = arc_at(t + 1);
            if (a < 0 || b < 0) continue;
            int id = int(q.arrows.size());
            q.arrows.push_back(QArrow{id, b, a, ""});
            pair_arrow[t] = id;
        }
        for (int t = 0; t < sz; ++t) {
            if (arc_at(t) < 0 || arc_at(t + 1) < 0 || arc_at(t + 2) < 0) continue;
            int first = pair_arrow.at(imod(t + 1, sz)); // arc(t+2) -> arc(t+1)
            int second = pair_arrow.at(t);              // arc(t+1) -> arc(t)
            q.relations.insert({first, second});
        }
    }
    return q;
}

struct Diagnosed {
    bool ok;
    std::string why; // empty when ok

    explicit operator bool() const { return ok; }
};

// Gentleness: vertex degrees at most 2; for every arrow at most one relation
// partner and at most one non-relation composable partner on each side.
inline Diagnosed is_gentle(const BoundQuiver& q) {
    std::vector<int> indeg(q.n_vertices, 0), outdeg(q.n_vertices, 0);
    for (const auto& a : q.arrows) {
        ++outdeg[a.src];
        ++indeg[a.tgt];
    }
    for (int v = 0; v < q.n_vertices; ++v) {
        if (indeg[v] > 2)
            return {false, "vertex " + std::to_string(v) + " has in-degree " +
                               std::to_string(indeg[v])};
        if (outdeg[v] > 2)
            return {false, "vertex " + std::to_string(v) + " has out-degree " +
                               std::to_string(outdeg[v])};
    }
    auto rel = [&](int x, int y) { return q.relations.count({x, y}) > 0; };
    for (const auto& b : q.arrows) {
        int rel_in = 0, free_in = 0, rel_out = 0, free_out = 0;
        for (const auto& a : q.arrows) {
            if (a.tgt == b.src) (rel(a.id, b.id) ? rel_in : free_in)++;
            if (b.tgt == a.src) (rel(b.id, a.id) ? rel_out : free_out)++;
        }
        if (rel_in > 1)
            return {false, "arrow " + std::to_string(b.id) +
                               " has two relation predecessors"};
        if (free_in > 1)
            return {false, "arrow " + std::to_string(b.id) +
                               " has two relation-free predecessors"};
        if (rel_out > 1)
            return {false, "arrow " + std::to_string(b.id) +
                               " has two relation successors"};
        if (free_out > 1)
            return {false, "arrow " + std::to_string(b.id) +
                               " has two relation-free successors"};
    }
    return {true, ""};
}

inline BoundQuiver opposite_quiver(const BoundQuiver& q) {
    BoundQuiver o;
    o.n_vertices = q.n_vertices;
    for (const auto& a : q.arrows) o.arrows.push_back(QArrow{a.id, a.tgt, a.src, a.label});
    for (const auto& [x, y] : q.relations) o.relations.insert({y, x});
    return o;
}

// Rename vertices by vperm (old -> new) and arrow ids by aperm (old -> new);
// structure is otherwise unchanged. Arrows are re-sorted by new id so equal
// relabelings of equal quivers compare equal.
inline BoundQuiver relabel_quiver(const BoundQuiver& q,
                                  const std::vector<int>& vperm,
                                  const std::map<int, int>& aperm) {
    BoundQuiver o;
    o.n_vertices = q.n_vertices;
    for (const auto& a : q.arrows)
        o.arrows.push_back(QArrow{aperm.at(a.id), vperm.at(a.src),
                                  vperm.at(a.tgt), a.label});
    std::sort(o.arrows.begin(), o.arrows.end(),
              [](const QArrow& a, const QArrow& b) { return a.id < b.id; });
    for (const auto& [x, y] : q.relations) o.relations.insert({aperm.at(x), aperm.at(y)});
    return o;
}

inline bool is_connected(const BoundQuiver& q) {
    if (q.n_vertices <= 1) return true;
    std::vector<std::vector<int>> adj(q.n_vertices);
    for (const auto& a : q.arrows) {
        adj[a.src].push_back(a.tgt);
        adj[a.tgt].push_back(a.src);
    }
    std::vector<char> seen(q.n_vertices, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == q.n_vertices;
}

struct QuiverIso {
    std::vector<int> vertex_map;  // q1 vertex -> q2 vertex
    std::map<int, int> arrow_map; // q1 arrow id -> q2 arrow id
};

namespace detail {

// match arrows group-by-group (per source/target vertex pair under the fixed
// vertex map), trying permutations inside parallel groups until the relation
// sets coincide.
inline bool match_arrows(const BoundQuiver& q1, const BoundQuiver& q2,
                         const std::vector<int>& vmap, QuiverIso& out) {
    std::map<std::pair<int, int>, std::vector<int>> g1, g2;
    for (const auto& a : q1.arrows) g1[{vmap[a.src], vmap[a.tgt]}].push_back(a.id);
    for (const auto& a : q2.arrows) g2[{a.src, a.tgt}].push_back(a.id);
    if (g1.size() != g2.size()) return false;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
    for (auto& [k, v] : g1) {
        auto it = g2.find(k);
        if (it == g2.end() || it->second.size() != v.size()) return false;
        groups.push_back({v, it->second});
    }
    std::map<int, int> amap;
    auto rec = [&](auto&& self, size_t gi) -> bool {
        if (gi == groups.size()) {
            std::set<std::pair<int, int>> mapped;
            for (const auto& [x, y] : q1.relations) mapped.insert({amap.at(x), amap.at(y)});
            if (mapped != q2.relations) return false;
            out.arrow_map = amap;
            return true;
        }
        auto& [from, to] = groups[gi];
        std::vector<int> perm = to;
        std::sort(perm.begin(), perm.end());
        do {
            for (size_t i = 0; i < from.size(); ++i) amap[from[i]] = perm[i];
            if (self(self, gi + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (int id : from) amap.erase(id);
        return false;
    };
    return rec(rec, 0);
}

} // namespace detail

// Bound-quiver isomorphism by backtracking over degree-compatible vertex
// assignments; desk scale only.
inline std::optional<QuiverIso> quivers_isomorphic(const BoundQuiver& q1,
                                                   const BoundQuiver& q2) {
    if (q1.n_vertices != q2.n_vertices || q1.arrows.size() != q2.arrows.size() ||
        q1.relations.size() != q2.relations.size())
        return std::nullopt;
    int n = q1.n_vertices;
    auto degs = [](const BoundQuiver& q) {
        std::vector<std::pair<int, int>> d(q.n_vertices, {0, 0});
        for (const auto& a : q.arrows) {
            ++d[a.src].first;
            ++d[a.tgt].second;
        }
        return d;
    };
    auto d1 = degs(q1), d2 = degs(q2);
    // adjacency counts for pruning
    auto counts = [](const BoundQuiver& q) {
        std::map<std::pair<int, int>, int> c;
        for (const auto& a : q.arrows) ++c[{a.src, a.tgt}];
        return c;
    };
    auto c1 = counts(q1), c2 = counts(q2);
    auto cnt = [](const std::map<std::pair<int, int>, int>& c, int u, int v) {
        auto it = c.find({u, v});
        return it == c.end() ? 0 : it->second;
    };

    std::vector<int> vmap(n, -1);
    std::vector<char> used(n, 0);
    QuiverIso result;
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n) {
            QuiverIso iso;
            iso.vertex_map = vmap;
            if (!detail::match_arrows(q1, q2, vmap, iso)) return false;
            result = iso;
            return true;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || d1[v] != d2[w]) continue;
            bool ok = cnt(c1, v, v) == cnt(c2, w, w);
            for (int u = 0; u < v && ok; ++u) {
                if (cnt(c1, u, v) != cnt(c2, vmap[u], w)) ok = false;
                if (cnt(c1, v, u) != cnt(c2, w, vmap[u])) ok = false;
            }
            if (!ok) continue;
            vmap[v] = w;
            used[w] = 1;
            if (self(self, v + 1)) return true;
            vmap[v] = -1;
            used[w] = 0;
        }
        return false;
    };
    if (rec(rec, 0)) return result;
    return std::nullopt;
}

} // namespace mang
