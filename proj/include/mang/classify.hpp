#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "angulation.hpp"
#include "quiver.hpp"

namespace mang {

enum class RepType { Finite, Infinite };

inline const char* rep_type_name(RepType t) {
    return t == RepType::Finite ? "finite" : "infinite";
}

// A letter is an arrow traversed forward (dir 0) or backward (dir 1).
using Letter = std::pair<int, int>;

namespace detail {

inline int letter_start(const BoundQuiver& q, Letter l) {
    const QArrow* a = q.arrow(l.first);
    return l.second == 0 ? a->src : a->tgt;
}

inline int letter_end(const BoundQuiver& q, Letter l) {
    const QArrow* a = q.arrow(l.first);
    return l.second == 0 ? a->tgt : a->src;
}

// Walk step l1 then l2 is forbidden when it backtracks or runs through a
// relation: forward-forward (a1,a2) or backward-backward (a2,a1).
inline bool letters_compose(const BoundQuiver& q, Letter l1, Letter l2) {
    if (letter_end(q, l1) != letter_start(q, l2)) return false;
    if (l1.first == l2.first && l1.second != l2.second) return false;
    if (l1.second == 0 && l2.second == 0 &&
        q.relations.count({l1.first, l2.first}))
        return false;
    if (l1.second == 1 && l2.second == 1 &&
        q.relations.count({l2.first, l1.first}))
        return false;
    return true;
}

// Lexicographically smallest rotation.
inline std::vector<Letter> min_rotation(const std::vector<Letter>& w) {
    std::vector<Letter> best = w;
    for (size_t s = 1; s < w.size(); ++s) {
        std::vector<Letter> cand;
        cand.reserve(w.size());
        for (size_t i = 0; i < w.size(); ++i) cand.push_back(w[(s + i) % w.size()]);
        if (cand < best) best = cand;
    }
    return best;
}

inline std::vector<Letter> reverse_walk(const std::vector<Letter>& w) {
    std::vector<Letter> r(w.rbegin(), w.rend());
    for (auto& l : r) l.second ^= 1;
    return r;
}

// Canonical form of an undirected cycle: smallest over all rotations of both
// traversal directions.
inline std::vector<Letter> canonical_cycle(const std::vector<Letter>& w) {
    auto a = min_rotation(w), b = min_rotation(reverse_walk(w));
    return a < b ? a : b;
}

inline std::map<int, std::vector<int>> relation_digraph(const BoundQuiver& q) {
    std::map<int, std::vector<int>> adj;
    for (const auto& a : q.arrows) adj[a.id];
    for (const auto& [x, y] : q.relations) adj[x].push_back(y);
    return adj;
}

// Longest directed path, counted in edges; nullopt when the graph has a
// directed cycle.
inline std::optional<int>
longest_path_edges(const std::map<int, std::vector<int>>& adj) {
    std::map<int, int> best;   // node -> longest path starting there
    std::map<int, int> state;  // 0 new, 1 open, 2 done
    bool cyclic = false;
    auto dfs = [&](auto&& self, int v) -> int {
        if (state[v] == 1) {
            cyclic = true;
            return 0;
        }
        if (state[v] == 2) return best[v];
        state[v] = 1;
        int r = 0;
        auto it = adj.find(v);
        if (it != adj.end())
            for (int w : it->second) r = std::max(r, 1 + self(self, w));
        state[v] = 2;
        best[v] = r;
        return r;
    };
    int longest = 0;
    for (const auto& [v, _] : adj) longest = std::max(longest, dfs(dfs, v));
    if (cyclic) return std::nullopt;
    return longest;
}

} // namespace detail

// Directed arrow-simple cycles of the relation digraph, each rotated to start
// at its smallest arrow id, listed in lexicographic order. On such a cycle
// every two consecutive arrows compose to zero.
inline std::vector<std::vector<int>> saturated_cycles(const BoundQuiver& q) {
    auto adj = detail::relation_digraph(q);
    std::vector<std::vector<int>> out;
    std::vector<int> ids;
    for (const auto& [v, _] : adj) ids.push_back(v);
    std::vector<int> path;
    std::set<int> on_path;
    auto dfs = [&](auto&& self, int start, int v) -> void {
        path.push_back(v);
        on_path.insert(v);
        for (int w : adj.at(v)) {
            if (w == start) {
                out.push_back(path);
            } else if (w > start && !on_path.count(w)) {
                self(self, start, w);
            }
        }
        on_path.erase(v);
        path.pop_back();
    };
    for (int s : ids) dfs(dfs, s, s);
    std::sort(out.begin(), out.end());
    return out;
}

// An undirected vertex-simple cycle of the underlying graph, stored as a
// closed reduced walk in canonical form.
struct RootCycle {
    std::vector<Letter> letters;
    bool oriented = false;      // all letters run the same way
    bool relation_free = false; // no two consecutive letters compose to zero

    bool operator==(const RootCycle& o) const { return letters == o.letters; }
    bool operator<(const RootCycle& o) const { return letters < o.letters; }
};

// Vertex-simple cycles of the underlying undirected multigraph (loops and
// parallel pairs included), except those that are saturated cycles of the
// relation digraph.
inline std::vector<RootCycle> root_cycles(const BoundQuiver& q) {
    std::set<std::vector<Letter>> seen;
    for (const auto& a : q.arrows)
        if (a.src == a.tgt) seen.insert({{a.id, 0}});

    std::vector<Letter> letters;
    std::set<int> used_vertices, used_arrows;
    auto dfs = [&](auto&& self, int start, int v) -> void {
        for (const auto& a : q.arrows) {
            if (a.src == a.tgt || used_arrows.count(a.id)) continue;
            int next;
            Letter l;
            if (a.src == v) {
                next = a.tgt;
                l = {a.id, 0};
            } else if (a.tgt == v) {
                next = a.src;
                l = {a.id, 1};
            } else {
                continue;
            }
            if (next == start) {
                if (letters.size() >= 1) {
                    letters.push_back(l);
                    seen.insert(detail::canonical_cycle(letters));
                    letters.pop_back();
                }
                continue;
            }
            if (next < start || used_vertices.count(next)) continue;
            used_vertices.insert(next);
            used_arrows.insert(a.id);
            letters.push_back(l);
            self(self, start, next);
            letters.pop_back();
            used_arrows.erase(a.id);
            used_vertices.erase(next);
        }
    };
    for (int s = 0; s < q.n_vertices; ++s) {
        used_vertices = {s};
        used_arrows.clear();
        letters.clear();
        dfs(dfs, s, s);
    }

    std::vector<RootCycle> out;
    for (const auto& w : seen) {
        RootCycle c;
        c.letters = w;
        c.oriented = true;
        c.relation_free = true;
        int n = int(w.size());
        for (int i = 0; i < n; ++i) {
            if (w[i].second != w[0].second) c.oriented = false;
            Letter l1 = w[i], l2 = w[(i + 1) % n];
            if (l1.second == 0 && l2.second == 0 &&
                q.relations.count({l1.first, l2.first}))
                c.relation_free = false;
            if (l1.second == 1 && l2.second == 1 &&
                q.relations.count({l2.first, l1.first}))
                c.relation_free = false;
        }
        bool saturated = c.oriented && !c.relation_free;
        if (saturated) {
            // oriented, so canonical form is all-forward
            saturated = true;
            for (int i = 0; i < n && saturated; ++i)
                if (!q.relations.count({w[i].first, w[(i + 1) % n].first}))
                    saturated = false;
        }
        if (!saturated) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// A band: a closed reduced relation-avoiding walk that visits no letter
// twice. Found by cycle search in the letter-transition graph; returns the
// smallest rotation of the first cycle met, or nothing.
inline std::optional<std::vector<Letter>> find_band(const BoundQuiver& q) {
    auto g = is_gentle(q);
    if (!g.ok) fail("NotGentle", g.why);
    std::vector<Letter> nodes;
    for (const auto& a : q.arrows) {
        nodes.push_back({a.id, 0});
        nodes.push_back({a.id, 1});
    }
    std::map<Letter, std::vector<Letter>> adj;
    for (Letter l1 : nodes)
        for (Letter l2 : nodes)
            if (detail::letters_compose(q, l1, l2)) adj[l1].push_back(l2);

    std::map<Letter, int> state; // 0 new, 1 open, 2 done
    std::vector<Letter> path;
    std::optional<std::vector<Letter>> band;
    auto dfs = [&](auto&& self, Letter v) -> void {
        state[v] = 1;
        path.push_back(v);
        for (Letter w : adj[v]) {
            if (band) return;
            if (state[w] == 1) {
                auto it = std::find(path.begin(), path.end(), w);
                band = detail::min_rotation(std::vector<Letter>(it, path.end()));
                return;
            }
            if (state[w] == 0) self(self, w);
        }
        path.pop_back();
        state[v] = 2;
    };
    for (Letter v : nodes) {
        if (band) break;
        if (state[v] == 0) dfs(dfs, v);
    }
    return band;
}

inline RepType representation_type(const BoundQuiver& q) {
    return find_band(q) ? RepType::Infinite : RepType::Finite;
}

// Global dimension of the gentle algebra; nullopt means infinite. Finite
// exactly when the relation digraph is acyclic, and then one more than the
// longest chain of composable relations.
inline std::optional<int> gldim_gentle(const BoundQuiver& q) {
    auto g = is_gentle(q);
    if (!g.ok) fail("NotGentle", g.why);
    if (q.arrows.empty()) return 0;
    auto longest = detail::longest_path_edges(detail::relation_digraph(q));
    if (!longest) return std::nullopt;
    return 1 + *longest;
}

struct PredicateResult {
    bool holds;
    std::string diagnostic; // first failing condition; empty when holds
};

// Structural test for infinite representation type at level m. The quiver
// must be connected (else Disconnected is thrown); the test then requires:
// gentle; exactly one relation-free root cycle, and it is not oriented;
// every other root cycle oriented; every saturated cycle of length m+2; and
// no chain of more than m-1 composable relations among arrows off the
// saturated cycles.
inline PredicateResult is_rep_infinite_mcta_Atilde(const BoundQuiver& q, int m) {
    if (m < 1) fail("InvalidLabel", "m must be at least 1");
    if (!is_connected(q)) fail("Disconnected", "quiver is not connected");
    auto g = is_gentle(q);
    if (!g.ok) return {false, "not gentle: " + g.why};

    auto roots = root_cycles(q);
    int free_count = 0;
    const RootCycle* free_cycle = nullptr;
    for (const auto& c : roots)
        if (c.relation_free) {
            ++free_count;
            free_cycle = &c;
        }
    if (free_count != 1)
        return {false, "expected exactly one relation-free root cycle, found " +
                           std::to_string(free_count)};
    if (free_cycle->oriented)
        return {false, "the relation-free root cycle is oriented"};
    for (const auto& c : roots)
        if (!c.relation_free && !c.oriented)
            return {false, "a root cycle with relations is not oriented"};

    auto sat = saturated_cycles(q);
    for (const auto& c : sat)
        if (int(c.size()) != m + 2)
            return {false, "saturated cycle of length " +
                               std::to_string(c.size()) + ", expected " +
                               std::to_string(m + 2)};

    std::set<int> on_cycle;
    for (const auto& c : sat) on_cycle.insert(c.begin(), c.end());
    std::map<int, std::vector<int>> adj;
    for (const auto& a : q.arrows)
        if (!on_cycle.count(a.id)) adj[a.id];
    for (const auto& [x, y] : q.relations)
        if (!on_cycle.count(x) && !on_cycle.count(y)) adj[x].push_back(y);
    auto run = detail::longest_path_edges(adj);
    if (!run) return {false, "unsaturated relation chain closes a cycle"};
    if (*run > m - 1)
        return {false, "chain of " + std::to_string(*run) +
                           " composable relations off the saturated cycles, "
                           "allowed at most " +
                           std::to_string(m - 1)};
    return {true, ""};
}

// Residues of the transjective arcs of a strip angulation.
inline std::set<int> transjective_census(const Angulation& ang) {
    if (ang.surface.kind != SurfaceKind::Strip)
        fail("NotStrip", "census is defined for strip angulations only");
    std::set<int> classes;
    for (const auto& a : ang.arcs) {
        auto c = component_index(ang.surface, a);
        if (c) classes.insert(*c);
    }
    return classes;
}

struct ClassificationReport {
    Diagnosed gentle{true, ""};
    bool connected = true;
    std::vector<std::vector<int>> saturated;
    std::vector<RootCycle> roots;
    std::optional<std::vector<Letter>> band; // only when gentle
    std::optional<RepType> rep;              // only when gentle
    std::optional<int> gldim;                // only when gentle and finite
    bool gldim_infinite = false;
    std::optional<int> m;                    // level the predicate used
    std::optional<PredicateResult> predicate;
    std::string predicate_note; // why the predicate was skipped
};

// Full report. When m is not supplied it is inferred from the saturated
// cycle lengths if they agree; otherwise the predicate is skipped with a
// note.
inline ClassificationReport classify(const BoundQuiver& q,
                                     std::optional<int> m = std::nullopt) {
    validate_quiver(q);
    ClassificationReport r;
    r.gentle = is_gentle(q);
    r.connected = is_connected(q);
    r.saturated = saturated_cycles(q);
    r.roots = root_cycles(q);
    if (r.gentle.ok) {
        r.band = find_band(q);
        r.rep = r.band ? RepType::Infinite : RepType::Finite;
        auto gd = gldim_gentle(q);
        r.gldim_infinite = !gd.has_value();
        r.gldim = gd;
    }
    r.m = m;
    if (!r.m) {
        std::set<int> lens;
        for (const auto& c : r.saturated) lens.insert(int(c.size()));
        if (lens.size() == 1 && *lens.begin() >= 3)
            r.m = *lens.begin() - 2;
        else if (lens.empty())
            r.predicate_note = "no saturated cycle to infer the level from";
        else
            r.predicate_note =
                "could not infer the level from the saturated cycle lengths";
    }
    if (r.m) {
        if (!r.connected)
            r.predicate_note = "quiver is not connected";
        else
            r.predicate = is_rep_infinite_mcta_Atilde(q, *r.m);
    }
    return r;
}

} // namespace mang
