#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "angulation.hpp"
#include "classify.hpp"
#include "constructions.hpp"
#include "io.hpp"
#include "quiver.hpp"

namespace mang {

struct VerifyFailure {
    std::string check;
    std::string detail;
    std::string instance; // the failing angulation, serialized
};

struct StripVerifyStats {
    long long instances = 0;
    long long rep_infinite = 0;
    long long rep_finite = 0;
    long long root_cycle_free = 0;
    long long disconnected = 0;
    long long with_saturated_cycles = 0;
    long long two_rim_faces = 0;
};

namespace detail {

inline long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace detail

// Number of (m+2)-angulations of the (nm+2)-gon.
inline long long fuss_catalan(int m, int n) {
    return detail::binom(i64(m + 1) * n, n - 1) / n;
}

// All per-instance checks for one strip angulation. Returns the first
// failing check, if any, and accumulates counters either way.
inline std::optional<VerifyFailure> check_strip_instance(const Angulation& ang,
                                                         StripVerifyStats& st,
                                                         bool all_cuts = false) {
    const MarkedSurface& s = ang.surface;
    ++st.instances;
    auto bad = [&](const std::string& check, const std::string& detail) {
        return VerifyFailure{check, detail, angulation_text(ang)};
    };

    BoundQuiver q = bound_quiver(ang);
    validate_quiver(q);

    if (int(ang.arcs.size()) != s.p + s.q || ang.faces.size() != ang.arcs.size())
        return bad("counting", std::to_string(ang.arcs.size()) + " arcs, " +
                                   std::to_string(ang.faces.size()) + " regions");

    Diagnosed g = is_gentle(q);
    if (!g.ok) return bad("gentle", g.why);

    auto sat = saturated_cycles(q);
    if (!sat.empty()) ++st.with_saturated_cycles;
    for (const auto& c : sat)
        if (int(c.size()) != s.m + 2)
            return bad("saturated-length", "cycle of length " +
                                               std::to_string(c.size()) +
                                               ", expected " +
                                               std::to_string(s.m + 2));

    // one transjective residue class exactly when the type is infinite
    bool inf = representation_type(q) == RepType::Infinite;
    (inf ? st.rep_infinite : st.rep_finite)++;
    auto census = transjective_census(ang);
    if (inf != (census.size() == 1))
        return bad("census", "representation type " +
                                 std::string(rep_type_name(
                                     inf ? RepType::Infinite : RepType::Finite)) +
                                 " with " + std::to_string(census.size()) +
                                 " residue classes");

    // unroll succeeds exactly when there is no root cycle
    auto roots = root_cycles(q);
    if (roots.empty()) {
        ++st.root_cycle_free;
        try {
            Angulation u = unroll(ang);
            if (u.faces.size() != ang.faces.size() + 1)
                return bad("unroll", "expected one extra region, got " +
                                         std::to_string(u.faces.size()));
            if (!quivers_isomorphic(q, bound_quiver(u)))
                return bad("unroll", "bound quiver changed: " + angulation_text(u));
        } catch (const error& e) {
            return bad("unroll", e.what());
        }
    } else {
        try {
            unroll(ang);
            return bad("unroll", "succeeded despite a root cycle");
        } catch (const error& e) {
            if (e.kind() != "RootCyclePresent") return bad("unroll", e.what());
        }
    }

    // a region meeting both rims holds exactly two transjective arc sides,
    // one from each residue class (only meaningful for m >= 2)
    if (s.m >= 2) {
        for (const auto& f : ang.faces) {
            bool on_p = false, on_q = false;
            int transjective_sides = 0;
            std::set<int> classes;
            for (const auto& e : f.edges) {
                Boundary b = e.boundary;
                bool rim_edge = e.kind == EdgeKind::BoundarySegment;
                if (e.kind == EdgeKind::ArcEdge) {
                    const Arc& a = ang.arcs[e.arc];
                    if (a.kind == ArcKind::Peripheral) {
                        rim_edge = true;
                        b = a.boundary;
                    } else {
                        ++transjective_sides;
                        classes.insert(*component_index(s, a));
                    }
                }
                if (rim_edge) (b == Boundary::P ? on_p : on_q) = true;
            }
            if (!on_p || !on_q) continue;
            ++st.two_rim_faces;
            if (transjective_sides != 2 || classes.size() != 2)
                return bad("two-rim-face",
                           "region " + f.text(s) + " has " +
                               std::to_string(transjective_sides) +
                               " transjective sides in " +
                               std::to_string(classes.size()) + " classes");
        }
    }

    if (!is_connected(q)) {
        ++st.disconnected;
        return std::nullopt; // the structure test needs connectedness
    }
    PredicateResult pred = is_rep_infinite_mcta_Atilde(q, s.m);
    if (pred.holds != inf)
        return bad("structure-test",
                   pred.holds ? "test passes on a finite-type quiver"
                              : "test fails on an infinite-type quiver: " +
                                    pred.diagnostic);
    if (inf) {
        try {
            verify_extension_theorem(q, s.m, all_cuts);
        } catch (const error& e) {
            return bad("extension-theorem", e.what());
        }
    }
    return std::nullopt;
}

struct StripVerifyResult {
    StripVerifyStats stats;
    std::optional<VerifyFailure> failure;
};

inline StripVerifyResult verify_strip(const MarkedSurface& s, int winding_bound,
                                      bool all_cuts = false) {
    StripVerifyResult r;
    for (const auto& ang : enumerate_angulations(s, winding_bound)) {
        r.failure = check_strip_instance(ang, r.stats, all_cuts);
        if (r.failure) return r;
    }
    return r;
}

struct PolygonVerifyResult {
    long long count = 0;
    long long expected = 0;
    std::optional<VerifyFailure> failure;
};

inline PolygonVerifyResult verify_polygon(const MarkedSurface& s) {
    PolygonVerifyResult r;
    r.expected = fuss_catalan(s.m, s.n);
    for (const auto& ang : enumerate_angulations(s)) {
        ++r.count;
        auto bad = [&](const std::string& check, const std::string& detail) {
            return VerifyFailure{check, detail, angulation_text(ang)};
        };
        BoundQuiver q = bound_quiver(ang);
        validate_quiver(q);
        Diagnosed g = is_gentle(q);
        if (!g.ok) {
            r.failure = bad("gentle", g.why);
            return r;
        }
        for (const auto& c : saturated_cycles(q))
            if (int(c.size()) != s.m + 2) {
                r.failure = bad("saturated-length",
                                "cycle of length " + std::to_string(c.size()));
                return r;
            }
        if (!root_cycles(q).empty()) {
            r.failure = bad("root-cycle", "a disk angulation has a root cycle");
            return r;
        }
        if (representation_type(q) == RepType::Infinite) {
            r.failure = bad("rep-type", "infinite type on a disk");
            return r;
        }
    }
    if (r.count != r.expected)
        r.failure = VerifyFailure{
            "count", std::to_string(r.count) + " angulations, expected " +
                         std::to_string(r.expected),
            ""};
    return r;
}

} // namespace mang
