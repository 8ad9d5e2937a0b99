#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <string>
#include <tuple>
#include <vector>

#include "surface.hpp"

namespace mang {

enum class EdgeKind { BoundarySegment, ArcEdge };

// One edge of a face walk, clockwise. Boundary segments carry the lift of
// their left endpoint in the face's representative drawing (for the polygon,
// the segment index i of edge [i, i+1 mod N]). Arc edges carry the arc id,
// the deck shift of the copy used, and the traversal direction relative to
// the arc's canonical orientation (bottom->top, left->right, i->j).
struct FaceEdge {
    EdgeKind kind;
    Boundary boundary = Boundary::P;
    i64 lift = 0;
    int arc = -1;
    i64 shift = 0;
    bool reversed = false;

    std::string token(SurfaceKind sk) const {
        if (kind == EdgeKind::BoundarySegment) {
            if (sk == SurfaceKind::Polygon) return "b" + std::to_string(lift);
            return std::string("b") + boundary_char(boundary) + std::to_string(lift);
        }
        std::string t = "a" + std::to_string(arc);
        if (shift != 0) t += "@" + std::to_string(shift);
        return t;
    }

    auto key() const {
        return std::make_tuple(kind == EdgeKind::ArcEdge ? 1 : 0,
                               int(boundary), lift, arc, shift,
                               reversed ? 1 : 0);
    }
};

struct Face {
    std::vector<FaceEdge> edges;
    bool annular = false;

    int size() const { return int(edges.size()); }

    std::string text(const MarkedSurface& s) const {
        std::string out;
        for (const auto& e : edges) {
            if (!out.empty()) out += ' ';
            out += e.token(s.kind);
        }
        if (annular) out += " (annular)";
        return out;
    }

    std::vector<std::tuple<int, int, i64, int, i64, int>> key() const {
        std::vector<std::tuple<int, int, i64, int, i64, int>> k;
        k.reserve(edges.size());
        for (const auto& e : edges) k.push_back(e.key());
        return k;
    }
};

struct Angulation {
    MarkedSurface surface;
    std::vector<Arc> arcs; // normalized, sorted; ids = positions
    std::vector<Face> faces;
};

namespace detail {

inline i64 arc_span(const MarkedSurface& s, const Arc& a) {
    return i64(a.k) * s.m + 1;
}

// ---- polygon faces ----------------------------------------------------

// Half-edge walk over the chord diagram of the disk. The rotation at vertex
// v lists incident edge-ends clockwise: neighbors w ordered by (w - v) mod N.
// A face walk departs via the clockwise predecessor of the arriving end;
// interior faces come out in clockwise edge order. The orbit traversing the
// boundary segments backward (i+1 -> i) is the exterior and is skipped.
inline std::vector<Face> polygon_faces(const MarkedSurface& s,
                                       const std::vector<Arc>& arcs) {
    int N = s.boundary_points();
    struct End {
        int edge;
        int tag; // 0 = at the "from" endpoint of the edge, 1 = at "to"
    };
    std::vector<std::array<int, 2>> everts; // edge -> {from, to}
    everts.reserve(N + arcs.size());
    for (int i = 0; i < N; ++i) everts.push_back({i, (i + 1) % N});
    for (const auto& a : arcs) everts.push_back({int(a.i), int(a.j)});

    std::vector<std::vector<End>> rot(N);
    for (int e = 0; e < int(everts.size()); ++e) {
        rot[everts[e][0]].push_back(End{e, 0});
        rot[everts[e][1]].push_back(End{e, 1});
    }
    for (int v = 0; v < N; ++v)
        std::sort(rot[v].begin(), rot[v].end(), [&](const End& a, const End& b) {
            int wa = everts[a.edge][1 - a.tag], wb = everts[b.edge][1 - b.tag];
            i64 ka = imod(wa - v, N), kb = imod(wb - v, N);
            if (ka != kb) return ka < kb;
            return a.edge < b.edge;
        });
    auto end_pos = [&](int v, int edge, int tag) {
        for (int i = 0; i < int(rot[v].size()); ++i)
            if (rot[v][i].edge == edge && rot[v][i].tag == tag) return i;
        assert(false);
        return -1;
    };

    // darts: (e, d); d=0 traverses from->to, d=1 the reverse
    int E = int(everts.size());
    std::vector<char> used(2 * E, 0);
    for (int i = 0; i < N; ++i) used[2 * i + 1] = 1; // exterior orbit

    std::vector<Face> faces;
    for (int start = 0; start < 2 * E; ++start) {
        if (used[start]) continue;
        Face f;
        int dart = start;
        do {
            used[dart] = 1;
            int e = dart / 2, d = dart % 2;
            FaceEdge fe;
            if (e < N) {
                fe.kind = EdgeKind::BoundarySegment;
                fe.lift = e;
            } else {
                fe.kind = EdgeKind::ArcEdge;
                fe.arc = e - N;
            }
            fe.reversed = d == 1;
            f.edges.push_back(fe);
            int head = everts[e][1 - d];
            int pos = end_pos(head, e, 1 - d);
            const auto& ends = rot[head];
            const End& dep = ends[(pos + ends.size() - 1) % ends.size()];
            dart = 2 * dep.edge + dep.tag;
        } while (dart != start);
        faces.push_back(std::move(f));
    }
    return faces;
}

// ---- strip faces -------------------------------------------------------

// Work in the quotient: one vertex per boundary-point residue, one edge per
// boundary segment and per arc. Rotations at the vertices, clockwise, read
// off the straight-segment drawing in the cover:
//   bottom vertex: [segment end arriving from the left,
//                   peripheral right ends by span ascending,
//                   transjective ends by (y*mp - x*mq) ascending,
//                   peripheral left ends by span descending,
//                   segment end leaving to the right]
//   top vertex:    [segment end leaving to the right,
//                   peripheral left ends by span ascending,
//                   transjective ends by (y*mp - x*mq) ascending,
//                   peripheral right ends by span descending,
//                   segment end arriving from the left]
// Face rule: depart via the clockwise predecessor of the arriving end. The
// two rim orbits (bottom segments forward, top segments backward) are not
// faces. Each remaining orbit is walked with a tracked cover lift: the orbit
// is a disk iff the lift closes up; otherwise it is one of the two sides of
// a single annular region.
inline std::vector<Face> strip_faces(const MarkedSurface& s,
                                     const std::vector<Arc>& arcs) {
    i64 mp = s.period(Boundary::P), mq = s.period(Boundary::Q);
    int nseg = int(mp + mq);
    int E = nseg + int(arcs.size());

    auto is_bottom_seg = [&](int e) { return e < mp; };
    auto is_top_seg = [&](int e) { return e >= mp && e < nseg; };
    auto vat = [&](Boundary b, i64 lift) {
        return b == Boundary::P ? int(imod(lift, mp)) : int(mp + imod(lift, mq));
    };

    auto end_vertex = [&](int e, int tag) -> int {
        if (is_bottom_seg(e)) return vat(Boundary::P, e + tag);
        if (is_top_seg(e)) return vat(Boundary::Q, (e - mp) + tag);
        const Arc& a = arcs[e - nseg];
        if (a.kind == ArcKind::Transjective)
            return tag == 0 ? vat(Boundary::P, a.x) : vat(Boundary::Q, a.y);
        return vat(a.boundary, tag == 0 ? a.u : a.u + arc_span(s, a));
    };
    struct Key {
        int family;
        i64 k1;
    };
    auto end_key = [&](int e, int tag) -> Key {
        if (is_bottom_seg(e)) return Key{tag == 1 ? 0 : 4, 0};
        if (is_top_seg(e)) return Key{tag == 0 ? 0 : 4, 0};
        const Arc& a = arcs[e - nseg];
        if (a.kind == ArcKind::Transjective)
            return Key{2, a.y * mp - a.x * mq};
        i64 span = arc_span(s, a);
        bool left_end = tag == 0;
        if (a.boundary == Boundary::P)
            return left_end ? Key{3, -span} : Key{1, span};
        return left_end ? Key{1, span} : Key{3, -span};
    };

    struct StripEnd {
        int edge;
        int tag;
    };
    std::vector<std::vector<StripEnd>> rot(nseg);
    for (int e = 0; e < E; ++e)
        for (int tag = 0; tag < 2; ++tag)
            rot[end_vertex(e, tag)].push_back(StripEnd{e, tag});
    for (auto& r : rot)
        std::sort(r.begin(), r.end(), [&](const StripEnd& a, const StripEnd& b) {
            Key ka = end_key(a.edge, a.tag), kb = end_key(b.edge, b.tag);
            if (ka.family != kb.family) return ka.family < kb.family;
            if (ka.k1 != kb.k1) return ka.k1 < kb.k1;
            if (a.edge != b.edge) return a.edge < b.edge;
            return a.tag < b.tag;
        });
    auto end_pos = [&](int v, int e, int tag) {
        for (int i = 0; i < int(rot[v].size()); ++i)
            if (rot[v][i].edge == e && rot[v][i].tag == tag) return i;
        assert(false);
        return -1;
    };

    // traverse dart (e, d) whose tail sits at cover lift `from`
    struct Step {
        i64 head_lift;
        FaceEdge fe;
    };
    auto step = [&](int e, int d, i64 from) -> Step {
        Step st;
        FaceEdge& fe = st.fe;
        fe.reversed = d == 1;
        if (e < nseg) {
            fe.kind = EdgeKind::BoundarySegment;
            fe.boundary = is_bottom_seg(e) ? Boundary::P : Boundary::Q;
            fe.lift = d == 0 ? from : from - 1;
            st.head_lift = d == 0 ? from + 1 : from - 1;
            return st;
        }
        const Arc& a = arcs[e - nseg];
        fe.kind = EdgeKind::ArcEdge;
        fe.arc = e - nseg;
        if (a.kind == ArcKind::Transjective) {
            if (d == 0) {
                fe.shift = floor_div(from - a.x, mp);
                st.head_lift = a.y + fe.shift * mq;
            } else {
                fe.shift = floor_div(from - a.y, mq);
                st.head_lift = a.x + fe.shift * mp;
            }
            return st;
        }
        i64 per = s.period(a.boundary), span = arc_span(s, a);
        if (d == 0) {
            fe.shift = floor_div(from - a.u, per);
            st.head_lift = from + span;
        } else {
            fe.shift = floor_div(from - a.u - span, per);
            st.head_lift = from - span;
        }
        return st;
    };
    auto tail_lift = [&](int e, int d) -> i64 {
        if (e < nseg) {
            i64 base = is_bottom_seg(e) ? e : e - mp;
            return base + (d == 0 ? 0 : 1);
        }
        const Arc& a = arcs[e - nseg];
        if (a.kind == ArcKind::Transjective) return d == 0 ? a.x : a.y;
        return d == 0 ? a.u : a.u + arc_span(s, a);
    };

    std::vector<char> used(2 * E, 0);
    for (int e = 0; e < nseg; ++e)
        used[2 * e + (is_bottom_seg(e) ? 0 : 1)] = 1; // rim orbits

    std::vector<Face> disks;
    std::vector<Face> nondisk;
    for (int start = 0; start < 2 * E; ++start) {
        if (used[start]) continue;
        Face f;
        int dart = start;
        i64 lift = tail_lift(start / 2, start % 2);
        i64 lift0 = lift;
        do {
            used[dart] = 1;
            int e = dart / 2, d = dart % 2;
            Step st = step(e, d, lift);
            f.edges.push_back(st.fe);
            lift = st.head_lift;
            int arriving_tag = d == 0 ? 1 : 0;
            int head = end_vertex(e, arriving_tag);
            int pos = end_pos(head, e, arriving_tag);
            const auto& ends = rot[head];
            const StripEnd& dep = ends[(pos + ends.size() - 1) % ends.size()];
            dart = 2 * dep.edge + dep.tag;
        } while (dart != start);
        if (lift == lift0)
            disks.push_back(std::move(f));
        else
            nondisk.push_back(std::move(f));
    }

    if (!nondisk.empty()) {
        assert(nondisk.size() == 2);
        Face merged;
        merged.annular = true;
        for (auto& w : nondisk)
            for (auto& e : w.edges) merged.edges.push_back(e);
        disks.push_back(std::move(merged));
    }
    return disks;
}

// Canonical representative of a face: among all rotations (deck-normalized
// so the starting edge uses its base lift / zero shift), take the one with
// the lexicographically smallest edge-key sequence.
inline void canonicalize_face(const MarkedSurface& s, Face& f) {
    if (f.annular) return;
    int n = f.size();
    bool have = false;
    Face best;
    for (int r = 0; r < n; ++r) {
        Face g;
        g.edges.reserve(n);
        for (int i = 0; i < n; ++i) g.edges.push_back(f.edges[(r + i) % n]);
        if (s.kind == SurfaceKind::Strip) {
            const FaceEdge& e0 = g.edges[0];
            i64 t = e0.kind == EdgeKind::BoundarySegment
                        ? floor_div(e0.lift, s.period(e0.boundary))
                        : e0.shift;
            if (t != 0)
                for (auto& e : g.edges) {
                    if (e.kind == EdgeKind::BoundarySegment)
                        e.lift -= t * s.period(e.boundary);
                    else
                        e.shift -= t;
                }
        }
        if (!have || g.key() < best.key()) {
            best = std::move(g);
            have = true;
        }
    }
    f = std::move(best);
}

} // namespace detail

// Complementary regions of a pairwise non-crossing arc collection, each as a
// clockwise edge cycle. Regions that are not disks are merged into a single
// region flagged annular (the caller decides whether that is an error).
inline std::vector<Face> extract_faces(const MarkedSurface& s,
                                       std::vector<Arc> arcs) {
    for (auto& a : arcs) a = normalize_arc(s, a);
    std::sort(arcs.begin(), arcs.end());
    std::vector<Face> faces = s.kind == SurfaceKind::Polygon
                                  ? detail::polygon_faces(s, arcs)
                                  : detail::strip_faces(s, arcs);
    for (auto& f : faces) detail::canonicalize_face(s, f);
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.annular != b.annular) return b.annular;
        return a.key() < b.key();
    });
    return faces;
}

// Validate a full (m+2)-angulation: arcs are m-diagonals, pairwise distinct
// and non-crossing, of the exact count for the surface, and every
// complementary region is an (m+2)-gon disk.
inline Angulation validate_angulation(const MarkedSurface& s,
                                      std::vector<Arc> arcs) {
    for (const auto& a : arcs)
        if (!is_m_diagonal(s, a)) fail("NotMDiagonal", "arc " + a.text());
    for (auto& a : arcs) a = normalize_arc(s, a);
    std::sort(arcs.begin(), arcs.end());
    for (size_t i = 0; i + 1 < arcs.size(); ++i)
        if (arcs[i] == arcs[i + 1]) fail("DuplicateArc", "arc " + arcs[i].text());
    int expected = s.kind == SurfaceKind::Polygon ? s.n - 1 : s.p + s.q;
    if (int(arcs.size()) != expected)
        fail("WrongArcCount", "expected " + std::to_string(expected) + " arcs, got " +
                                  std::to_string(arcs.size()));
    for (size_t i = 0; i < arcs.size(); ++i)
        for (size_t j = i + 1; j < arcs.size(); ++j)
            if (arcs_cross(s, arcs[i], arcs[j]))
                fail("CrossingArcs", arcs[i].text() + " crosses " + arcs[j].text());

    Angulation ang;
    ang.surface = s;
    ang.arcs = arcs;
    ang.faces = extract_faces(s, arcs);
    int expected_faces = s.kind == SurfaceKind::Polygon ? s.n : s.p + s.q;
    for (const auto& f : ang.faces) {
        if (f.annular) fail("BadFace", "annular region: " + f.text(s));
        if (f.size() != s.m + 2)
            fail("BadFace", "region with " + std::to_string(f.size()) +
                                " sides: " + f.text(s));
    }
    if (int(ang.faces.size()) != expected_faces)
        fail("BadFace", "expected " + std::to_string(expected_faces) +
                            " regions, got " + std::to_string(ang.faces.size()));
    return ang;
}

// All m-diagonals available to the enumerator, normalized and sorted. On the
// strip the transjective family is cut off at the winding bound: in common
// physical units (bottom lift u at u*mq, top lift v at v*mp) the horizontal
// extent |x*mq - y*mp| may be at most winding_bound whole periods mp*mq.
inline std::vector<Arc> candidate_arcs(const MarkedSurface& s, int winding_bound) {
    std::vector<Arc> out;
    if (s.kind == SurfaceKind::Polygon) {
        int N = s.boundary_points();
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                Arc a = Arc::diagonal(i, j);
                if (is_m_diagonal(s, a)) out.push_back(a);
            }
        return out;
    }
    i64 mp = s.period(Boundary::P), mq = s.period(Boundary::Q);
    i64 limit = i64(winding_bound) * mp * mq;
    for (i64 x = 0; x < mp; ++x) {
        i64 ylo = floor_div(x * mq - limit, mp) - 1;
        i64 yhi = floor_div(x * mq + limit, mp) + 1;
        for (i64 y = ylo; y <= yhi; ++y) {
            if (imod(y - x, s.m) != 0) continue;
            if (std::abs(x * mq - y * mp) > limit) continue;
            out.push_back(Arc::transjective(x, y));
        }
    }
    for (Boundary b : {Boundary::P, Boundary::Q}) {
        i64 per = s.period(b);
        for (i64 u = 0; u < per; ++u)
            for (int k = 1; i64(k) * s.m + 1 < per; ++k)
                out.push_back(Arc::peripheral(b, u, k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Complete list of (m+2)-angulations (winding-bounded on the strip), ordered
// by the sorted arc text forms.
inline std::vector<Angulation> enumerate_angulations(const MarkedSurface& s,
                                                     int winding_bound = 2) {
    std::vector<Arc> cand = candidate_arcs(s, winding_bound);
    size_t want = s.kind == SurfaceKind::Polygon ? size_t(s.n - 1) : size_t(s.p + s.q);
    std::vector<Angulation> out;
    std::vector<Arc> chosen;

    auto rec = [&](auto&& self, size_t from) -> void {
        if (chosen.size() == want) {
            try {
                out.push_back(validate_angulation(s, chosen));
            } catch (const error&) {
                // maximal non-crossing sets that cut off a non-disk region
            }
            return;
        }
        if (cand.size() - from < want - chosen.size()) return;
        for (size_t i = from; i < cand.size(); ++i) {
            bool ok = true;
            for (const Arc& c : chosen)
                if (arcs_cross(s, c, cand[i])) {
                    ok = false;
                    break;
                }
            if (ok) {
                chosen.push_back(cand[i]);
                self(self, i + 1);
                chosen.pop_back();
            }
        }
    };
    rec(rec, 0);

    auto key = [](const Angulation& a) {
        std::vector<std::string> k;
        k.reserve(a.arcs.size());
        for (const auto& arc : a.arcs) k.push_back(arc.text());
        return k;
    };
    std::sort(out.begin(), out.end(), [&](const Angulation& a, const Angulation& b) {
        return key(a) < key(b);
    });
    return out;
}

} // namespace mang
