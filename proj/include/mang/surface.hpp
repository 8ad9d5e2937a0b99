#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"

namespace mang {

using i64 = long long;

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

inline i64 imod(i64 a, i64 b) {
    i64 r = a % b;
    return r < 0 ? r + (b < 0 ? -b : b) : r;
}

enum class SurfaceKind { Polygon, Strip };
enum class Boundary { P, Q };

inline char boundary_char(Boundary b) { return b == Boundary::P ? 'p' : 'q'; }

// Polygon: disk with N = n*m + 2 marked boundary points labeled 0..N-1
// clockwise. Strip: universal cover of an annulus with p marked points on the
// inner and q on the outer boundary, drawn as two horizontal lines; the
// bottom line B_p carries m*p marked points per period, the top line B_q
// carries m*q, both indexed by all of Z. The deck transformation shifts
// bottom labels by m*p and top labels by m*q simultaneously.
struct MarkedSurface {
    SurfaceKind kind;
    int m = 1;
    int n = 0; // polygon only
    int p = 0, q = 0; // strip only

    static MarkedSurface polygon(int m, int n) {
        if (m < 1) fail("InvalidLabel", "polygon needs m >= 1");
        if (n < 1) fail("InvalidLabel", "polygon needs n >= 1");
        MarkedSurface s;
        s.kind = SurfaceKind::Polygon;
        s.m = m;
        s.n = n;
        return s;
    }

    static MarkedSurface strip(int m, int p, int q) {
        if (m < 1) fail("InvalidLabel", "strip needs m >= 1");
        if (p < 1 || q < 1) fail("InvalidLabel", "strip needs p, q >= 1");
        MarkedSurface s;
        s.kind = SurfaceKind::Strip;
        s.m = m;
        s.p = p;
        s.q = q;
        return s;
    }

    int boundary_points() const {
        return kind == SurfaceKind::Polygon ? n * m + 2 : 0;
    }

    i64 period(Boundary b) const {
        return b == Boundary::P ? i64(m) * p : i64(m) * q;
    }

    bool operator==(const MarkedSurface& o) const {
        if (kind != o.kind || m != o.m) return false;
        return kind == SurfaceKind::Polygon ? n == o.n : (p == o.p && q == o.q);
    }
};

enum class ArcKind { PolygonDiagonal, Transjective, Peripheral };

// One arc on a marked surface.
//   PolygonDiagonal: chord {i, j} of the disk, 0 <= i < j < N.
//   Transjective:    strip arc from bottom lift x to top lift y.
//   Peripheral:      strip arc on one boundary from lift u to u + k*m + 1,
//                    cutting off a (k*m+2)-gon against that boundary.
struct Arc {
    ArcKind kind;
    int i = 0, j = 0;                  // polygon
    i64 x = 0, y = 0;                  // transjective
    Boundary boundary = Boundary::P;   // peripheral
    i64 u = 0;
    int k = 0;

    static Arc diagonal(int i, int j) {
        Arc a;
        a.kind = ArcKind::PolygonDiagonal;
        a.i = std::min(i, j);
        a.j = std::max(i, j);
        return a;
    }

    static Arc transjective(i64 x, i64 y) {
        Arc a;
        a.kind = ArcKind::Transjective;
        a.x = x;
        a.y = y;
        return a;
    }

    static Arc peripheral(Boundary b, i64 u, int k) {
        Arc a;
        a.kind = ArcKind::Peripheral;
        a.boundary = b;
        a.u = u;
        a.k = k;
        return a;
    }

    // Strict total order so arc sets have one canonical presentation.
    std::tuple<int, i64, i64, i64, i64> key() const {
        switch (kind) {
        case ArcKind::PolygonDiagonal:
            return {0, i, j, 0, 0};
        case ArcKind::Transjective:
            return {1, x, y, 0, 0};
        case ArcKind::Peripheral:
            return {2, boundary == Boundary::P ? 0 : 1, u, k, 0};
        }
        return {3, 0, 0, 0, 0};
    }

    bool operator==(const Arc& o) const { return key() == o.key(); }
    bool operator<(const Arc& o) const { return key() < o.key(); }

    std::string text() const {
        std::ostringstream os;
        switch (kind) {
        case ArcKind::PolygonDiagonal:
            os << "d " << i << ' ' << j;
            break;
        case ArcKind::Transjective:
            os << "t " << x << ' ' << y;
            break;
        case ArcKind::Peripheral:
            os << "r " << boundary_char(boundary) << ' ' << u << ' ' << k;
            break;
        }
        return os.str();
    }
};

// m-diagonal test. Polygon diagonals must cut off j-i ≡ 1 (mod m) with at
// least m+1 boundary segments on each side. Peripherals must cut off a
// polygon strictly smaller than one full boundary period (k*m+1 == period
// would close up into a loop, k*m+1 > period is not embedded). Transjective
// arcs are m-diagonals iff both endpoints sit in the same congruence class
// mod m; any winding is allowed.
inline bool is_m_diagonal(const MarkedSurface& s, const Arc& a) {
    if (s.kind == SurfaceKind::Polygon) {
        if (a.kind != ArcKind::PolygonDiagonal) return false;
        int N = s.boundary_points();
        if (a.i < 0 || a.j >= N || a.i == a.j)
            fail("InvalidLabel", "diagonal (" + std::to_string(a.i) + "," +
                                     std::to_string(a.j) + ") out of range for a " +
                                     std::to_string(N) + "-gon");
        i64 d = a.j - a.i;
        if (imod(d - 1, s.m) != 0) return false;
        return d >= s.m + 1 && N - d >= s.m + 1;
    }
    switch (a.kind) {
    case ArcKind::PolygonDiagonal:
        return false;
    case ArcKind::Transjective:
        return imod(a.x, s.m) == imod(a.y, s.m);
    case ArcKind::Peripheral:
        return a.k >= 1 && i64(a.k) * s.m + 1 < s.period(a.boundary);
    }
    return false;
}

// Canonical representative of an arc's deck-transformation orbit. The
// polygon has trivial deck group. A transjective arc is shifted so its
// bottom endpoint lands in [0, m*p); a peripheral so its left endpoint
// lands in [0, period).
inline Arc normalize_arc(const MarkedSurface& s, Arc a) {
    if (s.kind == SurfaceKind::Polygon || a.kind == ArcKind::PolygonDiagonal)
        return a;
    if (a.kind == ArcKind::Transjective) {
        i64 t = floor_div(a.x, s.period(Boundary::P));
        a.x -= t * s.period(Boundary::P);
        a.y -= t * s.period(Boundary::Q);
    } else {
        a.u = imod(a.u, s.period(a.boundary));
    }
    return a;
}

// Which of the m transjective components an arc's object lives in. Defined
// only for transjective arcs (the shared residue of both endpoint labels).
inline std::optional<int> component_index(const MarkedSurface& s, const Arc& a) {
    if (a.kind != ArcKind::Transjective) return std::nullopt;
    return int(imod(a.x, s.m));
}

namespace detail {

inline int sgn(i64 v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

// Chords {a,b} and {c,d} of a disk cross iff exactly one of c,d lies
// strictly between a and b along the boundary circle.
inline bool chords_cross(int a, int b, int c, int d) {
    auto inside = [&](int v) { return a < v && v < b; };
    return inside(c) != inside(d) && c != a && c != b && d != a && d != b;
}

// Two transjective lifts (x1,y1), (x2,y2) cross in the annulus iff some deck
// translate of the second separates the endpoints of the first: sign(x1-x2')
// and sign(y1-y2') strictly opposite. Shared endpoints (zero) do not count.
inline bool cross_tt(const MarkedSurface& s, const Arc& f, const Arc& g) {
    i64 mp = s.period(Boundary::P), mq = s.period(Boundary::Q);
    // physical slopes: bottom lift x sits at abscissa x*mq, top lift y at y*mp
    i64 lo = std::min(floor_div(f.x - g.x, mp), floor_div(f.y - g.y, mq)) - 1;
    i64 hi = std::max(floor_div(f.x - g.x, mp), floor_div(f.y - g.y, mq)) + 2;
    for (i64 t = lo; t <= hi; ++t) {
        int sb = sgn(f.x - g.x - t * mp);
        int st = sgn(f.y - g.y - t * mq);
        if (sb * st == -1) return true;
    }
    return false;
}

// Peripheral vs peripheral on one boundary: intervals [u, u+span] cross iff
// some translate strictly interleaves (one endpoint strictly inside, one
// strictly outside). Nesting and shared endpoints do not cross.
inline bool cross_pp(const MarkedSurface& s, const Arc& f, const Arc& g) {
    if (f.boundary != g.boundary) return false;
    i64 P = s.period(f.boundary);
    i64 sf = i64(f.k) * s.m + 1, sg = i64(g.k) * s.m + 1;
    i64 a = imod(f.u, P), b = a + sf;
    for (i64 t = -1; t <= 1; ++t) {
        i64 c = imod(g.u, P) + t * P, d = c + sg;
        auto strictly_inside = [&](i64 v) { return a < v && v < b; };
        if (strictly_inside(c) != strictly_inside(d) && c != a && d != b && c != b && d != a)
            return true;
    }
    return false;
}

// Transjective vs peripheral: the transjective arc leaves the boundary at
// lift x; it crosses the peripheral [u, u+span] iff it departs strictly
// inside the cut-off region, i.e. 0 < (x - u) mod period < span.
inline bool cross_tp(const MarkedSurface& s, const Arc& t, const Arc& p) {
    i64 P = s.period(p.boundary);
    i64 span = i64(p.k) * s.m + 1;
    i64 at = p.boundary == Boundary::P ? t.x : t.y;
    i64 off = imod(at - p.u, P);
    return 0 < off && off < span;
}

} // namespace detail

// Do two distinct m-diagonals cross in the interior? Endpoint contact is
// not a crossing. Both arcs are taken up to deck transformation: a crossing
// with any translate counts.
inline bool arcs_cross(const MarkedSurface& s, const Arc& a, const Arc& b) {
    if (s.kind == SurfaceKind::Polygon)
        return detail::chords_cross(a.i, a.j, b.i, b.j);
    if (a.kind == ArcKind::Transjective && b.kind == ArcKind::Transjective)
        return detail::cross_tt(s, a, b);
    if (a.kind == ArcKind::Peripheral && b.kind == ArcKind::Peripheral)
        return detail::cross_pp(s, a, b);
    if (a.kind == ArcKind::Transjective)
        return detail::cross_tp(s, a, b);
    return detail::cross_tp(s, b, a);
}

} // namespace mang
