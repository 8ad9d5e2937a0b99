#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "angulation.hpp"
#include "classify.hpp"
#include "constructions.hpp"
#include "quiver.hpp"

namespace mang {

using json = nlohmann::json;

namespace detail {

// tokenized content lines, '#' comments and blank lines stripped
inline std::vector<std::vector<std::string>> content_lines(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) out.push_back(std::move(toks));
    }
    return out;
}

inline i64 parse_i64(const std::string& tok) {
    size_t pos = 0;
    i64 v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        fail("ParseError", "expected an integer, got \"" + tok + "\"");
    }
    if (pos != tok.size())
        fail("ParseError", "expected an integer, got \"" + tok + "\"");
    return v;
}

inline int parse_int(const std::string& tok) {
    i64 v = parse_i64(tok);
    if (v != i64(int(v))) fail("ParseError", "value out of range: " + tok);
    return int(v);
}

// "key=value" token
inline i64 kv(const std::vector<std::string>& toks, size_t at,
              const std::string& key) {
    if (at >= toks.size()) fail("ParseError", "missing " + key + "=<value>");
    const std::string& t = toks[at];
    if (t.rfind(key + "=", 0) != 0)
        fail("ParseError", "expected " + key + "=<value>, got \"" + t + "\"");
    return parse_i64(t.substr(key.size() + 1));
}

} // namespace detail

inline MarkedSurface parse_surface_header(const std::vector<std::string>& toks) {
    if (toks.empty()) fail("ParseError", "empty surface header");
    if (toks[0] == "polygon") {
        if (toks.size() != 3)
            fail("ParseError", "polygon header is: polygon m=<m> n=<n>");
        return MarkedSurface::polygon(int(detail::kv(toks, 1, "m")),
                                      int(detail::kv(toks, 2, "n")));
    }
    if (toks[0] == "strip") {
        if (toks.size() != 4)
            fail("ParseError", "strip header is: strip m=<m> p=<p> q=<q>");
        return MarkedSurface::strip(int(detail::kv(toks, 1, "m")),
                                    int(detail::kv(toks, 2, "p")),
                                    int(detail::kv(toks, 3, "q")));
    }
    fail("ParseError", "unknown surface \"" + toks[0] + "\"");
}

inline Arc parse_arc_line(const std::vector<std::string>& toks) {
    if (toks.size() == 3 && toks[0] == "d")
        return Arc::diagonal(detail::parse_int(toks[1]), detail::parse_int(toks[2]));
    if (toks.size() == 3 && toks[0] == "t")
        return Arc::transjective(detail::parse_i64(toks[1]),
                                 detail::parse_i64(toks[2]));
    if (toks.size() == 4 && toks[0] == "r") {
        if (toks[1] != "p" && toks[1] != "q")
            fail("ParseError", "peripheral boundary must be p or q");
        return Arc::peripheral(toks[1] == "p" ? Boundary::P : Boundary::Q,
                               detail::parse_i64(toks[2]),
                               detail::parse_int(toks[3]));
    }
    std::string line;
    for (const auto& t : toks) line += (line.empty() ? "" : " ") + t;
    fail("ParseError", "bad arc line \"" + line + "\"");
}

// Header line, then one arc per line. The result is fully validated.
inline Angulation parse_angulation(const std::string& text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) fail("ParseError", "empty angulation file");
    MarkedSurface s = parse_surface_header(lines[0]);
    std::vector<Arc> arcs;
    for (size_t i = 1; i < lines.size(); ++i)
        arcs.push_back(parse_arc_line(lines[i]));
    return validate_angulation(s, arcs);
}

inline std::string angulation_text(const Angulation& a) {
    std::ostringstream os;
    const MarkedSurface& s = a.surface;
    if (s.kind == SurfaceKind::Polygon)
        os << "polygon m=" << s.m << " n=" << s.n << "\n";
    else
        os << "strip m=" << s.m << " p=" << s.p << " q=" << s.q << "\n";
    for (const auto& arc : a.arcs) os << arc.text() << "\n";
    return os.str();
}

inline std::string faces_text(const Angulation& a) {
    std::ostringstream os;
    for (size_t k = 0; k < a.faces.size(); ++k)
        os << "face " << k << ": " << a.faces[k].text(a.surface) << "\n";
    return os.str();
}

// `vertices: <n>`, then `arrow <id> <src> <tgt> [label]` and
// `rel <arrowid> <arrowid>` lines. Arrows are kept sorted by id.
inline BoundQuiver parse_quiver(const std::string& text) {
    auto lines = detail::content_lines(text);
    if (lines.empty()) fail("ParseError", "empty quiver file");
    if (lines[0].size() != 2 || lines[0][0] != "vertices:")
        fail("ParseError", "first line must be: vertices: <n>");
    BoundQuiver q;
    q.n_vertices = detail::parse_int(lines[0][1]);
    if (q.n_vertices < 0) fail("ParseError", "negative vertex count");
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& toks = lines[i];
        if (toks[0] == "arrow" && (toks.size() == 4 || toks.size() == 5)) {
            QArrow a;
            a.id = detail::parse_int(toks[1]);
            a.src = detail::parse_int(toks[2]);
            a.tgt = detail::parse_int(toks[3]);
            if (toks.size() == 5) a.label = toks[4];
            q.arrows.push_back(a);
        } else if (toks[0] == "rel" && toks.size() == 3) {
            q.relations.insert(
                {detail::parse_int(toks[1]), detail::parse_int(toks[2])});
        } else {
            std::string line;
            for (const auto& t : toks) line += (line.empty() ? "" : " ") + t;
            fail("ParseError", "bad quiver line \"" + line + "\"");
        }
    }
    std::sort(q.arrows.begin(), q.arrows.end(),
              [](const QArrow& a, const QArrow& b) { return a.id < b.id; });
    validate_quiver(q);
    return q;
}

inline std::string quiver_text(const BoundQuiver& q) {
    std::ostringstream os;
    os << "vertices: " << q.n_vertices << "\n";
    for (const auto& a : q.arrows) {
        os << "arrow " << a.id << ' ' << a.src << ' ' << a.tgt;
        if (!a.label.empty()) os << ' ' << a.label;
        os << "\n";
    }
    for (const auto& r : q.relations)
        os << "rel " << r.first << ' ' << r.second << "\n";
    return os.str();
}

// ---- JSON renderings (sorted keys, integers and strings only) ------------

inline json angulation_json(const Angulation& a) {
    const MarkedSurface& s = a.surface;
    json surf;
    surf["m"] = s.m;
    if (s.kind == SurfaceKind::Polygon) {
        surf["kind"] = "polygon";
        surf["n"] = s.n;
    } else {
        surf["kind"] = "strip";
        surf["p"] = s.p;
        surf["q"] = s.q;
    }
    json arcs = json::array();
    for (const auto& arc : a.arcs) arcs.push_back(arc.text());
    json faces = json::array();
    for (const auto& f : a.faces) faces.push_back(f.text(s));
    return json{{"surface", surf}, {"arcs", arcs}, {"faces", faces}};
}

inline json quiver_json(const BoundQuiver& q) {
    json arrows = json::array();
    for (const auto& a : q.arrows) {
        json ja{{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}};
        if (!a.label.empty()) ja["label"] = a.label;
        arrows.push_back(ja);
    }
    json rels = json::array();
    for (const auto& r : q.relations) rels.push_back(json::array({r.first, r.second}));
    return json{{"vertices", q.n_vertices}, {"arrows", arrows}, {"relations", rels}};
}

inline json classification_json(const ClassificationReport& r) {
    json j;
    j["gentle"] = r.gentle.ok;
    if (!r.gentle.ok) j["gentle_reason"] = r.gentle.why;
    j["connected"] = r.connected;
    json sat = json::array();
    for (const auto& c : r.saturated) sat.push_back(c);
    j["saturated_cycles"] = sat;
    json roots = json::array();
    for (const auto& rc : r.roots)
        roots.push_back(json{{"letters", detail::letters_text(rc.letters)},
                             {"oriented", rc.oriented},
                             {"relation_free", rc.relation_free}});
    j["root_cycles"] = roots;
    j["band"] = r.band ? json(detail::letters_text(*r.band)) : json(nullptr);
    j["rep_type"] = r.rep ? json(rep_type_name(*r.rep)) : json(nullptr);
    j["gldim"] = r.gldim ? json(*r.gldim) : json(nullptr);
    j["gldim_infinite"] = r.gldim_infinite;
    j["m"] = r.m ? json(*r.m) : json(nullptr);
    if (r.predicate)
        j["rep_infinite_structure_test"] = json{
            {"holds", r.predicate->holds}, {"diagnostic", r.predicate->diagnostic}};
    else
        j["rep_infinite_structure_test"] = nullptr;
    if (!r.predicate_note.empty()) j["note"] = r.predicate_note;
    return j;
}

inline json extension_report_json(const ExtensionReport& r) {
    json j;
    j["case"] = r.case_number;
    j["m"] = r.m;
    j["cut_sets_checked"] = r.cut_sets_checked;
    j["witness_cut"] = r.witness_cut;
    json checks = json::array();
    for (const auto& ck : r.checks)
        checks.push_back(json{
            {"cut", ck.cut},
            {"gldim", ck.gldim ? json(*ck.gldim) : json(nullptr)},
            {"gldim_ok", ck.gldim_ok},
            {"relation_free_root_cycle", ck.relation_free_root_cycle},
            {"extension_isomorphic", ck.extension_isomorphic},
            {"cut_round_trip", ck.cut_round_trip},
        });
    j["checks"] = checks;
    return j;
}

// ---- DOT ------------------------------------------------------------------

// Arrows that occur in a relation are split at an auxiliary midpoint node so
// the relation can be drawn as a dotted arc between the two midpoints.
inline std::string quiver_dot(const BoundQuiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int v = 0; v < q.n_vertices; ++v)
        os << "  v" << v << " [label=\"" << v << "\"];\n";
    std::set<int> in_rel;
    for (const auto& r : q.relations) {
        in_rel.insert(r.first);
        in_rel.insert(r.second);
    }
    for (const auto& a : q.arrows) {
        std::string lbl = a.label.empty() ? "a" + std::to_string(a.id) : a.label;
        if (in_rel.count(a.id)) {
            os << "  m" << a.id << " [shape=point, label=\"\"];\n";
            os << "  v" << a.src << " -> m" << a.id << " [arrowhead=none, label=\""
               << lbl << "\"];\n";
            os << "  m" << a.id << " -> v" << a.tgt << ";\n";
        } else {
            os << "  v" << a.src << " -> v" << a.tgt << " [label=\"" << lbl
               << "\"];\n";
        }
    }
    for (const auto& r : q.relations)
        os << "  m" << r.first << " -> m" << r.second
           << " [style=dotted, arrowhead=none, constraint=false];\n";
    os << "}\n";
    return os.str();
}

} // namespace mang
