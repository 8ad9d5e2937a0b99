// Command-line front end for the m-angulation library.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mang/classify.hpp"
#include "mang/constructions.hpp"
#include "mang/io.hpp"
#include "mang/quiver.hpp"
#include "mang/verify.hpp"

using namespace mang;

namespace {

const char* usage_text = R"(usage: mang <command> [arguments] [flags]

commands
  validate <file.ang>                      check an angulation file
  faces <file.ang>                         list the complementary regions
  quiver <file.ang>                        bound quiver of an angulation
  classify <file.quiver|file.ang> [m=<m>]  classification report (json)
  enumerate <surface>                      all angulations of the surface
  iso <a.quiver> <b.quiver>                quiver isomorphism; exit 1 if none
  cut <file.quiver> <arrow-id>...          admissible cut
  extend <file.quiver> m=<m>               m-relation extension
  unroll <file.ang>                        cut a strip open onto a polygon
  verify <surface>                         exhaustive theorem checks
  verify-extension <file.quiver> m=<m>     extension dichotomy, one quiver
  verify-extension <strip surface>         extension dichotomy, enumerated

surfaces
  polygon m=<m> n=<n>
  strip m=<m> p=<p> q=<q>

flags
  --winding <W>      transjective winding bound for enumeration (default 2)
  --format <fmt>     text | json | dot
  --up-to-opposite   iso: also accept an isomorphism onto the opposite quiver
  --all-cuts         verification: try every admissible cut set
)";

struct RunConfig {
    std::string command;
    std::vector<std::string> args; // positional arguments after the command
    int winding = 2;
    std::string format; // empty = command default
    bool up_to_opposite = false;
    bool all_cuts = false;
};

[[noreturn]] void usage(const std::string& why) {
    std::cerr << "error: " << why << "\n\n" << usage_text;
    std::exit(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("ParseError", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunConfig parse_args(int argc, char** argv) {
    RunConfig rc;
    std::vector<std::string> raw(argv + 1, argv + argc);
    for (size_t i = 0; i < raw.size(); ++i) {
        const std::string& a = raw[i];
        if (a == "--winding") {
            if (++i == raw.size()) usage("--winding needs a value");
            rc.winding = detail::parse_int(raw[i]);
            if (rc.winding < 1) usage("--winding must be positive");
        } else if (a == "--format") {
            if (++i == raw.size()) usage("--format needs a value");
            rc.format = raw[i];
            if (rc.format != "text" && rc.format != "json" && rc.format != "dot")
                usage("unknown format \"" + rc.format + "\"");
        } else if (a == "--up-to-opposite") {
            rc.up_to_opposite = true;
        } else if (a == "--all-cuts") {
            rc.all_cuts = true;
        } else if (a.rfind("--", 0) == 0) {
            usage("unknown flag " + a);
        } else if (rc.command.empty()) {
            rc.command = a;
        } else {
            rc.args.push_back(a);
        }
    }
    if (rc.command.empty()) usage("no command given");
    return rc;
}

std::string fmt_or(const RunConfig& rc, const std::string& dflt) {
    return rc.format.empty() ? dflt : rc.format;
}

MarkedSurface surface_from_args(const std::vector<std::string>& args) {
    if (args.empty()) usage("missing surface parameters");
    return parse_surface_header(args);
}

// m=<v> among the positional arguments, if present
std::optional<int> m_arg(const std::vector<std::string>& args) {
    for (const auto& a : args)
        if (a.rfind("m=", 0) == 0) return detail::parse_int(a.substr(2));
    return std::nullopt;
}

bool looks_like_quiver(const std::string& text) {
    auto lines = detail::content_lines(text);
    return !lines.empty() && lines[0][0] == "vertices:";
}

void print_angulation(const Angulation& a, const RunConfig& rc) {
    std::string f = fmt_or(rc, "text");
    if (f == "dot") usage("dot output is only available for quivers");
    if (f == "json")
        std::cout << angulation_json(a).dump(2) << "\n";
    else
        std::cout << angulation_text(a);
}

void print_quiver(const BoundQuiver& q, const RunConfig& rc) {
    std::string f = fmt_or(rc, "text");
    if (f == "json")
        std::cout << quiver_json(q).dump(2) << "\n";
    else if (f == "dot")
        std::cout << quiver_dot(q);
    else
        std::cout << quiver_text(q);
}

std::string letters(const std::vector<Letter>& w) { return detail::letters_text(w); }

void print_classification(const ClassificationReport& r, const RunConfig& rc) {
    std::string f = fmt_or(rc, "json");
    if (f == "dot") usage("dot output is only available for quivers");
    if (f == "json") {
        std::cout << classification_json(r).dump(2) << "\n";
        return;
    }
    std::cout << "gentle " << (r.gentle.ok ? "yes" : "no (" + r.gentle.why + ")")
              << "\n";
    std::cout << "connected " << (r.connected ? "yes" : "no") << "\n";
    for (const auto& c : r.saturated) {
        std::cout << "saturated cycle:";
        for (int a : c) std::cout << " a" << a;
        std::cout << "\n";
    }
    for (const auto& rt : r.roots)
        std::cout << "root cycle: " << letters(rt.letters)
                  << (rt.oriented ? " (oriented)" : "")
                  << (rt.relation_free ? " (relation-free)" : "") << "\n";
    if (r.band) std::cout << "band: " << letters(*r.band) << "\n";
    if (r.rep) std::cout << "rep_type " << rep_type_name(*r.rep) << "\n";
    if (r.gldim_infinite)
        std::cout << "gldim infinite\n";
    else if (r.gldim)
        std::cout << "gldim " << *r.gldim << "\n";
    if (r.m) std::cout << "m " << *r.m << "\n";
    if (r.predicate)
        std::cout << "structure test "
                  << (r.predicate->holds ? "holds" : "fails: " + r.predicate->diagnostic)
                  << "\n";
    if (!r.predicate_note.empty()) std::cout << "note: " << r.predicate_note << "\n";
}

int cmd_validate(const RunConfig& rc) {
    if (rc.args.size() != 1) usage("validate takes one file");
    Angulation a = parse_angulation(read_file(rc.args[0]));
    if (fmt_or(rc, "text") == "text") {
        std::cout << "ok\narcs " << a.arcs.size() << "\nregions " << a.faces.size()
                  << "\n";
    } else {
        print_angulation(a, rc);
    }
    return 0;
}

int cmd_faces(const RunConfig& rc) {
    if (rc.args.size() != 1) usage("faces takes one file");
    Angulation a = parse_angulation(read_file(rc.args[0]));
    if (fmt_or(rc, "text") == "json") {
        json j = json::array();
        for (const auto& f : a.faces) j.push_back(f.text(a.surface));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << faces_text(a);
    }
    return 0;
}

int cmd_quiver(const RunConfig& rc) {
    if (rc.args.size() != 1) usage("quiver takes one file");
    Angulation a = parse_angulation(read_file(rc.args[0]));
    print_quiver(bound_quiver(a), rc);
    return 0;
}

int cmd_classify(const RunConfig& rc) {
    std::vector<std::string> files;
    for (const auto& a : rc.args)
        if (a.rfind("m=", 0) != 0) files.push_back(a);
    if (files.size() != 1) usage("classify takes one file");
    std::string text = read_file(files[0]);
    std::optional<int> m = m_arg(rc.args);
    BoundQuiver q;
    if (looks_like_quiver(text)) {
        q = parse_quiver(text);
    } else {
        Angulation a = parse_angulation(text);
        q = bound_quiver(a);
        if (!m) m = a.surface.m;
    }
    print_classification(classify(q, m), rc);
    return 0;
}

int cmd_enumerate(const RunConfig& rc) {
    MarkedSurface s = surface_from_args(rc.args);
    auto all = enumerate_angulations(s, rc.winding);
    std::string f = fmt_or(rc, "text");
    if (f == "dot") usage("dot output is only available for quivers");
    if (f == "json") {
        json j = json::array();
        for (const auto& a : all) j.push_back(angulation_json(a));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& a : all) std::cout << angulation_text(a) << "\n";
    }
    return 0;
}

int cmd_iso(const RunConfig& rc) {
    if (rc.args.size() != 2) usage("iso takes two files");
    BoundQuiver q1 = parse_quiver(read_file(rc.args[0]));
    BoundQuiver q2 = parse_quiver(read_file(rc.args[1]));
    auto iso = quivers_isomorphic(q1, q2);
    bool opposite = false;
    if (!iso && rc.up_to_opposite) {
        iso = quivers_isomorphic(q1, opposite_quiver(q2));
        opposite = iso.has_value();
    }
    if (!iso) {
        std::cout << "not isomorphic\n";
        return 1;
    }
    if (fmt_or(rc, "text") == "json") {
        json j;
        j["opposite"] = opposite;
        j["vertex_map"] = iso->vertex_map;
        json am = json::array();
        for (const auto& [a, b] : iso->arrow_map) am.push_back(json::array({a, b}));
        j["arrow_map"] = am;
        std::cout << j.dump(2) << "\n";
    } else {
        if (opposite) std::cout << "isomorphic to the opposite quiver\n";
        for (size_t v = 0; v < iso->vertex_map.size(); ++v)
            std::cout << "vertex " << v << " -> " << iso->vertex_map[v] << "\n";
        for (const auto& [a, b] : iso->arrow_map)
            std::cout << "arrow " << a << " -> " << b << "\n";
    }
    return 0;
}

int cmd_cut(const RunConfig& rc) {
    if (rc.args.empty()) usage("cut takes a file and the arrow ids to remove");
    BoundQuiver q = parse_quiver(read_file(rc.args[0]));
    std::vector<int> chosen;
    for (size_t i = 1; i < rc.args.size(); ++i)
        chosen.push_back(detail::parse_int(rc.args[i]));
    auto [b, cd] = admissible_cut(q, chosen);
    if (fmt_or(rc, "text") == "json") {
        json j;
        j["quiver"] = quiver_json(b);
        j["removed"] = cd.removed;
        json rr = json::array();
        for (const auto& r : cd.removed_relations)
            rr.push_back(json::array({r.first, r.second}));
        j["removed_relations"] = rr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# removed arrows:";
        for (int a : cd.removed) std::cout << ' ' << a;
        std::cout << "\n# removed relations:";
        for (const auto& r : cd.removed_relations)
            std::cout << " (" << r.first << "," << r.second << ")";
        std::cout << "\n";
        print_quiver(b, rc);
    }
    return 0;
}

int cmd_extend(const RunConfig& rc) {
    std::vector<std::string> files;
    for (const auto& a : rc.args)
        if (a.rfind("m=", 0) != 0) files.push_back(a);
    if (files.size() != 1) usage("extend takes one file");
    auto m = m_arg(rc.args);
    if (!m) usage("extend needs m=<m>");
    BoundQuiver q = parse_quiver(read_file(files[0]));
    print_quiver(m_relation_extension(q, *m), rc);
    return 0;
}

int cmd_unroll(const RunConfig& rc) {
    if (rc.args.size() != 1) usage("unroll takes one file");
    Angulation a = parse_angulation(read_file(rc.args[0]));
    print_angulation(unroll(a), rc);
    return 0;
}

json stats_json(const StripVerifyStats& st) {
    return json{{"instances", st.instances},
                {"rep_infinite", st.rep_infinite},
                {"rep_finite", st.rep_finite},
                {"root_cycle_free", st.root_cycle_free},
                {"disconnected", st.disconnected},
                {"with_saturated_cycles", st.with_saturated_cycles},
                {"two_rim_faces", st.two_rim_faces}};
}

int report_failure(const VerifyFailure& f, const std::string& format) {
    if (format == "json") {
        json j{{"check", f.check}, {"detail", f.detail}, {"instance", f.instance}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "FAIL " << f.check << ": " << f.detail << "\n" << f.instance;
    }
    return 1;
}

int cmd_verify(const RunConfig& rc) {
    MarkedSurface s = surface_from_args(rc.args);
    std::string f = fmt_or(rc, "text");
    if (f == "dot") usage("dot output is only available for quivers");
    if (s.kind == SurfaceKind::Polygon) {
        auto r = verify_polygon(s);
        if (r.failure) return report_failure(*r.failure, f);
        if (f == "json")
            std::cout << json{{"instances", r.count}, {"expected", r.expected}}.dump(2)
                      << "\n";
        else
            std::cout << "instances " << r.count << "\nexpected " << r.expected
                      << "\nok\n";
        return 0;
    }
    auto r = verify_strip(s, rc.winding, rc.all_cuts);
    if (r.failure) return report_failure(*r.failure, f);
    if (f == "json") {
        std::cout << stats_json(r.stats).dump(2) << "\n";
    } else {
        const auto& st = r.stats;
        std::cout << "instances " << st.instances << "\nrep_infinite "
                  << st.rep_infinite << "\nrep_finite " << st.rep_finite
                  << "\nroot_cycle_free " << st.root_cycle_free
                  << "\ndisconnected " << st.disconnected
                  << "\nwith_saturated_cycles " << st.with_saturated_cycles
                  << "\ntwo_rim_faces " << st.two_rim_faces << "\nok\n";
    }
    return 0;
}

int cmd_verify_extension(const RunConfig& rc) {
    // single-quiver mode: a file plus m=<m>
    if (!rc.args.empty() && rc.args[0] != "strip" && rc.args[0] != "polygon") {
        std::vector<std::string> files;
        for (const auto& a : rc.args)
            if (a.rfind("m=", 0) != 0) files.push_back(a);
        if (files.size() != 1) usage("verify-extension takes one file or a strip");
        BoundQuiver q = parse_quiver(read_file(files[0]));
        auto m = m_arg(rc.args);
        if (!m) {
            auto cycles = saturated_cycles(q);
            std::set<int> lens;
            for (const auto& c : cycles) lens.insert(int(c.size()));
            if (lens.size() == 1 && *lens.begin() >= 3) m = *lens.begin() - 2;
        }
        if (!m) usage("verify-extension needs m=<m> for this quiver");
        try {
            auto rep = verify_extension_theorem(q, *m, rc.all_cuts);
            std::cout << extension_report_json(rep).dump(2) << "\n";
            std::cout << "OK 1 instances\n";
            return 0;
        } catch (const error& e) {
            std::cout << "FAIL " << e.what() << "\n";
            return 1;
        }
    }

    MarkedSurface s = surface_from_args(rc.args);
    if (s.kind != SurfaceKind::Strip)
        usage("verify-extension enumerates strips only");
    long long n = 0;
    for (const auto& ang : enumerate_angulations(s, rc.winding)) {
        BoundQuiver q = bound_quiver(ang);
        if (!is_connected(q)) continue;
        if (!is_rep_infinite_mcta_Atilde(q, s.m).holds) continue;
        try {
            auto rep = verify_extension_theorem(q, s.m, rc.all_cuts);
            json line;
            line["instance"] = angulation_text(ang);
            line["report"] = extension_report_json(rep);
            std::cout << line.dump() << "\n";
            ++n;
        } catch (const error& e) {
            std::cout << "FAIL " << angulation_text(ang) << ": " << e.what() << "\n";
            return 1;
        }
    }
    std::cout << "OK " << n << " instances\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig rc = parse_args(argc, argv);
    try {
        if (rc.command == "validate") return cmd_validate(rc);
        if (rc.command == "faces") return cmd_faces(rc);
        if (rc.command == "quiver") return cmd_quiver(rc);
        if (rc.command == "classify") return cmd_classify(rc);
        if (rc.command == "enumerate") return cmd_enumerate(rc);
        if (rc.command == "iso") return cmd_iso(rc);
        if (rc.command == "cut") return cmd_cut(rc);
        if (rc.command == "extend") return cmd_extend(rc);
        if (rc.command == "unroll") return cmd_unroll(rc);
        if (rc.command == "verify") return cmd_verify(rc);
        if (rc.command == "verify-extension") return cmd_verify_extension(rc);
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    usage("unknown command \"" + rc.command + "\"");
}
