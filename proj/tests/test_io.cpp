#include <catch2/catch_amalgamated.hpp>

#include "mang/io.hpp"
#include "qfixtures.hpp"

using namespace mang;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("angulation text round trip") {
    auto poly = validate_angulation(MarkedSurface::polygon(1, 3),
                                    {Arc::diagonal(0, 2), Arc::diagonal(2, 4)});
    auto text = angulation_text(poly);
    CHECK(text == "polygon m=1 n=3\nd 0 2\nd 2 4\n");
    auto back = parse_angulation(text);
    CHECK(back.surface == poly.surface);
    CHECK(back.arcs == poly.arcs);
    CHECK(angulation_text(back) == text);

    auto strip = validate_angulation(
        MarkedSurface::strip(2, 2, 1),
        {Arc::transjective(0, 0), Arc::transjective(3, 1),
         Arc::peripheral(Boundary::P, 0, 1)});
    auto stext = angulation_text(strip);
    CHECK(stext == "strip m=2 p=2 q=1\nt 0 0\nt 3 1\nr p 0 1\n");
    auto sback = parse_angulation(stext);
    CHECK(sback.surface == strip.surface);
    CHECK(sback.arcs == strip.arcs);
}

TEST_CASE("angulation parsing tolerates comments and normalizes arcs") {
    auto a = parse_angulation("# a strip\n\nstrip m=1 p=1 q=1\n"
                              "t 1 0 # the slanted arc\nt 0 0\n");
    CHECK(a.surface == MarkedSurface::strip(1, 1, 1));
    CHECK(a.arcs ==
          std::vector<Arc>{Arc::transjective(0, -1), Arc::transjective(0, 0)});

    // deck translates name the same arc: t 2 1 is t 1 0 shifted one period
    auto b = parse_angulation("strip m=1 p=1 q=1\nt 2 1\nt 0 0\n");
    CHECK(b.arcs == a.arcs);
}

TEST_CASE("angulation parse errors") {
    CHECK_THROWS_WITH(parse_angulation(""), ContainsSubstring("empty"));
    CHECK_THROWS_WITH(parse_angulation("disk m=1 n=3\n"),
                      ContainsSubstring("unknown surface"));
    CHECK_THROWS_WITH(parse_angulation("polygon m=1\n"),
                      ContainsSubstring("polygon header"));
    CHECK_THROWS_WITH(parse_angulation("polygon n=3 m=1\n"),
                      ContainsSubstring("=<value>"));
    CHECK_THROWS_WITH(parse_angulation("polygon m=1 n=3\nd 0 two\n"),
                      ContainsSubstring("expected an integer"));
    CHECK_THROWS_WITH(parse_angulation("polygon m=1 n=3\nx 0 2\n"),
                      ContainsSubstring("bad arc line"));
    try {
        parse_angulation("polygon m=1 n=3\nd 0 2\n");
        FAIL("expected WrongArcCount");
    } catch (const error& e) {
        CHECK(e.kind() == "WrongArcCount");
    }
}

TEST_CASE("quiver text round trip") {
    auto q7 = qf::q7();
    auto text = quiver_text(q7);
    CHECK_THAT(text, ContainsSubstring("vertices: 7"));
    CHECK_THAT(text, ContainsSubstring("arrow 4 6 0 a5"));
    CHECK_THAT(text, ContainsSubstring("rel 4 0"));
    CHECK(parse_quiver(text) == q7);
    CHECK(quiver_text(parse_quiver(text)) == text);

    // arrows sort by id on input, so line order does not matter
    auto q = parse_quiver("vertices: 2\nrel 0 1\narrow 1 1 1\narrow 0 0 1\n");
    CHECK(q.arrows[0].id == 0);
    CHECK(q.arrows[1].id == 1);
}

TEST_CASE("quiver parse errors") {
    CHECK_THROWS_WITH(parse_quiver("arrows: 2\n"),
                      ContainsSubstring("vertices: <n>"));
    CHECK_THROWS_WITH(parse_quiver("vertices: 2\narrow 0 0\n"),
                      ContainsSubstring("bad quiver line"));
    CHECK_THROWS_WITH(parse_quiver("vertices: 2\narrow 0 0 5\n"),
                      ContainsSubstring("out of range"));
    CHECK_THROWS_WITH(parse_quiver("vertices: 2\narrow 0 0 1\nrel 0 7\n"),
                      ContainsSubstring("missing arrow"));
    CHECK_THROWS_WITH(
        parse_quiver("vertices: 2\narrow 0 0 1\narrow 0 1 0\n"),
        ContainsSubstring("duplicate"));
}

TEST_CASE("face text lists every region") {
    auto a = parse_angulation("strip m=1 p=1 q=1\nt 0 0\nt 1 0\n");
    auto ft = faces_text(a);
    CHECK(ft == "face 0: bp0 a1 a0@1\nface 1: bq0 a1@1 a0@1\n");
}

TEST_CASE("json renderings are canonical") {
    auto q7 = qf::q7();
    auto jq = quiver_json(q7);
    CHECK(jq["vertices"] == 7);
    CHECK(jq["arrows"].size() == 8);
    CHECK(jq["relations"].size() == 6);
    CHECK(jq.dump() == quiver_json(parse_quiver(quiver_text(q7))).dump());

    auto jc = classification_json(classify(q7));
    CHECK(jc["rep_type"] == "infinite");
    CHECK(jc["m"] == 3);
    CHECK(jc["gldim_infinite"] == true);
    CHECK(jc["rep_infinite_structure_test"]["holds"] == true);

    auto ja = angulation_json(parse_angulation("strip m=1 p=1 q=1\nt 0 0\nt 1 0\n"));
    CHECK(ja["surface"]["kind"] == "strip");
    CHECK(ja["arcs"] == json::array({"t 0 -1", "t 0 0"}));
    CHECK(ja["faces"].size() == 2);

    auto je = extension_report_json(verify_extension_theorem(q7, 3));
    CHECK(je["case"] == 2);
    CHECK(je["witness_cut"] == json::array({4}));
    CHECK(je["checks"][0]["gldim"] == 4);
}

TEST_CASE("dot splits arrows that occur in relations") {
    auto dot = quiver_dot(qf::q7());
    CHECK_THAT(dot, ContainsSubstring("m4 [shape=point"));
    CHECK_THAT(dot, ContainsSubstring("v6 -> m4 [arrowhead=none, label=\"a5\"]"));
    CHECK_THAT(dot, ContainsSubstring("m4 -> v0;"));
    CHECK_THAT(dot, ContainsSubstring("m5 -> m6 [style=dotted"));
    // arrow 7 (d) is in no relation and stays whole
    CHECK_THAT(dot, ContainsSubstring("v4 -> v2 [label=\"d\"]"));

    auto kdot = quiver_dot(qf::kronecker());
    CHECK_THAT(kdot, !ContainsSubstring("shape=point"));
    CHECK_THAT(kdot, ContainsSubstring("v0 -> v1 [label=\"a0\"]"));
    CHECK_THAT(kdot, ContainsSubstring("v0 -> v1 [label=\"a1\"]"));
}
