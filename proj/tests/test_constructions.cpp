#include <catch2/catch_amalgamated.hpp>

#include "mang/angulation.hpp"
#include "mang/classify.hpp"
#include "mang/constructions.hpp"
#include "qfixtures.hpp"

using namespace mang;
using Catch::Matchers::ContainsSubstring;

static Angulation strip_ang(int m, int p, int q, std::vector<Arc> arcs) {
    return validate_angulation(MarkedSurface::strip(m, p, q), std::move(arcs));
}

TEST_CASE("admissible cut removes one arrow per saturated cycle") {
    auto [b, cd] = admissible_cut(qf::q7(), {4});
    CHECK(b == qf::q7_cut());
    CHECK(cd.removed == std::vector<int>{4});
    CHECK(cd.removed_relations == std::set<std::pair<int, int>>{{3, 4}, {4, 0}});
    CHECK(saturated_cycles(b).empty());

    // no saturated cycles: the empty cut is the only admissible one
    auto [k, kcd] = admissible_cut(qf::kronecker(), {});
    CHECK(k == qf::kronecker());
    CHECK(kcd.removed.empty());
    CHECK(kcd.removed_relations.empty());
}

TEST_CASE("cut set validation") {
    auto q7 = qf::q7();
    CHECK_THROWS_WITH(admissible_cut(q7, {5}),
                      ContainsSubstring("lies on no saturated cycle"));
    CHECK_THROWS_WITH(admissible_cut(q7, {99}),
                      ContainsSubstring("lies on no saturated cycle"));
    CHECK_THROWS_WITH(admissible_cut(q7, {}), ContainsSubstring("is not cut"));
    CHECK_THROWS_WITH(admissible_cut(q7, {0, 4}),
                      ContainsSubstring("cut the same saturated cycle"));
    CHECK_THROWS_WITH(admissible_cut(q7, {4, 4}), ContainsSubstring("twice"));
    try {
        admissible_cut(q7, {5});
        FAIL("expected BadCutSet");
    } catch (const error& e) {
        CHECK(e.kind() == "BadCutSet");
    }

    BoundQuiver star;
    star.n_vertices = 4;
    star.arrows = {QArrow{0, 0, 1, ""}, QArrow{1, 0, 2, ""}, QArrow{2, 0, 3, ""}};
    CHECK_THROWS_WITH(admissible_cut(star, {}), ContainsSubstring("out-degree"));
}

TEST_CASE("m-relation extension closes maximal chains") {
    auto ext = m_relation_extension(qf::q7_cut(), 3);
    REQUIRE(ext.arrows.size() == 8);
    const QArrow& w = ext.arrows.back();
    CHECK(w.id == 8);
    CHECK(w.src == 6);
    CHECK(w.tgt == 0);
    CHECK(ext.relations == std::set<std::pair<int, int>>{
                               {0, 1}, {1, 2}, {2, 3}, {5, 6}, {3, 8}, {8, 0}});
    CHECK(quivers_isomorphic(ext, qf::q7()).has_value());
    CHECK(saturated_cycles(ext).size() == 1);

    // chains shorter than m+1 arrows add nothing
    CHECK(m_relation_extension(qf::kronecker(), 1) == qf::kronecker());
    CHECK(m_relation_extension(qf::a2(), 2) == qf::a2());
}

TEST_CASE("extension preconditions") {
    try {
        m_relation_extension(qf::q7(), 3);
        FAIL("expected SaturatedCyclePresent");
    } catch (const error& e) {
        CHECK(e.kind() == "SaturatedCyclePresent");
    }
    try {
        m_relation_extension(qf::q7_cut(), 1); // gldim 4 > 2
        FAIL("expected GldimTooLarge");
    } catch (const error& e) {
        CHECK(e.kind() == "GldimTooLarge");
        CHECK_THAT(e.what(), ContainsSubstring("4"));
    }
}

TEST_CASE("cut and extension are mutually inverse on the fixtures") {
    auto [b, cd] = admissible_cut(qf::q7(), {4});
    auto ext = m_relation_extension(b, 3);
    CHECK(quivers_isomorphic(ext, qf::q7()).has_value());

    // the other way: extend first, then cut the arrows the extension added
    auto back = admissible_cut(ext, {8});
    CHECK(back.first == b);
}

TEST_CASE("unroll requires a strip without root cycles") {
    auto poly = validate_angulation(MarkedSurface::polygon(1, 3),
                                    {Arc::diagonal(0, 2), Arc::diagonal(2, 4)});
    try {
        unroll(poly);
        FAIL("expected NotStrip");
    } catch (const error& e) {
        CHECK(e.kind() == "NotStrip");
    }

    auto kron = strip_ang(1, 1, 1, {Arc::transjective(0, 0), Arc::transjective(1, 0)});
    try {
        unroll(kron);
        FAIL("expected RootCyclePresent");
    } catch (const error& e) {
        CHECK(e.kind() == "RootCyclePresent");
        CHECK_THAT(e.what(), ContainsSubstring("a0"));
    }
}

TEST_CASE("unroll pins") {
    auto a1 = strip_ang(2, 1, 1, {Arc::transjective(0, 0), Arc::transjective(1, 1)});
    auto u1 = unroll(a1);
    CHECK(u1.surface == MarkedSurface::polygon(2, 3));
    CHECK(u1.arcs == std::vector<Arc>{Arc::diagonal(0, 3), Arc::diagonal(4, 7)});
    CHECK(u1.faces.size() == a1.faces.size() + 1);
    CHECK(quivers_isomorphic(bound_quiver(a1), bound_quiver(u1)).has_value());

    auto a2 = strip_ang(2, 2, 1,
                        {Arc::transjective(0, 0), Arc::transjective(3, 1),
                         Arc::peripheral(Boundary::P, 0, 1)});
    auto u2 = unroll(a2);
    CHECK(u2.surface == MarkedSurface::polygon(2, 4));
    CHECK(u2.arcs == std::vector<Arc>{Arc::diagonal(0, 3), Arc::diagonal(0, 7),
                                      Arc::diagonal(4, 7)});
    CHECK(u2.faces.size() == a2.faces.size() + 1);
    auto iso = quivers_isomorphic(bound_quiver(a2), bound_quiver(u2));
    REQUIRE(iso.has_value());
}

TEST_CASE("unroll succeeds exactly on the root-cycle-free angulations") {
    for (auto [m, p, q] : {std::tuple{1, 1, 1}, {2, 1, 1}, {2, 2, 1}}) {
        auto surf = MarkedSurface::strip(m, p, q);
        for (const auto& ang : enumerate_angulations(surf, 2)) {
            auto bq = bound_quiver(ang);
            bool root_free = root_cycles(bq).empty();
            if (!root_free) {
                CHECK_THROWS_AS(unroll(ang), error);
                continue;
            }
            auto u = unroll(ang);
            CHECK(u.faces.size() == ang.faces.size() + 1);
            CHECK(quivers_isomorphic(bq, bound_quiver(u)).has_value());
        }
    }
}

TEST_CASE("extension theorem verification on the fixtures") {
    auto rep = verify_extension_theorem(qf::q7(), 3);
    CHECK(rep.case_number == 2);
    CHECK(rep.witness_cut == std::vector<int>{4});
    REQUIRE(rep.checks.size() == 1);
    CHECK(rep.checks[0].gldim == 4);
    CHECK(rep.checks[0].valid());

    // all five cut choices satisfy the round-trip laws; the relation-free
    // root cycle survives only when the cut avoids the doubled arrow pair
    auto all = verify_extension_theorem(qf::q7(), 3, true);
    CHECK(all.cut_sets_checked == 5);
    CHECK(all.witness_cut == std::vector<int>{4});
    for (const auto& ck : all.checks) {
        CHECK(ck.gldim == 4);
        CHECK(ck.extension_isomorphic);
        CHECK(ck.cut_round_trip);
        CHECK(ck.relation_free_root_cycle == (ck.cut != std::vector<int>{0}));
    }

    auto kr = verify_extension_theorem(qf::kronecker(), 1);
    CHECK(kr.case_number == 1);
    CHECK(kr.cut_sets_checked == 0);
}

TEST_CASE("extension theorem precondition") {
    try {
        verify_extension_theorem(qf::a2(), 1);
        FAIL("expected PredicateFails");
    } catch (const error& e) {
        CHECK(e.kind() == "PredicateFails");
    }
    try {
        verify_extension_theorem(qf::q7(), 2); // saturated cycle length is 5
        FAIL("expected PredicateFails");
    } catch (const error& e) {
        CHECK(e.kind() == "PredicateFails");
        CHECK_THAT(e.what(), ContainsSubstring("saturated cycle"));
    }
}
