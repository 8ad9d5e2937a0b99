#include <catch2/catch_amalgamated.hpp>

#include "mang/angulation.hpp"
#include "oracles.hpp"

using namespace mang;

namespace {

std::vector<std::string> face_texts(const MarkedSurface& s,
                                    const std::vector<Face>& faces) {
    std::vector<std::string> out;
    for (const auto& f : faces) out.push_back(f.text(s));
    return out;
}

std::string err_kind(const MarkedSurface& s, const std::vector<Arc>& arcs) {
    try {
        validate_angulation(s, arcs);
        return "";
    } catch (const error& e) {
        return e.kind();
    }
}

} // namespace

TEST_CASE("pentagon fan") {
    auto s = MarkedSurface::polygon(1, 3);
    auto ang = validate_angulation(s, {Arc::diagonal(0, 2), Arc::diagonal(0, 3)});
    REQUIRE(ang.faces.size() == 3);
    for (const auto& f : ang.faces) CHECK(f.size() == 3);
    CHECK(face_texts(s, ang.faces) ==
          std::vector<std::string>{"b0 b1 a0", "b2 a1 a0", "b3 b4 a1"});
}

TEST_CASE("hexagon split by one 2-diagonal") {
    auto s = MarkedSurface::polygon(2, 2);
    auto ang = validate_angulation(s, {Arc::diagonal(0, 3)});
    REQUIRE(ang.faces.size() == 2);
    CHECK(face_texts(s, ang.faces) ==
          std::vector<std::string>{"b0 b1 b2 a0", "b3 b4 b5 a0"});
}

TEST_CASE("polygon validation errors") {
    auto s = MarkedSurface::polygon(1, 4); // hexagon, needs 3 diagonals
    CHECK(err_kind(s, {Arc::diagonal(0, 2), Arc::diagonal(1, 3),
                       Arc::diagonal(0, 3)}) == "CrossingArcs");
    CHECK(err_kind(s, {Arc::diagonal(0, 2)}) == "WrongArcCount");
    CHECK(err_kind(s, {Arc::diagonal(0, 2), Arc::diagonal(0, 2),
                       Arc::diagonal(0, 3)}) == "DuplicateArc");
    CHECK(err_kind(MarkedSurface::polygon(2, 6),
                   {Arc::diagonal(0, 2), Arc::diagonal(0, 3),
                    Arc::diagonal(0, 5), Arc::diagonal(0, 7),
                    Arc::diagonal(0, 9)}) == "NotMDiagonal");
    CHECK(err_kind(s, {Arc::diagonal(0, 2), Arc::diagonal(2, 4),
                       Arc::diagonal(0, 4)}) == "");
}

TEST_CASE("kronecker strip angulation") {
    auto s = MarkedSurface::strip(1, 1, 1);
    auto ang = validate_angulation(s, {Arc::transjective(0, 0),
                                       Arc::transjective(1, 0)});
    REQUIRE(ang.faces.size() == 2);
    for (const auto& f : ang.faces) CHECK(f.size() == 3);
    // t(1,0) normalizes to t(0,-1) and sorts first
    CHECK(ang.arcs[0] == Arc::transjective(0, -1));
    CHECK(ang.arcs[1] == Arc::transjective(0, 0));
    CHECK(face_texts(s, ang.faces) ==
          std::vector<std::string>{"bp0 a1 a0@1", "bq0 a1@1 a0@1"});
}

TEST_CASE("strip angulation with a peripheral arc") {
    auto s = MarkedSurface::strip(2, 2, 1);
    auto ang = validate_angulation(
        s, {Arc::transjective(0, 0), Arc::transjective(3, 1),
            Arc::peripheral(Boundary::P, 0, 1)});
    REQUIRE(ang.faces.size() == 3);
    for (const auto& f : ang.faces) CHECK(f.size() == 4);
    CHECK(face_texts(s, ang.faces) ==
          std::vector<std::string>{"bp0 a2 bp2 bp1", "bp3 a1 bq1 a0@1",
                                   "bq0 a1 a2 a0"});
}

TEST_CASE("two parallel transjective arcs, no adjacency") {
    auto s = MarkedSurface::strip(2, 1, 1);
    auto ang = validate_angulation(s, {Arc::transjective(0, 0),
                                       Arc::transjective(1, 1)});
    REQUIRE(ang.faces.size() == 2);
    CHECK(face_texts(s, ang.faces) ==
          std::vector<std::string>{"bp0 a0 bq0 a1", "bp1 a1 bq1 a0@1"});
}

TEST_CASE("empty strip leaves an annular region") {
    auto s = MarkedSurface::strip(2, 2, 1);
    auto faces = extract_faces(s, {});
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].annular);
    CHECK(faces[0].size() == 6); // mp + mq boundary segments
    CHECK(err_kind(s, {}) == "WrongArcCount");
}

TEST_CASE("peripheral-only collection leaves an annular core") {
    auto s = MarkedSurface::strip(1, 4, 1); // bottom period 4, top 1
    std::vector<Arc> arcs = {Arc::peripheral(Boundary::P, 0, 1),
                             Arc::peripheral(Boundary::P, 0, 2)};
    auto faces = extract_faces(s, arcs); // [0,2] nested under [0,3]
    REQUIRE(faces.size() == 3);
    CHECK(faces[0].size() == 3);
    CHECK(faces[1].size() == 3);
    CHECK(faces[2].annular);
}

TEST_CASE("polygon enumeration counts match the oracles") {
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n * m + 2 <= 10; ++n) {
            auto s = MarkedSurface::polygon(m, n);
            auto all = enumerate_angulations(s);
            long long fc = oracles::fuss_catalan(m, n);
            long long rec = oracles::subdivision_count_recursive(m, n);
            INFO("m=" << m << " n=" << n);
            CHECK(fc == rec);
            CHECK((long long)all.size() == fc);
            // spot-check validity and canonical order
            for (size_t i = 1; i < all.size(); ++i)
                CHECK(all[i - 1].arcs < all[i].arcs);
        }
}

TEST_CASE("known small polygon counts") {
    CHECK(enumerate_angulations(MarkedSurface::polygon(1, 3)).size() == 5);
    CHECK(enumerate_angulations(MarkedSurface::polygon(2, 2)).size() == 3);
    CHECK(enumerate_angulations(MarkedSurface::polygon(1, 4)).size() == 14);
    CHECK(enumerate_angulations(MarkedSurface::polygon(2, 3)).size() == 12);
}

TEST_CASE("strip enumeration, smallest case") {
    auto s = MarkedSurface::strip(1, 1, 1);
    auto all = enumerate_angulations(s, 2);
    // candidates t(0,y), |y| <= 2; pairs cross unless the spans differ by 1
    REQUIRE(all.size() == 4);
    for (const auto& a : all) {
        CHECK(a.arcs.size() == 2);
        CHECK(a.faces.size() == 2);
        CHECK(a.arcs[1].y - a.arcs[0].y == 1);
    }
}

TEST_CASE("strip enumeration respects the winding bound") {
    auto s = MarkedSurface::strip(1, 1, 1);
    CHECK(enumerate_angulations(s, 1).size() == 2);
    CHECK(enumerate_angulations(s, 3).size() == 6);
}

TEST_CASE("candidate arcs are normalized and sorted") {
    auto s = MarkedSurface::strip(2, 2, 1);
    auto cand = candidate_arcs(s, 2);
    for (size_t i = 0; i < cand.size(); ++i) {
        CHECK(normalize_arc(s, cand[i]) == cand[i]);
        CHECK(is_m_diagonal(s, cand[i]));
        if (i) CHECK(cand[i - 1] < cand[i]);
    }
}
