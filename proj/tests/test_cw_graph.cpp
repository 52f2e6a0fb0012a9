#include <doctest.h>

#include "dskp/cw_graph.hpp"
#include "dskp/dimer.hpp"

using namespace dskp;

TEST_CASE("Aztec diamonds from the standard height function") {
    for (int k = 1; k <= 3; ++k) {
        CwGraph g = aztec_graph(k);
        CHECK(g.vertex_count() == static_cast<size_t>(2 * k * (k + 1)));
        CHECK(g.white_count() == g.black_count());
        CHECK(g.inner_face_count() == k * k + (k - 1) * (k - 1));
        CHECK(g.open_face_count() == 4 * k);
        // all inner faces are quads, open faces carry at most 2 edges
        for (auto& [l, f] : g.faces) {
            if (f.inner) CHECK(f.degree() == 4);
            else CHECK(f.degree() <= 2);
        }
    }
    // A1: one inner square face at (0,0), four open faces
    CwGraph a1 = aztec_graph(1);
    REQUIRE(a1.faces.count({0, 0}) == 1);
    CHECK(a1.faces.at({0, 0}).inner);
    CHECK(a1.faces.at({0, 0}).degree() == 4);
    CHECK(a1.edge_count() == 4);
}

TEST_CASE("wrench construction: raised height function has hexagonal faces") {
    HeightFunction h = HeightFunction::raised(8, {{0, 0}});
    CwGraph g = build_cw_graph(h, {0, 0, 4});
    CHECK(g.white_count() == g.black_count());
    bool has_hex = false;
    for (auto& [l, f] : g.faces)
        if (f.inner && f.degree() == 6) has_hex = true;
    CHECK(has_hex);
    // face degrees of inner faces lie in {4, 6, 8}
    for (auto& [l, f] : g.faces)
        if (f.inner) CHECK((f.degree() == 4 || f.degree() == 6 || f.degree() == 8));
}

TEST_CASE("golden structure of the mixed cross/wrench graph") {
    // three raised points around the origin; recorded after the first
    // faithful construction and checked against the face-indexing rule
    HeightFunction h = HeightFunction::raised(9, {{1, 1}, {-1, 1}, {1, -1}});
    CwGraph g = build_cw_graph(h, {0, 0, 4});
    CHECK(g.white_count() == g.black_count());
    for (auto& [l, f] : g.faces) {
        CAPTURE(l.first);
        CAPTURE(l.second);
        if (f.inner) CHECK((f.degree() == 4 || f.degree() == 6 || f.degree() == 8));
    }
    // inner faces are exactly the initial points strictly inside the cone
    int inner = 0;
    for (int i = -9; i <= 9; ++i)
        for (int j = -9; j <= 9; ++j)
            if (h(i, j) < 4 - std::abs(i) - std::abs(j)) ++inner;
    CHECK(g.inner_face_count() == inner);
    // golden counts (transcribed from the constructed object, then frozen)
    CHECK(g.inner_face_count() == 10);
    CHECK(g.vertex_count() == 30);
    CHECK(g.edge_count() == 39);
    CHECK(g.open_face_count() == 15);
}

TEST_CASE("window too small is detected") {
    HeightFunction h = HeightFunction::standard(2);
    CHECK_THROWS_AS((void)build_cw_graph(h, {0, 0, 4}), WindowTooSmall);
}

TEST_CASE("kasteleyn orientation satisfies the face condition") {
    for (int k = 1; k <= 3; ++k) {
        CwGraph g = aztec_graph(k);
        auto phi = kasteleyn_orientation(g);
        CHECK(kasteleyn_condition_holds(g, phi));
    }
    HeightFunction h = HeightFunction::raised(8, {{0, 0}});
    CwGraph g = build_cw_graph(h, {0, 0, 4});
    auto phi = kasteleyn_orientation(g);
    CHECK(kasteleyn_condition_holds(g, phi));
    // hexagonal faces need product (+1): implied by the checker, but pin
    // the degree-6 target explicitly
    for (auto& [l, f] : g.faces) {
        if (!f.inner || f.degree() != 6) continue;
        int prod = 1;
        for (int e : f.edges) prod *= phi.sign[e];
        CHECK(prod == 1);
    }
}
