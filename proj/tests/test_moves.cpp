#include <doctest.h>

#include "dskp/dimer.hpp"

using namespace dskp;

namespace {
PV fin(long n, long d = 1) { return PV(GaussianRational(Rational(n, d))); }

WeightMap<GaussianRational> seeded_weights(const CwGraph& g, uint64_t seed) {
    Rng rng(seed);
    return random_weights<GaussianRational>(g, rng,
                                            [](Rng& r) { return random_gaussian_rational(r); });
}
} // namespace

TEST_CASE("spider move: center weight solves the relation, linear data recovers the step") {
    CwGraph g = aztec_graph(2);
    // linear weights a_{i,j} = i + 2j, center (0,0) overridden to -3:
    // the rewired center must be +3 (one octahedron step upward)
    WeightMap<GaussianRational> w;
    for (auto& [l, f] : g.faces) w[l] = fin(l.first + 2 * l.second);
    w[{0, 0}] = fin(-3);
    auto c = spider_center_weight(w, {0, 0});
    CHECK(c == fin(3));
    // degenerate surrounding pair is singular
    WeightMap<GaussianRational> bad = w;
    bad[{0, 1}] = bad[{-1, 0}];
    CHECK(spider_center_weight(bad, {0, 0}).is_indeterminate());
    // the example pair (0; 3,2,4,1) solves to 11/5
    WeightMap<GaussianRational> ex = w;
    ex[{0, 0}] = fin(0);
    ex[{0, 1}] = fin(3);
    ex[{-1, 0}] = fin(2);
    ex[{0, -1}] = fin(4);
    ex[{1, 0}] = fin(1);
    CHECK(spider_center_weight(ex, {0, 0}) == fin(11, 5));
}

TEST_CASE("Y invariant under the spider move (exact, several graphs and seeds)") {
    std::vector<std::pair<CwGraph, FaceLabel>> cases;
    cases.push_back({aztec_graph(2), {0, 0}});
    {
        HeightFunction h = HeightFunction::raised(9, {{1, 1}});
        cases.push_back({build_cw_graph(h, {0, 0, 4}), {0, 0}});
    }
    {
        HeightFunction h = HeightFunction::raised(9, {{1, 1}, {-1, 1}, {1, -1}});
        cases.push_back({build_cw_graph(h, {0, 0, 4}), {-1, -1}});
    }
    for (auto& [g, f] : cases) {
        auto phi = kasteleyn_orientation(g);
        for (uint64_t seed = 1; seed <= 5; ++seed) {
            auto w = seeded_weights(g, seed * 31);
            auto moved = spider_move(g, phi, f);
            auto w2 = w;
            auto c = spider_center_weight(w, f);
            if (c.is_indeterminate()) continue;
            w2[f] = c;
            PV y1 = ratio_function_Y(g, w);
            PV y2 = ratio_function_Y(moved.graph, w2);
            CHECK(y1 == y2);
            // the rewired orientation still satisfies the face condition
            CHECK(kasteleyn_condition_holds(moved.graph, moved.phi));
            // and the determinant identity survives on the new graph
            int eps = resolve_epsilon(moved.graph, w2, moved.phi);
            CHECK((eps == 1 || eps == -1));
        }
    }
}

TEST_CASE("expansion/contraction round-trip and Y invariance") {
    HeightFunction h = HeightFunction::raised(9, {{1, 1}});
    CwGraph g = build_cw_graph(h, {0, 0, 4});
    auto phi = kasteleyn_orientation(g);

    // pick a vertex with two inner faces in its wedges
    int chosen = -1;
    FaceLabel f1{}, f2{};
    for (size_t v = 0; v < g.vertices.size() && chosen < 0; ++v) {
        auto& rot = g.vertices[v].rotation;
        if (rot.size() < 2) continue;
        std::vector<FaceLabel> wedges;
        for (size_t t = 0; t < rot.size(); ++t) wedges.push_back(g.left_face(rot[t], (int)v));
        for (size_t a = 0; a < wedges.size() && chosen < 0; ++a)
            for (size_t b = a + 1; b < wedges.size() && chosen < 0; ++b) {
                if (wedges[a] == wedges[b]) continue;
                if (!g.faces.count(wedges[a]) || !g.faces.count(wedges[b])) continue;
                if (!g.faces.at(wedges[a]).inner || !g.faces.at(wedges[b]).inner) continue;
                chosen = static_cast<int>(v);
                f1 = wedges[a];
                f2 = wedges[b];
            }
    }
    REQUIRE(chosen >= 0);

    auto expanded = expand_vertex(g, phi, chosen, f1, f2);
    CHECK(expanded.graph.vertex_count() == g.vertex_count() + 2);
    CHECK(expanded.graph.edge_count() == g.edge_count() + 2);
    // both adjacent faces gained two boundary edges (degree +2)
    CHECK(expanded.graph.faces.at(f1).degree() == g.faces.at(f1).degree() + 2);
    CHECK(expanded.graph.faces.at(f2).degree() == g.faces.at(f2).degree() + 2);

    for (uint64_t seed = 11; seed <= 15; ++seed) {
        auto w = seeded_weights(g, seed);
        PV y1 = ratio_function_Y(g, w);
        PV y2 = ratio_function_Y(expanded.graph, w);
        CHECK(y1 == y2);
    }

    // contracting the new degree-2 vertex recovers the original structure
    auto contractible = contractible_vertices(expanded.graph);
    REQUIRE(!contractible.empty());
    int u = -1;
    for (int c : contractible)
        if (static_cast<size_t>(c) >= g.vertex_count()) u = c;
    REQUIRE(u >= 0);
    auto back = contract_degree2(expanded.graph, expanded.phi, u);
    CHECK(CwGraph::same_structure(back.graph, g));
}

TEST_CASE("raising a local minimum = spider move plus contractions") {
    // three wrench squares around the origin, so the move sequence
    // contracts three degree-2 vertices
    HeightFunction h0 = HeightFunction::raised(9, {{1, 1}, {-1, 1}, {1, -1}});
    HeightFunction h1 = HeightFunction::raised(9, {{1, 1}, {-1, 1}, {1, -1}, {0, 0}});
    LatticePoint p{0, 0, 4};
    CwGraph g0 = build_cw_graph(h0, p);
    CwGraph g1 = build_cw_graph(h1, p);

    auto phi0 = kasteleyn_orientation(g0);
    auto moved = spider_move(g0, phi0, {0, 0});
    CwGraph cur = moved.graph;
    KasteleynOrientation cphi = moved.phi;
    int contractions = 0;
    for (;;) {
        auto cands = contractible_vertices(cur);
        if (cands.empty()) break;
        auto r = contract_degree2(cur, cphi, cands.front());
        cur = std::move(r.graph);
        cphi = std::move(r.phi);
        ++contractions;
    }
    CHECK(contractions == 3);
    CHECK(CwGraph::same_structure(cur, g1));

    // weights: the raised center takes one recurrence step; Y at any
    // higher point agrees between the two height functions
    Rng rng(404);
    for (int t = 0; t < 3; ++t) {
        auto data = random_initial_data<GaussianRational>(
            h0, rng, [](Rng& r) { return random_gaussian_rational(r); });
        auto w0 = weights_from_initial_data(g0, data);
        auto c = spider_center_weight(w0, {0, 0});
        if (c.is_indeterminate()) continue;
        auto w1 = w0;
        w1[{0, 0}] = c;
        PV y0 = ratio_function_Y(g0, w0);
        PV y1 = ratio_function_Y(g1, w1);
        CHECK(y0 == y1);
    }
}
