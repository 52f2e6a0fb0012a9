#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dskp/cw_graph.hpp"
#include "dskp/linalg.hpp"
#include "dskp/multipoly.hpp"
#include "dskp/projective.hpp"

namespace dskp {

template <class F>
using WeightMap = std::map<FaceLabel, ProjectiveValue<F>>;

struct SizeGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline size_t matching_vertex_guard() {
    if (const char* s = std::getenv("DSKP_SIZE_GUARD")) return static_cast<size_t>(std::atol(s));
    return 60;
}

// All perfect matchings, as sorted edge-id lists, in a deterministic
// order (backtracking on the least unmatched white vertex).
std::vector<std::vector<int>> enumerate_matchings(const CwGraph& g);

// A perfect matching together with one of the two orientations per edge
// contributes prod phi * a(right face); grouping the two orientations
// gives the edge factor phi(w,b) (a_{f(w,b)} - a_{f(b,w)}).
template <class F>
ProjectiveValue<F> z_oriented(const CwGraph& g, const WeightMap<F>& w,
                              const KasteleynOrientation& phi) {
    auto matchings = enumerate_matchings(g);
    ProjectiveValue<F> total(field_from_int<F>(0));
    for (auto& m : matchings) {
        ProjectiveValue<F> prod(field_from_int<F>(1));
        for (int e : m) {
            int white = g.vertices[g.edges[e].u].color == 0 ? g.edges[e].u : g.edges[e].v;
            const FaceLabel& fr = g.right_face(e, white);
            const FaceLabel& fl = g.left_face(e, white);
            ProjectiveValue<F> d = w.at(fr) - w.at(fl);
            if (phi.sign[e] < 0) d = -d;
            prod = prod * d;
        }
        total = total + prod;
    }
    return total;
}

// Symbolic partition function in the face variables, with cancellation
// performed on accumulation.
MultiPoly z_oriented_symbolic(const CwGraph& g, const KasteleynOrientation& phi);

// Oriented configuration count = sum over matchings of 2^(edges).
mpz_class oriented_configuration_count(const CwGraph& g);

template <class F>
Matrix<F> kasteleyn_matrix(const CwGraph& g, const WeightMap<F>& w) {
    auto whites = g.whites();
    auto blacks = g.blacks();
    if (whites.size() != blacks.size()) throw std::invalid_argument("kasteleyn_matrix: |W| != |B|");
    std::map<int, size_t> wi, bi;
    for (size_t i = 0; i < whites.size(); ++i) wi[whites[i]] = i;
    for (size_t i = 0; i < blacks.size(); ++i) bi[blacks[i]] = i;
    Matrix<F> K(whites.size(), blacks.size(), field_from_int<F>(0));
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int u = g.edges[e].u, v = g.edges[e].v;
        int white = g.vertices[u].color == 0 ? u : v;
        int black = g.vertices[u].color == 0 ? v : u;
        const ProjectiveValue<F>& ar = w.at(g.right_face(e, white));
        const ProjectiveValue<F>& al = w.at(g.left_face(e, white));
        if (!ar.is_finite() || !al.is_finite())
            throw std::domain_error("kasteleyn_matrix: non-finite weight (change chart first)");
        K(wi[white], bi[black]) = ar.value() - al.value();
    }
    return K;
}

// det K; equals the oriented partition function up to a sign depending
// only on the orientation.
template <class F>
ProjectiveValue<F> z_det(const CwGraph& g, const WeightMap<F>& w) {
    return ProjectiveValue<F>(det(kasteleyn_matrix(g, w)));
}

MultiPoly z_det_symbolic(const CwGraph& g);

// The orientation-dependent sign relating z_oriented to det K, resolved
// empirically per (graph, orientation).
template <class F>
int resolve_epsilon(const CwGraph& g, const WeightMap<F>& w, const KasteleynOrientation& phi) {
    ProjectiveValue<F> zo = z_oriented(g, w, phi);
    ProjectiveValue<F> zd = z_det(g, w);
    if (!zo.is_finite() || !zd.is_finite() || zo.is_zero() || zd.is_zero())
        throw std::domain_error("resolve_epsilon: degenerate sample");
    if (zo == zd) return 1;
    if (zo == -zd) return -1;
    throw std::logic_error("resolve_epsilon: |Z| != |det K|");
}

// C(G, a) = i^|V| prod_{inner} a^(d/2 - 1) prod_{open} a^(ceil(d/2)).
template <class F>
ProjectiveValue<F> y_prefactor(const CwGraph& g, const WeightMap<F>& w) {
    using P = ProjectiveValue<F>;
    int iv = static_cast<int>(g.vertex_count()) % 4;
    if (iv % 2 != 0) throw std::logic_error("y_prefactor: odd vertex count");
    P c(field_from_int<F>(iv == 2 ? -1 : 1));
    for (auto& [l, f] : g.faces) {
        int e = f.inner ? f.degree() / 2 - 1 : (f.degree() + 1) / 2;
        P x = w.at(l);
        for (int q = 0; q < e; ++q) c = c * x;
    }
    return c;
}

template <class F>
WeightMap<F> inverse_weights(const WeightMap<F>& w) {
    WeightMap<F> r;
    for (auto& [l, x] : w) r[l] = x.inverse();
    return r;
}

template <class F>
WeightMap<F> transform_weights(const WeightMap<F>& w, const MobiusMap<F>& m) {
    WeightMap<F> r;
    for (auto& [l, x] : w) r[l] = m(x);
    return r;
}

namespace detail {
template <class F>
ProjectiveValue<F> ratio_y_plain(const CwGraph& g, const WeightMap<F>& w) {
    ProjectiveValue<F> za = z_det(g, w);
    ProjectiveValue<F> zi = z_det(g, inverse_weights(w));
    return y_prefactor(g, w) * zi / za;
}
} // namespace detail

// Ratio of partition functions; independent of the orientation (both
// determinants change by the same sign), so no phi is needed. Weights
// at 0 or infinity are routed through a seeded projective change of
// chart and mapped back, with a bounded retry.
template <class F>
ProjectiveValue<F> ratio_function_Y(const CwGraph& g, const WeightMap<F>& w, uint64_t chart_seed = 11) {
    bool needs_chart = false;
    for (auto& [l, x] : w)
        if (!x.is_finite() || x.is_zero()) needs_chart = true;
    if (!needs_chart) return detail::ratio_y_plain(g, w);

    Rng rng(chart_seed);
    for (int attempt = 0; attempt < 5; ++attempt) {
        MobiusMap<F> m = random_mobius(rng);
        WeightMap<F> tw = transform_weights(w, m);
        bool ok = true;
        for (auto& [l, x] : tw)
            if (!x.is_finite() || x.is_zero()) ok = false;
        if (!ok) continue;
        ProjectiveValue<F> y = detail::ratio_y_plain(g, tw);
        return m.inverse()(y);
    }
    throw std::domain_error("ratio_function_Y: no usable chart found");
}

// Symbolic Y for multilinear partition functions (the Aztec situation):
// the numerator is the sign-preserving complement of Z over all faces.
// Requires prefactor exponent 1 on every face.
struct SymbolicY {
    MultiPoly num, den;
};
SymbolicY symbolic_Y(const CwGraph& g, const KasteleynOrientation& phi);

// Speyer's weight: each dimer contributes 1/(a_f a_f'), both sides.
template <class F>
ProjectiveValue<F> dkp_solution(const CwGraph& g, const WeightMap<F>& w) {
    using P = ProjectiveValue<F>;
    for (auto& [l, x] : w)
        if (!x.is_finite() || x.is_zero())
            throw std::domain_error("dkp_solution: weights must be finite nonzero");
    auto matchings = enumerate_matchings(g);
    P z(field_from_int<F>(0));
    for (auto& m : matchings) {
        P prod(field_from_int<F>(1));
        for (int e : m) {
            const FaceLabel& fa = g.edges[e].left;
            const FaceLabel& fb = g.edges[e].right;
            prod = prod * (w.at(fa) * w.at(fb)).inverse();
        }
        z = z + prod;
    }
    // prefactor with the same face-degree exponents, without i^|V|
    P c(field_from_int<F>(1));
    for (auto& [l, f] : g.faces) {
        int e = f.inner ? f.degree() / 2 - 1 : (f.degree() + 1) / 2;
        P x = w.at(l);
        for (int q = 0; q < e; ++q) c = c * x;
    }
    return c * z;
}

// Weight map helpers.
template <class F>
WeightMap<F> weights_from_initial_data(const CwGraph& g, const InitialData<F>& data) {
    WeightMap<F> w;
    for (auto& [l, f] : g.faces) w[l] = data.weight(l.first, l.second);
    return w;
}

template <class F>
WeightMap<F> random_weights(const CwGraph& g, Rng& rng, const std::function<F(Rng&)>& gen) {
    WeightMap<F> w;
    for (auto& [l, f] : g.faces) w[l] = ProjectiveValue<F>(gen(rng));
    return w;
}

} // namespace dskp
