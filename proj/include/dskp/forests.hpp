#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "dskp/dimer.hpp"
#include "dskp/linalg.hpp"
#include "dskp/multipoly.hpp"

namespace dskp {

// Sphere quadrangulation with two marked adjacent vertices w_r, b_r and
// a distinguished subset B of the non-root black vertices. Faces are
// stored with their four corners in ccw order (colors alternate) plus
// the per-corner sign pattern of the incidence matrix C.
struct Quadrangulation {
    struct Face {
        FaceLabel label;
        std::array<int, 4> corner; // ccw
        std::array<int, 4> csign;  // alternation: (fb,fw) same, (fw,fb) opposite
    };

    int vertex_count = 0;
    std::vector<int> color; // 0 white, 1 black
    int w_root = -1, b_root = -1;
    std::vector<char> in_B;  // indexed by vertex, blacks only
    std::vector<Face> faces; // canonical row order for the matrix C

    std::vector<int> whites;       // W (excluding w_root)
    std::vector<int> blacks_tilde; // B~ (excluding b_root), canonical column order
    std::vector<int> blacks_B;     // B subset, canonical order

    // black diagonal of face f (tail, head arbitrary but fixed)
    std::pair<int, int> black_diagonal(int face) const;
    std::pair<int, int> white_diagonal(int face) const;

    int corner_position(int face, int vertex) const;

    void validate() const;
};

// The Aztec-diamond quadrangulation: two extra black vertices left and
// right of A_k, one extra white around top and bottom. Face labels
// match the lattice labels of aztec_graph(k); the first k+1 faces in
// row order are the even faces of the column adjacent to the right
// black root.
struct AztecQuad {
    int k = 0;
    Quadrangulation q;
    std::vector<int> right_column_faces; // rows 0..k: the c_{k,j} faces

    // even ("c") face label, 0 <= i,j <= k, and odd ("d") face label
    static FaceLabel c_label(int k, int i, int j) { return {i - j, i + j - k}; }
    static FaceLabel d_label(int k, int i, int j) { return {i - j, i + j + 1 - k}; }
};

AztecQuad quadrangulate_aztec(int k);

// A complementary pair: T spanning tree of the black-diagonal graph
// rooted at b_r, F = complementary spanning forest rooted at the
// non-selected black vertices; both oriented towards their roots.
struct TreeForestConfig {
    std::vector<int> tree_faces;   // faces whose diagonal lies in T
    std::vector<int> forest_faces; // faces whose diagonal lies in F
    std::vector<int> tree_out;     // per black vertex: face of its T out-edge (-1 at root)
    std::vector<int> forest_out;   // per black vertex: face of its F out-edge (-1 at roots)
    int sign = 0;
};

// Exhaustive enumeration (guarded); callback per configuration.
void enumerate_tree_forest(const Quadrangulation& q,
                           const std::function<void(const TreeForestConfig&)>& emit,
                           size_t edge_guard = 48);

// Branch-and-bound enumeration of the configurations minimizing
// sum of per-face cost over the chosen side, lexicographically.
// cost_forest[f] is paid when face f's diagonal lies in F, cost_tree[f]
// when it lies in T. Returns the minimum and emits all minimizers.
using LexCost = std::pair<int64_t, int64_t>;
LexCost enumerate_min_cost_configs(const Quadrangulation& q,
                                   const std::vector<LexCost>& cost_tree,
                                   const std::vector<LexCost>& cost_forest,
                                   const std::function<void(const TreeForestConfig&)>& emit);

// Signed polynomial of Corollary-style expansions: sum over configs of
// sign(T,F) * prod of forest-face variables; equals the oriented dimer
// partition function up to one global sign.
MultiPoly tree_forest_polynomial(const Quadrangulation& q);
MultiPoly tree_forest_polynomial_tree_side(const Quadrangulation& q);

// Matrices of the incidence identities. All are exact over the field.
template <class F>
struct CMatrices {
    Matrix<F> C;       // (C(1)^{btilde} | C(1)^B | C(a)^B), |F| x |F|
    Matrix<F> K;       // |W| x |B| weighted adjacency
    Matrix<F> stacked; // rows: C(1)^t_W over M (reference matching), |F| x |F|
    Matrix<F> star;    // M . C(1)^{Btilde}, |B~| x |B~|
};

// reference spanning tree of the black-diagonal graph rooted at b_r
std::vector<int> reference_tree_out(const Quadrangulation& q); // per black vertex: face id or -1

template <class F>
CMatrices<F> build_c_matrices(const Quadrangulation& q, const WeightMap<F>& w) {
    using std::size_t;
    size_t nf = q.faces.size();
    size_t nw = q.whites.size();
    size_t nbt = q.blacks_tilde.size();
    size_t nb = q.blacks_B.size();

    auto weight_of = [&](int face) -> F {
        const auto& pv = w.at(q.faces[face].label);
        if (!pv.is_finite()) throw std::domain_error("build_c_matrices: non-finite weight");
        return pv.value();
    };

    auto csign_of = [&](int face, int v) -> int {
        int pos = q.corner_position(face, v);
        return pos < 0 ? 0 : q.faces[face].csign[pos];
    };

    CMatrices<F> m{Matrix<F>(nf, nbt + nb, field_from_int<F>(0)),
                   Matrix<F>(nw, nb, field_from_int<F>(0)),
                   Matrix<F>(nf, nf, field_from_int<F>(0)),
                   Matrix<F>(nbt, nbt, field_from_int<F>(0))};

    // columns: blacks_tilde (ones), then blacks_B (weights)
    for (size_t f = 0; f < nf; ++f) {
        for (size_t c = 0; c < nbt; ++c) {
            int s = csign_of(static_cast<int>(f), q.blacks_tilde[c]);
            if (s != 0) m.C(f, c) = field_from_int<F>(s);
        }
        for (size_t c = 0; c < nb; ++c) {
            int s = csign_of(static_cast<int>(f), q.blacks_B[c]);
            if (s != 0) m.C(f, nbt + c) = field_from_int<F>(s) * weight_of(static_cast<int>(f));
        }
    }

    // K over the quadrangulation edges not touching the roots; the face
    // where b immediately precedes w in ccw order lies on the right of
    // (w -> b) and contributes +a_f, the other side -a_f.
    std::map<int, size_t> wi, bi;
    for (size_t i = 0; i < nw; ++i) wi[q.whites[i]] = i;
    for (size_t i = 0; i < nb; ++i) bi[q.blacks_B[i]] = i;
    for (size_t f = 0; f < nf; ++f) {
        const auto& face = q.faces[f];
        for (int t = 0; t < 4; ++t) {
            int a = face.corner[t], b = face.corner[(t + 1) % 4];
            if (q.color[a] == 1 && wi.count(b) && bi.count(a))
                m.K(wi[b], bi[a]) += weight_of(static_cast<int>(f));
            if (q.color[a] == 0 && wi.count(a) && bi.count(b))
                m.K(wi[a], bi[b]) -= weight_of(static_cast<int>(f));
        }
    }

    // stacked block: rows W of C(1)^t, then the reference matching M
    auto tree_out = reference_tree_out(q);
    for (size_t r = 0; r < nw; ++r)
        for (size_t f = 0; f < nf; ++f) {
            int s = csign_of(static_cast<int>(f), q.whites[r]);
            if (s != 0) m.stacked(r, f) = field_from_int<F>(s);
        }
    for (size_t r = 0; r < nbt; ++r) {
        int b = q.blacks_tilde[r];
        int f = tree_out[b];
        if (f < 0) throw std::logic_error("reference tree missing out-edge");
        m.stacked(nw + r, f) = field_from_int<F>(1);
    }

    // star = M . C(1)^{Btilde}
    for (size_t r = 0; r < nbt; ++r) {
        int f = tree_out[q.blacks_tilde[r]];
        for (size_t c = 0; c < nbt; ++c) {
            int s = csign_of(f, q.blacks_tilde[c]);
            if (s != 0) m.star(r, c) = field_from_int<F>(s);
        }
    }
    return m;
}

struct DetCIdentityReport {
    bool det_k_matches = false;
    bool star_unimodular = false;
    bool stacked_unimodular = false;
    bool block_relation = false;
};

template <class F>
DetCIdentityReport det_c_identity(const Quadrangulation& q, const WeightMap<F>& w) {
    auto m = build_c_matrices(q, w);
    F dk = det(m.K);
    F dc = det(m.C);
    DetCIdentityReport rep;
    rep.det_k_matches = (dk == dc) || (dk == -dc);
    F ds = det(m.star);
    rep.star_unimodular = (ds == field_from_int<F>(1) || ds == field_from_int<F>(-1));
    F dst = det(m.stacked);
    rep.stacked_unimodular =
        (dst == field_from_int<F>(1) || dst == field_from_int<F>(-1));

    // block identity: (C(1)^t_W ; M) (C(1)^Btilde | C(a)^B) = [[0, K], [*, .]]
    size_t nw = q.whites.size(), nbt = q.blacks_tilde.size(), nb = q.blacks_B.size();
    rep.block_relation = true;
    for (size_t r = 0; r < nw; ++r) {
        for (size_t c = 0; c < nbt + nb; ++c) {
            F acc = field_from_int<F>(0);
            for (size_t f = 0; f < q.faces.size(); ++f) acc += m.stacked(r, f) * m.C(f, c);
            F expect = c < nbt ? field_from_int<F>(0) : m.K(r, c - nbt);
            if (!(acc == expect)) rep.block_relation = false;
        }
    }
    for (size_t r = 0; r < nbt; ++r)
        for (size_t c = 0; c < nbt; ++c) {
            F acc = field_from_int<F>(0);
            for (size_t f = 0; f < q.faces.size(); ++f) acc += m.stacked(nw + r, f) * m.C(f, c);
            if (!(acc == m.star(r, c))) rep.block_relation = false;
        }
    return rep;
}

// Temperley correspondence between perfect matchings of the reduced
// double graph and pairs of dual spanning trees. A matching is a map
// from every non-root vertex (white and black) to an incident face.
struct DualTreePair {
    std::vector<int> black_out; // per black vertex: face id (-1 at b_root)
    std::vector<int> white_out; // per white vertex: face id (-1 at w_root)
};

DualTreePair temperley(const Quadrangulation& q, const std::map<int, int>& matching);
std::map<int, int> reverse_temperley(const Quadrangulation& q, const DualTreePair& trees);

// All perfect matchings of the reduced double graph (vertices W, B~, F).
std::vector<std::map<int, int>> enumerate_double_graph_matchings(const Quadrangulation& q,
                                                                 size_t guard = 1u << 22);

// Signed contribution of a matching pair of the determinant expansion;
// used for the cycle-reversal cancellation check.
struct MDaggerTerm {
    int sign = 0;
    Monomial monomial;
};
MDaggerTerm mdagger_term(const Quadrangulation& q, const std::vector<int>& m1_out,
                         const std::vector<int>& m2_out);

} // namespace dskp
