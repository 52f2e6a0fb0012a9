#include "dskp/dimer.hpp"

#include <algorithm>

namespace dskp {

std::vector<std::vector<int>> enumerate_matchings(const CwGraph& g) {
    if (g.vertex_count() > matching_vertex_guard())
        throw SizeGuard("enumerate_matchings: vertex count over guard (set DSKP_SIZE_GUARD to override)");
    size_t n = g.vertex_count();
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (edge, other)
    for (size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].u].push_back({static_cast<int>(e), g.edges[e].v});
        adj[g.edges[e].v].push_back({static_cast<int>(e), g.edges[e].u});
    }
    for (auto& l : adj)
        std::sort(l.begin(), l.end());

    std::vector<bool> matched(n, false);
    std::vector<int> current;
    std::vector<std::vector<int>> out;

    std::function<void()> rec = [&]() {
        // least-id unmatched vertex
        int v = -1;
        for (size_t i = 0; i < n; ++i)
            if (!matched[i]) {
                v = static_cast<int>(i);
                break;
            }
        if (v == -1) {
            std::vector<int> m = current;
            std::sort(m.begin(), m.end());
            out.push_back(std::move(m));
            return;
        }
        matched[v] = true;
        for (auto& [e, o] : adj[v]) {
            if (matched[o]) continue;
            matched[o] = true;
            current.push_back(e);
            rec();
            current.pop_back();
            matched[o] = false;
        }
        matched[v] = false;
    };
    rec();
    std::sort(out.begin(), out.end());
    return out;
}

mpz_class oriented_configuration_count(const CwGraph& g) {
    auto matchings = enumerate_matchings(g);
    mpz_class total = 0;
    for (auto& m : matchings) {
        mpz_class c = 1;
        c <<= m.size();
        total += c;
    }
    return total;
}

MultiPoly z_oriented_symbolic(const CwGraph& g, const KasteleynOrientation& phi) {
    auto matchings = enumerate_matchings(g);
    MultiPoly total;
    for (auto& m : matchings) {
        MultiPoly prod = MultiPoly::constant(1);
        for (int e : m) {
            int white = g.vertices[g.edges[e].u].color == 0 ? g.edges[e].u : g.edges[e].v;
            const FaceLabel& fr = g.right_face(e, white);
            const FaceLabel& fl = g.left_face(e, white);
            MultiPoly d = MultiPoly::var(face_var(fr.first, fr.second)) -
                          MultiPoly::var(face_var(fl.first, fl.second));
            if (phi.sign[e] < 0) d = -d;
            prod = prod * d;
        }
        total += prod;
    }
    return total;
}

MultiPoly z_det_symbolic(const CwGraph& g) {
    auto whites = g.whites();
    auto blacks = g.blacks();
    std::map<int, size_t> wi, bi;
    for (size_t i = 0; i < whites.size(); ++i) wi[whites[i]] = i;
    for (size_t i = 0; i < blacks.size(); ++i) bi[blacks[i]] = i;
    Matrix<MultiPoly> K(whites.size(), blacks.size(), MultiPoly::zero());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int u = g.edges[e].u, v = g.edges[e].v;
        int white = g.vertices[u].color == 0 ? u : v;
        int black = g.vertices[u].color == 0 ? v : u;
        const FaceLabel& fr = g.right_face(e, white);
        const FaceLabel& fl = g.left_face(e, white);
        K(wi[white], bi[black]) = MultiPoly::var(face_var(fr.first, fr.second)) -
                                  MultiPoly::var(face_var(fl.first, fl.second));
    }
    return det_bareiss(K);
}

SymbolicY symbolic_Y(const CwGraph& g, const KasteleynOrientation& phi) {
    MultiPoly z = z_oriented_symbolic(g, phi);
    if (!z.multilinear()) throw std::domain_error("symbolic_Y: partition function not multilinear");
    std::vector<VarId> universe;
    for (auto& [l, f] : g.faces) {
        int e = f.inner ? f.degree() / 2 - 1 : (f.degree() + 1) / 2;
        if (e != 1)
            throw std::domain_error("symbolic_Y: prefactor exponent != 1 (no complement form)");
        universe.push_back(face_var(l.first, l.second));
    }
    int iv = static_cast<int>(g.vertex_count()) % 4;
    MultiPoly num = complement_multilinear(z, universe);
    if (iv == 2) num = -num;
    return {std::move(num), std::move(z)};
}

} // namespace dskp
