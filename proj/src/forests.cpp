#include "dskp/forests.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace dskp {

namespace {

// union-find with rollback (no path compression)
struct Dsu {
    std::vector<int> parent, size;
    std::vector<int> joined;

    explicit Dsu(int n) : parent(n), size(n, 1) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        joined.push_back(b);
        return true;
    }
    void rollback(size_t mark) {
        while (joined.size() > mark) {
            int b = joined.back();
            joined.pop_back();
            size[parent[b]] -= size[b];
            parent[b] = b;
        }
    }
    size_t mark() const { return joined.size(); }
};

} // namespace

std::pair<int, int> Quadrangulation::black_diagonal(int face) const {
    const auto& f = faces[face];
    std::pair<int, int> d{-1, -1};
    for (int t = 0; t < 4; ++t) {
        if (color[f.corner[t]] != 1) continue;
        if (d.first < 0) d.first = f.corner[t];
        else d.second = f.corner[t];
    }
    if (d.second < 0) throw std::logic_error("face without two black corners");
    return d;
}

std::pair<int, int> Quadrangulation::white_diagonal(int face) const {
    const auto& f = faces[face];
    std::pair<int, int> d{-1, -1};
    for (int t = 0; t < 4; ++t) {
        if (color[f.corner[t]] != 0) continue;
        if (d.first < 0) d.first = f.corner[t];
        else d.second = f.corner[t];
    }
    if (d.second < 0) throw std::logic_error("face without two white corners");
    return d;
}

int Quadrangulation::corner_position(int face, int vertex) const {
    const auto& f = faces[face];
    for (int t = 0; t < 4; ++t)
        if (f.corner[t] == vertex) return t;
    return -1;
}

void Quadrangulation::validate() const {
    for (auto& f : faces) {
        for (int t = 0; t < 4; ++t) {
            if (color[f.corner[t]] == color[f.corner[(t + 1) % 4]])
                throw std::logic_error("face corners do not alternate");
            int c0 = color[f.corner[t]];
            int s0 = f.csign[t], s1 = f.csign[(t + 1) % 4];
            if (c0 == 1 && s0 != s1) throw std::logic_error("sign pattern broken (b->w)");
            if (c0 == 0 && s0 != -s1) throw std::logic_error("sign pattern broken (w->b)");
        }
    }
    int nb = 0;
    for (int v = 0; v < vertex_count; ++v) nb += color[v] == 1;
    int roots = nb - static_cast<int>(blacks_B.size());
    if (static_cast<int>(faces.size()) != 2 * nb - roots - 1)
        throw std::logic_error("face/vertex counts incompatible with complementary pairs");
}

AztecQuad quadrangulate_aztec(int k) {
    if (k < 1) throw std::invalid_argument("quadrangulate_aztec: k >= 1");
    AztecQuad aq;
    aq.k = k;
    Quadrangulation& q = aq.q;

    // black grid x(i,j), 0<=i<k, 0<=j<=k; white grid y(i,j), 0<=i<=k,
    // 0<=j<k; then the boundary vertices b_r (left), b~ (right), w_r
    auto xid = [&](int i, int j) { return i * (k + 1) + j; };
    int nx = k * (k + 1);
    auto yid = [&](int i, int j) { return nx + i * k + j; };
    int ny = (k + 1) * k;
    int b_r = nx + ny, btilde = nx + ny + 1, w_r = nx + ny + 2;
    q.vertex_count = nx + ny + 3;
    q.color.assign(q.vertex_count, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= k; ++j) q.color[xid(i, j)] = 1;
    q.color[b_r] = q.color[btilde] = 1;
    q.color[w_r] = 0;
    q.w_root = w_r;
    q.b_root = b_r;
    q.in_B.assign(q.vertex_count, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= k; ++j) q.in_B[xid(i, j)] = 1;

    auto X = [&](int i, int j) { return i < 0 ? b_r : (i >= k ? btilde : xid(i, j)); };
    auto Y = [&](int i, int j) { return (j < 0 || j >= k) ? w_r : yid(i, j); };

    // corners ccw (E, N, W, S); per-corner matrix signs follow the
    // fixed pattern: even faces (+,+,-,-), odd faces (-,+,+,-)
    auto add_c = [&](int i, int j) {
        Quadrangulation::Face f;
        f.label = AztecQuad::c_label(k, i, j);
        f.corner = {X(i, j), Y(i, j), X(i - 1, j), Y(i, j - 1)};
        f.csign = {1, 1, -1, -1};
        q.faces.push_back(f);
    };
    auto add_d = [&](int i, int j) {
        Quadrangulation::Face f;
        f.label = AztecQuad::d_label(k, i, j);
        f.corner = {Y(i + 1, j), X(i, j + 1), Y(i, j), X(i, j)};
        f.csign = {-1, 1, 1, -1};
        q.faces.push_back(f);
    };
    for (int j = 0; j <= k; ++j) {
        add_c(k, j);
        aq.right_column_faces.push_back(static_cast<int>(q.faces.size()) - 1);
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j <= k; ++j) add_c(i, j);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) add_d(i, j);

    // canonical column order: b~ first, then the black grid row-major
    q.blacks_tilde.push_back(btilde);
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) q.blacks_tilde.push_back(xid(i, j));
    for (int j = 0; j <= k; ++j)
        for (int i = 0; i < k; ++i) q.blacks_B.push_back(xid(i, j));
    for (int j = 0; j < k; ++j)
        for (int i = 0; i <= k; ++i) q.whites.push_back(yid(i, j));

    q.validate();
    return aq;
}

std::vector<int> reference_tree_out(const Quadrangulation& q) {
    std::vector<std::vector<std::pair<int, int>>> adj(q.vertex_count); // (other, face)
    for (size_t f = 0; f < q.faces.size(); ++f) {
        auto [a, b] = q.black_diagonal(static_cast<int>(f));
        adj[a].push_back({b, static_cast<int>(f)});
        adj[b].push_back({a, static_cast<int>(f)});
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    std::vector<int> out(q.vertex_count, -1);
    std::vector<bool> seen(q.vertex_count, false);
    std::deque<int> queue{q.b_root};
    seen[q.b_root] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto& [o, f] : adj[v]) {
            if (seen[o]) continue;
            seen[o] = true;
            out[o] = f;
            queue.push_back(o);
        }
    }
    for (int v = 0; v < q.vertex_count; ++v)
        if (q.color[v] == 1 && v != q.b_root && out[v] < 0)
            throw std::logic_error("black diagonal graph disconnected");
    return out;
}

namespace {

std::vector<int> orient_towards_roots(const Quadrangulation& q, const std::vector<int>& faces,
                                      const std::vector<int>& roots) {
    std::vector<std::vector<std::pair<int, int>>> adj(q.vertex_count);
    for (int f : faces) {
        auto [a, b] = q.black_diagonal(f);
        adj[a].push_back({b, f});
        adj[b].push_back({a, f});
    }
    std::vector<int> out(q.vertex_count, -1);
    std::vector<bool> seen(q.vertex_count, false);
    std::deque<int> queue;
    for (int r : roots) {
        seen[r] = true;
        queue.push_back(r);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto& [o, f] : adj[v]) {
            if (seen[o]) continue;
            seen[o] = true;
            out[o] = f;
            queue.push_back(o);
        }
    }
    return out;
}

int permutation_and_csign(const Quadrangulation& q, const std::vector<int>& black_to_face_m1,
                          const std::vector<int>& black_to_face_m2) {
    size_t nf = q.faces.size();
    size_t m = q.blacks_tilde.size();
    std::vector<int> sigma(nf, -1);
    std::vector<bool> face_seen(nf, false);
    int csign_prod = 1;
    auto set_entry = [&](size_t j, int b, int f) {
        if (f < 0) throw std::logic_error("sign: missing out-edge");
        if (face_seen[f]) throw std::logic_error("sign: face used twice");
        face_seen[f] = true;
        sigma[j] = f;
        int pos = q.corner_position(f, b);
        if (pos < 0) throw std::logic_error("sign: vertex not on face");
        csign_prod *= q.faces[f].csign[pos];
    };
    for (size_t j = 0; j < m; ++j) set_entry(j, q.blacks_tilde[j], black_to_face_m1[q.blacks_tilde[j]]);
    for (size_t j = 0; j < q.blacks_B.size(); ++j)
        set_entry(m + j, q.blacks_B[j], black_to_face_m2[q.blacks_B[j]]);

    std::vector<bool> used(nf, false);
    int transpositions = 0;
    for (size_t j = 0; j < nf; ++j) {
        if (used[j]) continue;
        size_t len = 0, cur = j;
        while (!used[cur]) {
            used[cur] = true;
            cur = static_cast<size_t>(sigma[cur]);
            ++len;
        }
        transpositions += static_cast<int>(len) - 1;
    }
    return ((transpositions % 2 == 0) ? 1 : -1) * csign_prod;
}

std::vector<int> forest_roots(const Quadrangulation& q) {
    std::vector<int> roots;
    for (int v = 0; v < q.vertex_count; ++v)
        if (q.color[v] == 1 && (v == q.b_root || !q.in_B[v])) roots.push_back(v);
    return roots;
}

TreeForestConfig make_config(const Quadrangulation& q, const std::vector<char>& side) {
    TreeForestConfig cfg;
    for (size_t f = 0; f < q.faces.size(); ++f)
        (side[f] == 1 ? cfg.tree_faces : cfg.forest_faces).push_back(static_cast<int>(f));
    cfg.tree_out = orient_towards_roots(q, cfg.tree_faces, {q.b_root});
    cfg.forest_out = orient_towards_roots(q, cfg.forest_faces, forest_roots(q));
    cfg.sign = permutation_and_csign(q, cfg.tree_out, cfg.forest_out);
    return cfg;
}

struct Enumerator {
    const Quadrangulation& q;
    std::vector<std::pair<int, int>> diag;
    Dsu tree_dsu, forest_dsu;
    std::vector<int> root_count;
    std::vector<char> side;
    int tree_edges = 0, nblacks = 0;
    const std::function<void(const TreeForestConfig&)>& emit;

    Enumerator(const Quadrangulation& qq, const std::function<void(const TreeForestConfig&)>& e)
        : q(qq), tree_dsu(qq.vertex_count), forest_dsu(qq.vertex_count), emit(e) {
        for (size_t f = 0; f < q.faces.size(); ++f) diag.push_back(q.black_diagonal((int)f));
        side.assign(q.faces.size(), 0);
        root_count.assign(q.vertex_count, 0);
        for (int r : forest_roots(q)) root_count[r] = 1;
        for (int v = 0; v < q.vertex_count; ++v) nblacks += q.color[v] == 1;
    }

    void run(size_t f) {
        if (f == q.faces.size()) {
            if (tree_edges == nblacks - 1) emit(make_config(q, side));
            return;
        }
        int remaining_after = static_cast<int>(q.faces.size() - f) - 1;
        auto [a, b] = diag[f];

        if (tree_dsu.find(a) != tree_dsu.find(b) && tree_edges < nblacks - 1) {
            size_t mt = tree_dsu.mark();
            tree_dsu.join(a, b);
            side[f] = 1;
            ++tree_edges;
            if (tree_edges + remaining_after >= nblacks - 1) run(f + 1);
            --tree_edges;
            side[f] = 0;
            tree_dsu.rollback(mt);
        }
        int ra = forest_dsu.find(a), rb = forest_dsu.find(b);
        if (ra != rb && root_count[ra] + root_count[rb] <= 1) {
            size_t mf = forest_dsu.mark();
            int rc = root_count[ra] + root_count[rb];
            forest_dsu.join(a, b);
            int nr = forest_dsu.find(a);
            int old = root_count[nr];
            root_count[nr] = rc;
            side[f] = 2;
            if (tree_edges + remaining_after >= nblacks - 1) run(f + 1);
            side[f] = 0;
            root_count[nr] = old;
            forest_dsu.rollback(mf);
        }
    }
};

} // namespace

void enumerate_tree_forest(const Quadrangulation& q,
                           const std::function<void(const TreeForestConfig&)>& emit,
                           size_t edge_guard) {
    if (const char* s = std::getenv("DSKP_SIZE_GUARD"))
        edge_guard = std::max(edge_guard, static_cast<size_t>(std::atol(s)));
    if (q.faces.size() > edge_guard)
        throw SizeGuard("enumerate_tree_forest: edge count over guard (set DSKP_SIZE_GUARD to override)");
    Enumerator e(q, emit);
    e.run(0);
}

namespace {
MultiPoly side_polynomial(const Quadrangulation& q, bool forest_side) {
    MultiPoly acc;
    enumerate_tree_forest(q, [&](const TreeForestConfig& cfg) {
        const auto& faces = forest_side ? cfg.forest_faces : cfg.tree_faces;
        std::vector<VarId> vars;
        for (int f : faces)
            vars.push_back(face_var(q.faces[f].label.first, q.faces[f].label.second));
        std::sort(vars.begin(), vars.end());
        Monomial m;
        for (VarId v : vars) m.e.push_back({v, 1});
        acc.add_term(m, cfg.sign);
    });
    return acc;
}
} // namespace

MultiPoly tree_forest_polynomial(const Quadrangulation& q) { return side_polynomial(q, true); }
MultiPoly tree_forest_polynomial_tree_side(const Quadrangulation& q) {
    return side_polynomial(q, false);
}

DualTreePair temperley(const Quadrangulation& q, const std::map<int, int>& matching) {
    DualTreePair p;
    p.black_out.assign(q.vertex_count, -1);
    p.white_out.assign(q.vertex_count, -1);
    std::vector<bool> face_used(q.faces.size(), false);
    for (auto& [v, f] : matching) {
        if (q.corner_position(f, v) < 0) throw std::invalid_argument("temperley: not incident");
        if (face_used[f]) throw std::invalid_argument("temperley: face matched twice");
        face_used[f] = true;
        if (q.color[v] == 1) p.black_out[v] = f;
        else p.white_out[v] = f;
    }
    for (int v = 0; v < q.vertex_count; ++v) {
        if (v == q.w_root || v == q.b_root) {
            if (matching.count(v)) throw std::invalid_argument("temperley: root matched");
            continue;
        }
        if ((q.color[v] == 1 && p.black_out[v] < 0) || (q.color[v] == 0 && p.white_out[v] < 0))
            throw std::invalid_argument("temperley: vertex unmatched");
    }
    auto check_tree = [&](const std::vector<int>& out, int root, int color) {
        Dsu dsu(q.vertex_count);
        for (int v = 0; v < q.vertex_count; ++v) {
            if (q.color[v] != color || v == root) continue;
            auto [a, b] = color == 1 ? q.black_diagonal(out[v]) : q.white_diagonal(out[v]);
            if (!dsu.join(a, b)) throw std::invalid_argument("temperley: cycle found");
        }
    };
    check_tree(p.black_out, q.b_root, 1);
    check_tree(p.white_out, q.w_root, 0);
    return p;
}

std::map<int, int> reverse_temperley(const Quadrangulation& q, const DualTreePair& trees) {
    std::map<int, int> m;
    for (int v = 0; v < q.vertex_count; ++v) {
        if (v == q.w_root || v == q.b_root) continue;
        int f = q.color[v] == 1 ? trees.black_out[v] : trees.white_out[v];
        if (f < 0) throw std::invalid_argument("reverse_temperley: missing out-edge");
        m[v] = f;
    }
    return m;
}

std::vector<std::map<int, int>> enumerate_double_graph_matchings(const Quadrangulation& q,
                                                                 size_t guard) {
    std::vector<int> verts;
    for (int v = 0; v < q.vertex_count; ++v)
        if (v != q.w_root && v != q.b_root) verts.push_back(v);
    size_t nf = q.faces.size();
    if (verts.size() != nf) throw std::logic_error("double graph: vertex/face count mismatch");
    std::vector<std::vector<int>> options(verts.size());
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t f = 0; f < nf; ++f)
            if (q.corner_position(static_cast<int>(f), verts[i]) >= 0)
                options[i].push_back(static_cast<int>(f));

    std::vector<std::map<int, int>> out;
    std::vector<bool> used(nf, false);
    std::map<int, int> cur;
    size_t visited = 0;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (++visited > guard) throw SizeGuard("double graph enumeration guard");
        if (i == verts.size()) {
            out.push_back(cur);
            return;
        }
        for (int f : options[i]) {
            if (used[f]) continue;
            used[f] = true;
            cur[verts[i]] = f;
            rec(i + 1);
            cur.erase(verts[i]);
            used[f] = false;
        }
    };
    rec(0);
    return out;
}

MDaggerTerm mdagger_term(const Quadrangulation& q, const std::vector<int>& m1_out,
                         const std::vector<int>& m2_out) {
    MDaggerTerm term;
    term.sign = permutation_and_csign(q, m1_out, m2_out);
    std::vector<VarId> vars;
    for (int b : q.blacks_B) {
        int f = m2_out[b];
        vars.push_back(face_var(q.faces[f].label.first, q.faces[f].label.second));
    }
    std::sort(vars.begin(), vars.end());
    for (VarId v : vars) term.monomial.e.push_back({v, 1});
    return term;
}

LexCost enumerate_min_cost_configs(const Quadrangulation& q,
                                   const std::vector<LexCost>& cost_tree,
                                   const std::vector<LexCost>& cost_forest,
                                   const std::function<void(const TreeForestConfig&)>& emit) {
    // cost(config) = const + sum over tree faces of g, g = c_T - c_F
    size_t nf = q.faces.size();
    std::vector<LexCost> g(nf);
    LexCost base{0, 0};
    for (size_t f = 0; f < nf; ++f) {
        base.first += cost_forest[f].first;
        base.second += cost_forest[f].second;
        g[f] = {cost_tree[f].first - cost_forest[f].first,
                cost_tree[f].second - cost_forest[f].second};
    }

    struct State {
        const Quadrangulation& q;
        std::vector<LexCost> g;
        std::vector<std::pair<int, int>> diag;
        Dsu tree_dsu, forest_dsu;
        std::vector<int> root_count;
        std::vector<char> side;
        int tree_edges = 0, nblacks = 0;
        LexCost best{INT64_MAX, INT64_MAX};
        LexCost cur{0, 0};
        std::vector<std::vector<char>> minimizers;
        std::vector<size_t> order;

        State(const Quadrangulation& qq, std::vector<LexCost> gg)
            : q(qq), g(std::move(gg)), tree_dsu(qq.vertex_count), forest_dsu(qq.vertex_count) {
            for (size_t f = 0; f < q.faces.size(); ++f) diag.push_back(q.black_diagonal((int)f));
            side.assign(q.faces.size(), 0);
            root_count.assign(q.vertex_count, 0);
            for (int r : forest_roots(q)) root_count[r] = 1;
            for (int v = 0; v < q.vertex_count; ++v) nblacks += q.color[v] == 1;
            for (size_t f = 0; f < q.faces.size(); ++f) order.push_back(f);
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return g[a] < g[b]; });
        }

        // minimum completion of the current tree over undecided edges
        // (Kruskal, forest constraints relaxed): a valid lower bound
        bool bound_ok(size_t from) {
            Dsu tmp = tree_dsu;
            LexCost lb = cur;
            int needed = nblacks - 1 - tree_edges;
            for (size_t idx = 0; idx < order.size() && needed > 0; ++idx) {
                size_t f = order[idx];
                if (f < from) continue;
                auto [a, b] = diag[f];
                if (tmp.join(a, b)) {
                    lb.first += g[f].first;
                    lb.second += g[f].second;
                    --needed;
                }
            }
            if (needed > 0) return false;
            return lb <= best;
        }

        void run(size_t f) {
            if (f == q.faces.size()) {
                if (tree_edges != nblacks - 1) return;
                if (cur < best) {
                    best = cur;
                    minimizers.clear();
                }
                if (cur == best) minimizers.push_back(side);
                return;
            }
            if (!bound_ok(f)) return;
            int remaining_after = static_cast<int>(q.faces.size() - f) - 1;
            auto [a, b] = diag[f];
            if (tree_dsu.find(a) != tree_dsu.find(b) && tree_edges < nblacks - 1) {
                size_t mt = tree_dsu.mark();
                tree_dsu.join(a, b);
                side[f] = 1;
                ++tree_edges;
                cur.first += g[f].first;
                cur.second += g[f].second;
                if (tree_edges + remaining_after >= nblacks - 1) run(f + 1);
                cur.first -= g[f].first;
                cur.second -= g[f].second;
                --tree_edges;
                side[f] = 0;
                tree_dsu.rollback(mt);
            }
            int ra = forest_dsu.find(a), rb = forest_dsu.find(b);
            if (ra != rb && root_count[ra] + root_count[rb] <= 1) {
                size_t mf = forest_dsu.mark();
                int rc = root_count[ra] + root_count[rb];
                forest_dsu.join(a, b);
                int nr = forest_dsu.find(a);
                int old = root_count[nr];
                root_count[nr] = rc;
                side[f] = 2;
                if (tree_edges + remaining_after >= nblacks - 1) run(f + 1);
                side[f] = 0;
                root_count[nr] = old;
                forest_dsu.rollback(mf);
            }
        }
    };

    State st(q, g);
    st.run(0);
    if (st.minimizers.empty()) throw std::logic_error("no complementary configurations");
    for (auto& s : st.minimizers) emit(make_config(q, s));
    return {base.first + st.best.first, base.second + st.best.second};
}

} // namespace dskp
