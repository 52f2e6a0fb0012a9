#include "dskp/cw_graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace dskp {

namespace {

struct Pos {
    long x, y;
};

long cross(Pos a, Pos b) { return a.x * b.y - a.y * b.x; }

// ccw angular comparator around the origin (exact integer arithmetic)
bool angle_less(Pos a, Pos b) {
    auto half = [](Pos p) { return (p.y > 0 || (p.y == 0 && p.x > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

} // namespace

int CwGraph::white_count() const {
    int n = 0;
    for (auto& v : vertices) n += v.color == 0;
    return n;
}
int CwGraph::black_count() const {
    int n = 0;
    for (auto& v : vertices) n += v.color == 1;
    return n;
}

std::vector<int> CwGraph::whites() const {
    std::vector<int> r;
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].color == 0) r.push_back(static_cast<int>(i));
    std::sort(r.begin(), r.end(), [&](int a, int b) {
        return std::tie(vertices[a].px, vertices[a].py) < std::tie(vertices[b].px, vertices[b].py);
    });
    return r;
}
std::vector<int> CwGraph::blacks() const {
    std::vector<int> r;
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].color == 1) r.push_back(static_cast<int>(i));
    std::sort(r.begin(), r.end(), [&](int a, int b) {
        return std::tie(vertices[a].px, vertices[a].py) < std::tie(vertices[b].px, vertices[b].py);
    });
    return r;
}

int CwGraph::inner_face_count() const {
    int n = 0;
    for (auto& [l, f] : faces) n += f.inner;
    return n;
}
int CwGraph::open_face_count() const {
    int n = 0;
    for (auto& [l, f] : faces) n += !f.inner;
    return n;
}

std::vector<std::pair<int, int>> CwGraph::face_cycle(const FaceLabel& f) const {
    auto it = faces.find(f);
    if (it == faces.end() || !it->second.inner) throw std::invalid_argument("face_cycle: not inner");
    // successor map: tail vertex -> edge with f on the left of (tail -> head)
    std::map<int, int> succ;
    for (int e : it->second.edges) {
        const Edge& ed = edges[e];
        if (ed.left == f) succ[ed.u] = e;
        else succ[ed.v] = e;
    }
    std::vector<std::pair<int, int>> cycle;
    int start = succ.begin()->first;
    int v = start;
    do {
        int e = succ.at(v);
        cycle.push_back({v, e});
        v = edges[e].u == v ? edges[e].v : edges[e].u;
        if (cycle.size() > it->second.edges.size())
            throw std::logic_error("face_cycle: does not close");
    } while (v != start);
    if (cycle.size() != it->second.edges.size())
        throw std::logic_error("face_cycle: multiple components");
    return cycle;
}

void CwGraph::rebuild_faces() {
    std::set<FaceLabel> inner_labels;
    for (auto& [l, f] : faces)
        if (f.inner) inner_labels.insert(l);
    faces.clear();
    for (size_t e = 0; e < edges.size(); ++e) {
        for (const FaceLabel* l : {&edges[e].left, &edges[e].right}) {
            auto& f = faces[*l];
            f.label = *l;
            f.edges.push_back(static_cast<int>(e));
        }
    }
    for (auto& [l, f] : faces) f.inner = inner_labels.count(l) > 0;
}

void CwGraph::rebuild_rotations() {
    for (auto& v : vertices) v.rotation.clear();
    for (size_t e = 0; e < edges.size(); ++e) {
        vertices[edges[e].u].rotation.push_back(static_cast<int>(e));
        vertices[edges[e].v].rotation.push_back(static_cast<int>(e));
    }
    for (size_t vi = 0; vi < vertices.size(); ++vi) {
        auto& v = vertices[vi];
        std::sort(v.rotation.begin(), v.rotation.end(), [&](int a, int b) {
            auto other = [&](int e) {
                int o = edges[e].u == static_cast<int>(vi) ? edges[e].v : edges[e].u;
                return Pos{vertices[o].px - v.px, vertices[o].py - v.py};
            };
            return angle_less(other(a), other(b));
        });
    }
}

void CwGraph::check_consistency() const {
    // bipartite edge endpoints
    for (auto& e : edges) {
        if (vertices[e.u].color == vertices[e.v].color)
            throw std::logic_error("edge endpoints share a color");
        if (e.left == e.right) throw std::logic_error("edge with equal side labels");
    }
    // every inner face closes into one cycle
    for (auto& [l, f] : faces)
        if (f.inner) (void)face_cycle(l);
}

bool CwGraph::same_structure(const CwGraph& a, const CwGraph& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    auto face_sig = [](const CwGraph& g) {
        std::map<FaceLabel, std::pair<bool, int>> sig;
        for (auto& [l, f] : g.faces) sig[l] = {f.inner, f.degree()};
        return sig;
    };
    if (face_sig(a) != face_sig(b)) return false;
    auto edge_sig = [](const CwGraph& g) {
        std::multiset<std::pair<FaceLabel, FaceLabel>> sig;
        for (auto& e : g.edges) {
            auto p = std::minmax(e.left, e.right);
            sig.insert({p.first, p.second});
        }
        return sig;
    };
    return edge_sig(a) == edge_sig(b);
}

namespace {

// Builder for the crosses-and-wrenches patch.
struct Builder {
    const HeightFunction& h;
    LatticePoint p;
    CwGraph g;
    std::map<std::tuple<int, int, int>, int> vertex_key; // (square i, square j, slot)

    Builder(const HeightFunction& hh, const LatticePoint& pp) : h(hh), p(pp) {}

    bool in_closed_cone(int i, int j) const {
        return h(i, j) <= p.k - std::abs(p.i - i) - std::abs(p.j - j);
    }
    bool in_open_cone(int i, int j) const {
        return h(i, j) < p.k - std::abs(p.i - i) - std::abs(p.j - j);
    }

    // slots: 0 = cross center, 1 = wrench endpoint near the low corner,
    // 2 = wrench endpoint near the high corner
    struct Square {
        bool cross;
        std::pair<int, int> low, high; // unequal corners of a wrench (heights h0 -+ 1)
        std::pair<int, int> eq1, eq2;  // the equal-height diagonal
    };

    Square classify(int i, int j) const {
        int hA = h(i, j), hB = h(i + 1, j), hC = h(i + 1, j + 1), hD = h(i, j + 1);
        Square s{};
        if (hA == hC && hB == hD) {
            s.cross = true;
            return s;
        }
        s.cross = false;
        if (hA == hC) {
            s.eq1 = {i, j};
            s.eq2 = {i + 1, j + 1};
            s.low = hB < hD ? std::make_pair(i + 1, j) : std::make_pair(i, j + 1);
            s.high = hB < hD ? std::make_pair(i, j + 1) : std::make_pair(i + 1, j);
        } else {
            s.eq1 = {i + 1, j};
            s.eq2 = {i, j + 1};
            s.low = hA < hC ? std::make_pair(i, j) : std::make_pair(i + 1, j + 1);
            s.high = hA < hC ? std::make_pair(i + 1, j + 1) : std::make_pair(i, j);
        }
        return s;
    }

    int vertex(int i, int j, int slot, Pos pos) {
        auto key = std::make_tuple(i, j, slot);
        auto it = vertex_key.find(key);
        if (it != vertex_key.end()) return it->second;
        int id = static_cast<int>(g.vertices.size());
        CwGraph::Vertex v;
        v.px = pos.x;
        v.py = pos.y;
        g.vertices.push_back(v);
        vertex_key[key] = id;
        return id;
    }

    // graph vertex of square (i,j) facing the square side that contains
    // grid corner "toward"
    int port(int i, int j, std::pair<int, int> side_a, std::pair<int, int> side_b) {
        Square s = classify(i, j);
        Pos center{4L * i + 2, 4L * j + 2};
        if (s.cross) return vertex(i, j, 0, center);
        auto near_pos = [&](std::pair<int, int> corner) {
            Pos c{4L * corner.first, 4L * corner.second};
            return Pos{center.x + (c.x < center.x ? -1 : 1), center.y + (c.y < center.y ? -1 : 1)};
        };
        // each side contains exactly one of the unequal corners
        if (side_a == s.low || side_b == s.low) return vertex(i, j, 1, near_pos(s.low));
        return vertex(i, j, 2, near_pos(s.high));
    }

    void add_edge(int u, int v, FaceLabel fa, FaceLabel fb) {
        // orient the side labels geometrically: fa/fb centers are grid points
        Pos pu{g.vertices[u].px, g.vertices[u].py};
        Pos pv{g.vertices[v].px, g.vertices[v].py};
        Pos d{pv.x - pu.x, pv.y - pu.y};
        Pos ra{4L * fa.first - pu.x, 4L * fa.second - pu.y};
        CwGraph::Edge e;
        e.u = u;
        e.v = v;
        if (cross(d, ra) > 0) {
            e.left = fa;
            e.right = fb;
        } else {
            e.left = fb;
            e.right = fa;
        }
        g.edges.push_back(e);
    }

    CwGraph build() {
        if (!p.valid()) throw std::invalid_argument("build_cw_graph: p not on the lattice");
        if (p.k <= h(p.i, p.j)) throw std::invalid_argument("build_cw_graph: p not above surface");

        // the closed square cone must fit strictly inside the window
        for (int i = h.imin(); i <= h.imax(); ++i)
            for (int j = h.jmin(); j <= h.jmax(); ++j) {
                bool boundary =
                    (i == h.imin() || i == h.imax() || j == h.jmin() || j == h.jmax());
                if (boundary && in_closed_cone(i, j))
                    throw WindowTooSmall("build_cw_graph: square cone reaches window boundary");
            }

        std::set<FaceLabel> inner;
        for (int i = h.imin(); i <= h.imax(); ++i)
            for (int j = h.jmin(); j <= h.jmax(); ++j)
                if (in_open_cone(i, j)) inner.insert({i, j});
        if (inner.empty()) throw std::logic_error("build_cw_graph: empty interior");

        auto is_inner = [&](int i, int j) { return inner.count({i, j}) > 0; };

        // vertical grid edges {(i,j),(i,j+1)}: connect squares (i-1,j) and (i,j)
        for (int i = h.imin() + 1; i <= h.imax(); ++i)
            for (int j = h.jmin(); j + 1 <= h.jmax(); ++j) {
                if (!is_inner(i, j) && !is_inner(i, j + 1)) continue;
                int u = port(i - 1, j, {i, j}, {i, j + 1});
                int v = port(i, j, {i, j}, {i, j + 1});
                add_edge(u, v, {i, j}, {i, j + 1});
            }
        // horizontal grid edges {(i,j),(i+1,j)}: connect squares (i,j-1) and (i,j)
        for (int i = h.imin(); i + 1 <= h.imax(); ++i)
            for (int j = h.jmin() + 1; j <= h.jmax(); ++j) {
                if (!is_inner(i, j) && !is_inner(i + 1, j)) continue;
                int u = port(i, j - 1, {i, j}, {i + 1, j});
                int v = port(i, j, {i, j}, {i + 1, j});
                add_edge(u, v, {i, j}, {i + 1, j});
            }
        // wrench handles
        for (int i = h.imin(); i + 1 <= h.imax(); ++i)
            for (int j = h.jmin(); j + 1 <= h.jmax(); ++j) {
                Square s = classify(i, j);
                if (s.cross) continue;
                bool used = false;
                for (auto c : {s.eq1, s.eq2})
                    if (is_inner(c.first, c.second)) used = true;
                if (!used) continue;
                Pos center{4L * i + 2, 4L * j + 2};
                auto near_pos = [&](std::pair<int, int> corner) {
                    Pos c{4L * corner.first, 4L * corner.second};
                    return Pos{center.x + (c.x < center.x ? -1 : 1),
                               center.y + (c.y < center.y ? -1 : 1)};
                };
                int u = vertex(i, j, 1, near_pos(s.low));
                int v = vertex(i, j, 2, near_pos(s.high));
                add_edge(u, v, s.eq1, s.eq2);
            }

        // faces from edge side labels
        for (size_t e = 0; e < g.edges.size(); ++e)
            for (const FaceLabel* l : {&g.edges[e].left, &g.edges[e].right}) {
                auto& f = g.faces[*l];
                f.label = *l;
                f.edges.push_back(static_cast<int>(e));
            }
        for (auto& [l, f] : g.faces) f.inner = inner.count(l) > 0;
        for (auto& l : inner)
            if (!g.faces.count(l)) throw std::logic_error("inner face with no edges");

        color_vertices();
        g.rebuild_rotations();
        g.check_consistency();
        if (g.white_count() != g.black_count())
            throw std::logic_error("build_cw_graph: |W| != |B|");
        return std::move(g);
    }

    void color_vertices() {
        std::vector<std::vector<int>> adj(g.vertices.size());
        for (auto& e : g.edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        // deterministic root: lowest position
        int root = 0;
        for (size_t i = 1; i < g.vertices.size(); ++i)
            if (std::tie(g.vertices[i].px, g.vertices[i].py) <
                std::tie(g.vertices[root].px, g.vertices[root].py))
                root = static_cast<int>(i);
        std::deque<int> q{root};
        g.vertices[root].color = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v]) {
                if (g.vertices[w].color == -1) {
                    g.vertices[w].color = 1 - g.vertices[v].color;
                    q.push_back(w);
                } else if (g.vertices[w].color == g.vertices[v].color) {
                    throw std::logic_error("build_cw_graph: graph not bipartite");
                }
            }
        }
        for (auto& v : g.vertices)
            if (v.color == -1) throw std::logic_error("build_cw_graph: disconnected");
    }
};

} // namespace

CwGraph build_cw_graph(const HeightFunction& h, const LatticePoint& p) {
    Builder b(h, p);
    return b.build();
}

CwGraph aztec_graph(int k) {
    if (k < 1) throw std::invalid_argument("aztec_graph: k >= 1");
    HeightFunction h = HeightFunction::standard(k + 3);
    int ci = (k + 1) & 1; // center so that (ci, 0, k+1) is on the lattice
    CwGraph g = build_cw_graph(h, {ci, 0, k + 1});
    if (ci != 0) {
        // recenter labels at (0,0); face (i,j) then sits at initial
        // height [i+j+k+1]_2
        CwGraph shifted = g;
        for (auto& e : shifted.edges) {
            e.left.first -= ci;
            e.right.first -= ci;
        }
        std::map<FaceLabel, CwGraph::Face> nf;
        for (auto& [l, f] : shifted.faces) {
            CwGraph::Face copy = f;
            copy.label.first -= ci;
            nf[copy.label] = copy;
        }
        shifted.faces = std::move(nf);
        return shifted;
    }
    return g;
}

KasteleynOrientation kasteleyn_orientation(const CwGraph& g) {
    size_t ne = g.edges.size();
    KasteleynOrientation phi;
    phi.sign.assign(ne, 0);

    // spanning tree via BFS
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertices.size()); // (neighbor, edge)
    for (size_t e = 0; e < ne; ++e) {
        adj[g.edges[e].u].push_back({g.edges[e].v, static_cast<int>(e)});
        adj[g.edges[e].v].push_back({g.edges[e].u, static_cast<int>(e)});
    }
    std::vector<bool> seen(g.vertices.size(), false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto& [w, e] : adj[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            phi.sign[e] = 1; // tree edges fixed first
            q.push_back(w);
        }
    }

    // peel inner faces: each non-tree edge is fixed by a face with one
    // remaining unknown
    std::vector<const CwGraph::Face*> inner;
    for (auto& [l, f] : g.faces)
        if (f.inner) inner.push_back(&f);
    std::vector<int> unknown(inner.size(), 0);
    for (size_t fi = 0; fi < inner.size(); ++fi)
        for (int e : inner[fi]->edges) unknown[fi] += phi.sign[e] == 0;

    auto face_target = [&](const CwGraph::Face* f) {
        int k2 = f->degree() / 2;
        return (k2 % 2 == 0) ? -1 : 1; // (-1)^(k+1)
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t fi = 0; fi < inner.size(); ++fi) {
            if (unknown[fi] != 1) continue;
            int prod = 1, missing = -1;
            for (int e : inner[fi]->edges) {
                if (phi.sign[e] == 0) missing = e;
                else prod *= phi.sign[e];
            }
            phi.sign[missing] = face_target(inner[fi]) * prod;
            for (size_t fj = 0; fj < inner.size(); ++fj)
                for (int e : inner[fj]->edges)
                    if (e == missing) unknown[fj]--;
            progress = true;
        }
    }
    for (size_t e = 0; e < ne; ++e)
        if (phi.sign[e] == 0) throw std::logic_error("kasteleyn: peeling stuck");
    if (!kasteleyn_condition_holds(g, phi)) throw std::logic_error("kasteleyn: condition failed");
    return phi;
}

bool kasteleyn_condition_holds(const CwGraph& g, const KasteleynOrientation& phi) {
    for (auto& [l, f] : g.faces) {
        if (!f.inner) continue;
        if (f.degree() % 2 != 0) return false;
        int prod = 1;
        for (int e : f.edges) prod *= phi.sign[e];
        int k2 = f.degree() / 2;
        int target = (k2 % 2 == 0) ? -1 : 1;
        if (prod != target) return false;
    }
    return true;
}

SpiderResult spider_move(const CwGraph& g, const KasteleynOrientation& phi, const FaceLabel& f) {
    auto it = g.faces.find(f);
    if (it == g.faces.end() || !it->second.inner || it->second.degree() != 4)
        throw std::invalid_argument("spider_move: need an inner face of degree 4");
    auto cycle = g.face_cycle(f); // [(v_t, e_t)], e_t from v_t to v_{t+1}, ccw

    std::vector<int> v(4), e(4);
    std::vector<FaceLabel> around(4);
    for (int t = 0; t < 4; ++t) {
        v[t] = cycle[t].first;
        e[t] = cycle[t].second;
        around[t] = g.right_face(e[t], v[t]);
    }
    std::set<FaceLabel> distinct(around.begin(), around.end());
    if (distinct.size() != 4 || distinct.count(f))
        throw std::invalid_argument("spider_move: surrounding faces not distinct");

    CwGraph out = g;
    for (auto& vert : out.vertices) vert.rotation.clear(); // invalidated by the move

    // new corner vertices, pulled toward the face center
    long cx = 4L * f.first, cy = 4L * f.second;
    std::vector<int> u(4);
    for (int t = 0; t < 4; ++t) {
        CwGraph::Vertex nv;
        nv.color = 1 - g.vertices[v[t]].color;
        nv.px = cx + (g.vertices[v[t]].px - cx) / 2;
        nv.py = cy + (g.vertices[v[t]].py - cy) / 2;
        u[t] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(nv);
    }

    // remove old square edges (keep ids stable by rebuilding the lists)
    std::vector<CwGraph::Edge> kept;
    std::vector<int> kept_sign;
    std::vector<int> old_sign(4);
    {
        std::set<int> removed(e.begin(), e.end());
        for (int t = 0; t < 4; ++t) old_sign[t] = phi.sign[e[t]];
        for (size_t id = 0; id < out.edges.size(); ++id) {
            if (removed.count(static_cast<int>(id))) continue;
            kept.push_back(out.edges[id]);
            kept_sign.push_back(phi.sign[id]);
        }
    }
    out.edges = std::move(kept);

    KasteleynOrientation nphi;
    nphi.sign = std::move(kept_sign);

    auto push_edge = [&](int a, int b, FaceLabel l, FaceLabel r, int sgn_w_to_b) {
        CwGraph::Edge ne;
        ne.u = a;
        ne.v = b;
        ne.left = l;
        ne.right = r;
        out.edges.push_back(ne);
        nphi.sign.push_back(sgn_w_to_b);
    };

    for (int t = 0; t < 4; ++t) {
        int tp = (t + 3) % 4;
        // leg v_t -> u_t: g_{t-1} on the left, g_t on the right
        push_edge(v[t], u[t], around[tp], around[t], 1);
        // inner square edge u_t -> u_{t+1} replaces e_t: f left, g_t right
        push_edge(u[t], u[(t + 1) % 4], f, around[t], -old_sign[t]);
    }

    out.rebuild_faces();
    out.check_consistency();
    if (!kasteleyn_condition_holds(out, nphi))
        throw std::logic_error("spider_move: orientation update failed");
    return {std::move(out), std::move(nphi)};
}

std::vector<int> contractible_vertices(const CwGraph& g) {
    std::vector<std::vector<int>> inc(g.vertices.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        inc[g.edges[e].u].push_back(static_cast<int>(e));
        inc[g.edges[e].v].push_back(static_cast<int>(e));
    }
    std::vector<int> out;
    for (size_t v = 0; v < g.vertices.size(); ++v) {
        if (inc[v].size() != 2) continue;
        const auto& e0 = g.edges[inc[v][0]];
        const auto& e1 = g.edges[inc[v][1]];
        int x = e0.u == static_cast<int>(v) ? e0.v : e0.u;
        int y = e1.u == static_cast<int>(v) ? e1.v : e1.u;
        if (x == y) continue;
        auto f0 = std::minmax(e0.left, e0.right);
        auto f1 = std::minmax(e1.left, e1.right);
        if (f0 != f1) continue;
        if (!g.faces.at(f0.first).inner || !g.faces.at(f0.second).inner) continue;
        out.push_back(static_cast<int>(v));
    }
    return out;
}

MoveResult contract_degree2(const CwGraph& g, const KasteleynOrientation& phi, int vertex) {
    std::vector<int> inc;
    for (size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].u == vertex || g.edges[e].v == vertex) inc.push_back(static_cast<int>(e));
    if (inc.size() != 2) throw std::invalid_argument("contract: vertex degree != 2");
    const auto& e0 = g.edges[inc[0]];
    const auto& e1 = g.edges[inc[1]];
    int x = e0.u == vertex ? e0.v : e0.u;
    int y = e1.u == vertex ? e1.v : e1.u;
    if (x == y) throw std::invalid_argument("contract: would create a loop");
    auto f0 = std::minmax(e0.left, e0.right);
    auto f1 = std::minmax(e1.left, e1.right);
    if (f0 != f1) throw std::invalid_argument("contract: side faces disagree");
    if (!g.faces.at(f0.first).inner || !g.faces.at(f0.second).inner)
        throw std::invalid_argument("contract: adjacent faces must be inner");

    // the removed pair must carry sign product -1; otherwise apply a
    // gauge flip at x first (flips preserve the face condition)
    std::vector<int> adjusted = phi.sign;
    if (phi.sign[inc[0]] * phi.sign[inc[1]] == 1) {
        for (size_t e = 0; e < g.edges.size(); ++e)
            if (g.edges[e].u == x || g.edges[e].v == x) adjusted[e] = -adjusted[e];
    }

    CwGraph out;
    out.faces = g.faces; // keeps inner flags; edge lists rebuilt below
    // vertex remap: drop `vertex`, merge y into x
    std::vector<int> remap(g.vertices.size(), -1);
    for (size_t vv = 0; vv < g.vertices.size(); ++vv) {
        if (static_cast<int>(vv) == vertex || static_cast<int>(vv) == y) continue;
        remap[vv] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(g.vertices[vv]);
        out.vertices.back().rotation.clear();
    }
    remap[y] = remap[x];

    KasteleynOrientation nphi;
    std::set<std::pair<int, int>> seen_pairs;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (e == static_cast<size_t>(inc[0]) || e == static_cast<size_t>(inc[1])) continue;
        CwGraph::Edge ne = g.edges[e];
        ne.u = remap[ne.u];
        ne.v = remap[ne.v];
        auto pr = std::minmax(ne.u, ne.v);
        if (!seen_pairs.insert(pr).second)
            throw std::invalid_argument("contract: would create a parallel edge");
        out.edges.push_back(ne);
        nphi.sign.push_back(adjusted[e]);
    }
    out.rebuild_faces();
    out.check_consistency();
    if (!kasteleyn_condition_holds(out, nphi))
        throw std::logic_error("contract: orientation invariant failed");
    return {std::move(out), std::move(nphi)};
}

MoveResult expand_vertex(const CwGraph& g, const KasteleynOrientation& phi, int vertex,
                         const FaceLabel& f1, const FaceLabel& f2) {
    if (!g.faces.at(f1).inner || !g.faces.at(f2).inner)
        throw std::invalid_argument("expand: faces must be inner");
    const auto& rot = g.vertices[vertex].rotation;
    if (rot.empty()) throw std::invalid_argument("expand: vertex rotation not available");
    size_t n = rot.size();
    // wedge t sits between rot[t] and rot[t+1]; it is the left face of
    // rot[t] directed out of `vertex`
    auto wedge = [&](size_t t) { return g.left_face(rot[t], vertex); };
    int t1 = -1, t2 = -1;
    for (size_t t = 0; t < n; ++t) {
        if (wedge(t) == f1) t1 = static_cast<int>(t);
        if (wedge(t) == f2) t2 = static_cast<int>(t);
    }
    if (t1 < 0 || t2 < 0 || t1 == t2) throw std::invalid_argument("expand: wedges not found");

    CwGraph out = g;
    for (auto& vv : out.vertices) vv.rotation.clear();

    int v1 = vertex;
    int v2 = static_cast<int>(out.vertices.size());
    CwGraph::Vertex nv2 = g.vertices[vertex];
    nv2.rotation.clear();
    out.vertices.push_back(nv2);
    int u = static_cast<int>(out.vertices.size());
    CwGraph::Vertex nu;
    nu.color = 1 - g.vertices[vertex].color;
    nu.px = g.vertices[vertex].px + 1;
    nu.py = g.vertices[vertex].py;
    out.vertices.push_back(nu);

    // edges in the arc after wedge t1 up to wedge t2 move to v2
    for (int t = (t1 + 1) % static_cast<int>(n); ; t = (t + 1) % static_cast<int>(n)) {
        int e = rot[t];
        if (out.edges[e].u == vertex) out.edges[e].u = v2;
        else out.edges[e].v = v2;
        if (t == t2) break;
    }

    KasteleynOrientation nphi = phi;
    auto push_edge = [&](int a, int b, FaceLabel l, FaceLabel r, int phi_a_to_b) {
        CwGraph::Edge ne;
        ne.u = a;
        ne.v = b;
        ne.left = l;
        ne.right = r;
        out.edges.push_back(ne);
        // stored sign is phi(white -> black)
        int s = out.vertices[a].color == 0 ? phi_a_to_b : -phi_a_to_b;
        nphi.sign.push_back(s);
    };
    // chain v1 - u - v2 with f1 kept on the left of v1 -> u -> v2
    push_edge(u, v1, f1, f2, 1);
    push_edge(u, v2, f2, f1, -1);

    out.rebuild_faces();
    out.check_consistency();
    if (!kasteleyn_condition_holds(out, nphi))
        throw std::logic_error("expand: orientation update failed");
    return {std::move(out), std::move(nphi)};
}

} // namespace dskp
