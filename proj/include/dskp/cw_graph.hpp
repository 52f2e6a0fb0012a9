#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dskp/lattice.hpp"

namespace dskp {

using FaceLabel = std::pair<int, int>;

// Finite bipartite planar graph with open faces, in the combinatorial
// representation used throughout: every edge knows the face label on
// each side of its (u -> v) direction, and faces are recovered from
// that. Positions exist only to order rotations deterministically.
struct CwGraph {
    struct Vertex {
        int color = -1; // 0 white, 1 black
        long px = 0, py = 0;
        std::vector<int> rotation; // incident edge ids, ccw
    };
    struct Edge {
        int u = -1, v = -1;
        FaceLabel left, right; // sides w.r.t. direction u -> v
    };
    struct Face {
        FaceLabel label;
        bool inner = false;
        std::vector<int> edges; // unordered incidence list
        int degree() const { return static_cast<int>(edges.size()); }
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::map<FaceLabel, Face> faces;

    size_t vertex_count() const { return vertices.size(); }
    size_t edge_count() const { return edges.size(); }
    int white_count() const;
    int black_count() const;
    std::vector<int> whites() const; // sorted by position
    std::vector<int> blacks() const;

    int inner_face_count() const;
    int open_face_count() const;

    // face on the right of the directed edge (a, b)
    const FaceLabel& right_face(int edge_id, int tail) const {
        const Edge& e = edges[edge_id];
        return tail == e.u ? e.right : e.left;
    }
    const FaceLabel& left_face(int edge_id, int tail) const {
        const Edge& e = edges[edge_id];
        return tail == e.u ? e.left : e.right;
    }

    // ccw boundary cycle of an inner face as directed (vertex, edge)
    // steps; throws if the cycle does not close.
    std::vector<std::pair<int, int>> face_cycle(const FaceLabel& f) const;

    void rebuild_faces();     // recompute the face incidence lists from edges
    void rebuild_rotations(); // recompute vertex rotations from positions
    void check_consistency() const;

    // structural comparison by labeled-face adjacency (vertex ids are
    // construction order artifacts and do not participate)
    static bool same_structure(const CwGraph& a, const CwGraph& b);
};

// Skew-symmetric edge signs; stored value is phi(white -> black).
struct KasteleynOrientation {
    std::vector<int> sign; // indexed by edge id

    int white_to_black(int edge_id) const { return sign[edge_id]; }
};

// Speyer's construction: faces of the graph are the initial points in
// the open square cone of p; unit squares carry a cross or a wrench
// depending on the local height pattern.
CwGraph build_cw_graph(const HeightFunction& h, const LatticePoint& p);

// Aztec diamond of size k = the graph of the standard height function
// at p = (0,0,k+1), centered at face (0,0).
CwGraph aztec_graph(int k);

KasteleynOrientation kasteleyn_orientation(const CwGraph& g);

bool kasteleyn_condition_holds(const CwGraph& g, const KasteleynOrientation& phi);

// Degree-4 move: the inner face f is replaced by a smaller square with
// four new corner vertices; the center weight is rewired through the
// octahedron relation by the caller (see spider_move_weights).
struct SpiderResult {
    CwGraph graph;
    KasteleynOrientation phi;
};
SpiderResult spider_move(const CwGraph& g, const KasteleynOrientation& phi, const FaceLabel& f);

// New center weight for the spider move at face f: the unique value
// making the pre/post weight pair satisfy the octahedron relation.
template <class F>
ProjectiveValue<F> spider_center_weight(const std::map<FaceLabel, ProjectiveValue<F>>& w,
                                        const FaceLabel& f) {
    auto at = [&](int di, int dj) -> const ProjectiveValue<F>& {
        auto it = w.find({f.first + di, f.second + dj});
        if (it == w.end()) throw std::out_of_range("spider_center_weight: missing neighbor weight");
        return it->second;
    };
    return dskp_step(at(1, 0), at(-1, 0), at(0, 1), at(0, -1), w.at(f));
}

// Contraction of a degree-2 vertex (both adjacent faces inner) and its
// inverse. Expansion splits vertex v between the wedges of faces f1, f2.
struct MoveResult {
    CwGraph graph;
    KasteleynOrientation phi;
};
MoveResult contract_degree2(const CwGraph& g, const KasteleynOrientation& phi, int vertex);
MoveResult expand_vertex(const CwGraph& g, const KasteleynOrientation& phi, int vertex,
                         const FaceLabel& f1, const FaceLabel& f2);

// All vertices eligible for contraction, in id order.
std::vector<int> contractible_vertices(const CwGraph& g);

} // namespace dskp
