#pragma once

#include "torusdimer/torus_graph.hpp"

#include <functional>

namespace td {

struct ZigZag {
    std::string id;
    std::vector<DartId> darts;  // cyclic
    std::vector<int> turns;     // general graphs: turn taken at the head of each dart, 0 right / 1 left
    LatticePoint cls;
    CycleZ cycle(const TorusGraph& g) const { return CycleZ::from_darts(g, darts); }
};

// Bipartite graphs: right at black, left at white. Other graphs: alternating strands, both
// starting parities, so every zig-zag appears together with its reversal.
std::vector<ZigZag> zigzag_paths(const TorusGraph& g);

// Index of the reversal partner for uncolored graphs (-1 when absent).
std::vector<int> reversal_partners(const TorusGraph& g, const std::vector<ZigZag>& zs);

// Throws GraphError when a zig-zag has class zero.
NewtonPolygon graph_newton_polygon(const TorusGraph& g);

struct MinimalityViolation {
    enum class Kind { zero_class, non_primitive, self_intersection, parallel_bigon };
    Kind kind;
    std::string zigzag_a, zigzag_b;
    DartId dart_a = -1, dart_b = -1;  // darts of the two zig-zags on the (first) shared edge
    LatticePoint translate;           // lift of b relative to a
};

struct MinimalityResult {
    bool minimal = true;
    std::vector<MinimalityViolation> violations;
};

std::string to_string(const MinimalityViolation::Kind k);
MinimalityResult check_minimal(const TorusGraph& g);

// Dual graph: one vertex per face (named after the face), dual dart e+ crosses e+ from its
// left face to its right face. Faces of the dual are named after the primal vertices.
TorusGraph dual_graph(const TorusGraph& g);

struct Isomorphism {
    std::vector<DartId> dart_map;
    std::vector<VertexId> vertex_map;
    std::vector<LatticePoint> potential;  // disp_b(map d) = disp_a(d) + potential[head] - potential[tail]
};

// Orientation-preserving isomorphisms of rotation systems that respect colors and homology.
// `visit` returns true to stop the enumeration.
void for_each_isomorphism(const TorusGraph& a, const TorusGraph& b, const std::function<bool(const Isomorphism&)>& visit);
std::optional<Isomorphism> find_isomorphism(const TorusGraph& a, const TorusGraph& b);

inline CycleZ cycle_image(const TorusGraph& from, const TorusGraph& to, const Isomorphism& iso, const CycleZ& c)
{
    CycleZ out(to.num_edges());
    for (EdgeId e = 0; e < from.num_edges(); ++e) out.add_dart(iso.dart_map[TorusGraph::dart_of(e)], c.flow[e]);
    return out;
}

}  // namespace td
