#pragma once

#include "torusdimer/laurent.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace td {

struct LatticePoint {
    long x = 0;
    long y = 0;
    auto operator<=>(const LatticePoint&) const = default;
    LatticePoint operator+(const LatticePoint& o) const { return {x + o.x, y + o.y}; }
    LatticePoint operator-(const LatticePoint& o) const { return {x - o.x, y - o.y}; }
    LatticePoint operator-() const { return {-x, -y}; }
};

struct PolygonSide {
    LatticePoint primitive;  // ccw direction
    long multiplicity = 0;   // edge vector = multiplicity * primitive
};

// Strictly convex lattice polygon, vertices ccw starting from the rightmost-then-lowest vertex.
// Degenerate cases: one vertex (point) or two (segment, traversed there and back).
struct NewtonPolygon {
    std::vector<LatticePoint> vertices;
    std::vector<PolygonSide> sides;
    bool up_to_translation = false;

    long twice_area() const;
    long boundary_points() const;
    long interior_points() const;
    NewtonPolygon translated(const LatticePoint& by) const;
    NewtonPolygon negated() const;
    bool congruent_by_translation(const NewtonPolygon& o) const;
    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) { return a.vertices == b.vertices; }
};

std::string to_string(const NewtonPolygon& n);

long gcd_long(long a, long b);
NewtonPolygon convex_hull(std::vector<LatticePoint> pts);
// Polygon whose ccw boundary is the given edge vectors (sorted by angle here), starting at `start`.
NewtonPolygon polygon_from_edges(std::vector<LatticePoint> edges, LatticePoint start = {0, 0});
NewtonPolygon minkowski_sum(const NewtonPolygon& a, const NewtonPolygon& b);

template <class S>
NewtonPolygon newton_polygon(const LaurentPoly<S>& p, double tol = 0.0)
{
    auto q = p.pruned(tol);
    if (q.is_zero()) throw std::invalid_argument("newton polygon of the zero polynomial");
    std::vector<LatticePoint> pts;
    for (const auto& [e, c] : q.terms()) pts.push_back({e.i, e.j});
    return convex_hull(std::move(pts));
}

}  // namespace td
