#include "torusdimer/newton_polygon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace td {

namespace {

long cross(const LatticePoint& a, const LatticePoint& b) { return a.x * b.y - a.y * b.x; }

int half_plane(const LatticePoint& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool angle_less(const LatticePoint& a, const LatticePoint& b)
{
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

// Rotates a ccw vertex cycle so it starts at the rightmost-then-lowest vertex.
void normalize_start(std::vector<LatticePoint>& v)
{
    if (v.empty()) return;
    auto it = std::min_element(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.x != b.x) return a.x > b.x;
        return a.y < b.y;
    });
    std::rotate(v.begin(), it, v.end());
}

NewtonPolygon from_vertices(std::vector<LatticePoint> v)
{
    normalize_start(v);
    NewtonPolygon n;
    n.vertices = v;
    if (v.size() < 2) return n;
    for (std::size_t k = 0; k < v.size(); ++k) {
        LatticePoint e = v[(k + 1) % v.size()] - v[k];
        long g = gcd_long(e.x, e.y);
        n.sides.push_back({{e.x / g, e.y / g}, g});
    }
    return n;
}

}  // namespace

long gcd_long(long a, long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

long NewtonPolygon::twice_area() const
{
    long s = 0;
    for (std::size_t k = 0; k < vertices.size(); ++k) s += cross(vertices[k], vertices[(k + 1) % vertices.size()]);
    return s;
}

long NewtonPolygon::boundary_points() const
{
    if (vertices.size() == 1) return 1;
    if (vertices.size() == 2) return sides[0].multiplicity + 1;
    long b = 0;
    for (const auto& s : sides) b += s.multiplicity;
    return b;
}

long NewtonPolygon::interior_points() const
{
    if (vertices.size() < 3) return 0;
    return (twice_area() - boundary_points() + 2) / 2;
}

NewtonPolygon NewtonPolygon::translated(const LatticePoint& by) const
{
    NewtonPolygon r = *this;
    for (auto& v : r.vertices) v = v + by;
    return r;
}

NewtonPolygon NewtonPolygon::negated() const
{
    std::vector<LatticePoint> v;
    for (const auto& p : vertices) v.push_back(-p);
    NewtonPolygon r = from_vertices(v);
    r.up_to_translation = up_to_translation;
    return r;
}

bool NewtonPolygon::congruent_by_translation(const NewtonPolygon& o) const
{
    if (vertices.size() != o.vertices.size()) return false;
    if (vertices.empty()) return true;
    return translated(o.vertices[0] - vertices[0]).vertices == o.vertices;
}

std::string to_string(const NewtonPolygon& n)
{
    std::string s;
    for (const auto& v : n.vertices) {
        if (!s.empty()) s += ' ';
        s += "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
    }
    if (n.up_to_translation) s += " up-to-translation";
    return s;
}

NewtonPolygon convex_hull(std::vector<LatticePoint> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1) return from_vertices(pts);
    std::vector<LatticePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return from_vertices(h);
}

NewtonPolygon polygon_from_edges(std::vector<LatticePoint> edges, LatticePoint start)
{
    edges.erase(std::remove(edges.begin(), edges.end(), LatticePoint{0, 0}), edges.end());
    std::stable_sort(edges.begin(), edges.end(), angle_less);
    std::vector<LatticePoint> pts{start};
    LatticePoint cur = start;
    for (const auto& e : edges) {
        cur = cur + e;
        pts.push_back(cur);
    }
    return convex_hull(pts);
}

NewtonPolygon minkowski_sum(const NewtonPolygon& a, const NewtonPolygon& b)
{
    if (a.vertices.empty() || b.vertices.empty()) throw std::invalid_argument("minkowski sum of empty polygon");
    auto lowest = [](const NewtonPolygon& n) {
        return *std::min_element(n.vertices.begin(), n.vertices.end(), [](const auto& p, const auto& q) {
            return p.y != q.y ? p.y < q.y : p.x < q.x;
        });
    };
    std::vector<LatticePoint> edges;
    for (const auto* n : {&a, &b})
        for (const auto& s : n->sides) edges.push_back({s.primitive.x * s.multiplicity, s.primitive.y * s.multiplicity});
    return polygon_from_edges(edges, lowest(a) + lowest(b));
}

}  // namespace td
