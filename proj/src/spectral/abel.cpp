#include "torusdimer/spectral.hpp"

#include <deque>
#include <sstream>

namespace td {

AbelLabel& AbelLabel::operator+=(const AbelLabel& o)
{
    for (const auto& [k, v] : o.coeff)
        if ((coeff[k] += v) == 0) coeff.erase(k);
    return *this;
}

AbelLabel& AbelLabel::operator-=(const AbelLabel& o)
{
    for (const auto& [k, v] : o.coeff)
        if ((coeff[k] -= v) == 0) coeff.erase(k);
    return *this;
}

bool operator==(const AbelLabel& a, const AbelLabel& b) { return a.coeff == b.coeff; }

std::string to_string(const AbelLabel& a)
{
    if (a.coeff.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (const auto& [k, v] : a.coeff) {
        if (!first) s << (v < 0 ? " - " : " + ");
        else if (v < 0) s << "-";
        first = false;
        long m = std::abs(v);
        if (m != 1) s << m << "*";
        s << k;
    }
    return s.str();
}

AbelLabel monomial_divisor(const AbelMap& m, long i, long j)
{
    AbelLabel r;
    for (const auto& [k, v] : m.div_z.coeff) r.coeff[k] += i * v;
    for (const auto& [k, v] : m.div_w.coeff) r.coeff[k] += j * v;
    for (auto it = r.coeff.begin(); it != r.coeff.end();)
        it = it->second ? std::next(it) : r.coeff.erase(it);
    return r;
}

AbelMap discrete_abel(const TorusGraph& g, int window, const std::string& base_white)
{
    if (!g.is_bipartite()) throw GraphError("discrete Abel map needs a bipartite graph");
    if (!check_minimal(g).minimal) throw GraphError("discrete Abel map needs a minimal graph");
    if (window < 1) throw std::invalid_argument("window must be positive");
    AbelMap m;
    m.window = window;
    VertexId base = -1;
    if (base_white.empty()) {
        for (VertexId v = 0; v < g.num_vertices() && base < 0; ++v)
            if (g.color(v) == Color::white) base = v;
    } else {
        base = g.vertex_index(base_white);
        if (g.color(base) != Color::white) throw GraphError(base_white + " is not white");
    }
    m.base = g.vertex_name(base);

    auto zs = zigzag_paths(g);
    std::vector<AbelLabel> step(g.num_edges());  // alpha + beta for the two zig-zags through the edge
    for (const auto& z : zs) {
        for (DartId d : z.darts) step[g.edge_of(d)].coeff[z.id] += 1;
        m.div_z.coeff[z.id] -= z.cls.y;
        m.div_w.coeff[z.id] += z.cls.x;
    }
    for (auto* lab : {&m.div_z, &m.div_w})
        for (auto it = lab->coeff.begin(); it != lab->coeff.end();)
            it = it->second ? std::next(it) : lab->coeff.erase(it);

    auto inside = [&](LatticePoint p) { return p.x >= 0 && p.y >= 0 && p.x < window && p.y < window; };
    std::deque<std::pair<VertexId, LatticePoint>> q{{base, {0, 0}}};
    m.label[{base, {0, 0}}] = {};
    while (!q.empty()) {
        auto [v, at] = q.front();
        q.pop_front();
        const AbelLabel here = m.label[{v, at}];
        for (DartId d : g.darts_at(v)) {
            LatticePoint to = at + g.disp(d);
            if (!inside(to)) continue;
            AbelLabel there = here;
            if (g.color(v) == Color::white)
                there += step[g.edge_of(d)];
            else
                there -= step[g.edge_of(d)];
            auto key = std::make_pair(g.head(d), to);
            auto it = m.label.find(key);
            if (it == m.label.end()) {
                m.label[key] = there;
                q.push_back(key);
            } else if (!(it->second == there)) {
                m.closed = false;
                m.problems.push_back("edge " + g.edge_name(g.edge_of(d)) + " at lift (" + std::to_string(at.x) + "," +
                                     std::to_string(at.y) + ") disagrees around face " + g.face_name(g.face_of(d)));
            }
        }
    }
    if (m.label.size() != static_cast<std::size_t>(g.num_vertices() * window * window)) {
        m.closed = false;
        m.problems.push_back("window is not connected");
    }
    return m;
}

}  // namespace td
