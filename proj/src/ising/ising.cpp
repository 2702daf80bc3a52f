#include "torusdimer/ising.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace td {

namespace {

// Copies surviving vertices into a builder, returning old -> new ids (-1 when dropped).
std::vector<VertexId> copy_vertices(const TorusGraph& g, GraphBuilder& b, VertexId skip = -1)
{
    std::vector<VertexId> map(g.num_vertices(), -1);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (v != skip) map[v] = b.add_vertex(g.vertex_name(v), g.color(v), g.vertex(v).pos);
    return map;
}

// Face names that survive through some kept dart.
void carry_faces(const TorusGraph& g, GraphBuilder& b, const std::vector<DartId>& dart_map, std::set<std::string>& used)
{
    for (FaceId f = 0; f < g.num_faces(); ++f)
        for (DartId d : g.face_darts(f))
            if (dart_map[d] >= 0) {
                b.name_face(g.face_name(f), dart_map[d]);
                used.insert(g.face_name(f));
                break;
            }
}

}  // namespace

YDeltaSurgery y_to_delta_graph(const TorusGraph& g, VertexId v)
{
    auto legs = g.darts_at(v);
    if (legs.size() != 3) throw GraphError("Y-Delta needs a degree-3 vertex; '" + g.vertex_name(v) + "' has degree " + std::to_string(legs.size()));
    std::array<VertexId, 3> h;
    std::array<DartId, 3> t;
    for (int k = 0; k < 3; ++k) {
        h[k] = g.head(legs[k]);
        t[k] = g.twin(legs[k]);
        if (h[k] == v) throw GraphError("Y-Delta at a vertex with a loop");
    }
    YDeltaSurgery s;
    for (int k = 0; k < 3; ++k) s.old_edges[k] = g.edge_of(legs[k]);

    GraphBuilder b;
    auto vmap = copy_vertices(g, b, v);
    std::vector<DartId> dmap(g.num_darts(), -1);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (e == s.old_edges[0] || e == s.old_edges[1] || e == s.old_edges[2]) continue;
        DartId d = TorusGraph::dart_of(e);
        EdgeId ne = b.add_edge(g.edge_name(e), vmap[g.tail(d)], vmap[g.head(d)], g.disp(d));
        dmap[d] = TorusGraph::dart_of(ne);
        dmap[d + 1] = TorusGraph::dart_of(ne, false);
    }
    // triangle side k joins h[k+1] -> h[k+2], opposite leg k
    std::array<EdgeId, 3> side;
    for (int k = 0; k < 3; ++k) {
        int i = (k + 1) % 3, j = (k + 2) % 3;
        side[k] = b.add_edge(g.edge_name(s.old_edges[k]), vmap[h[i]], vmap[h[j]], g.disp(legs[j]) - g.disp(legs[i]));
        s.new_edges[k] = side[k];
    }
    for (VertexId w = 0; w < g.num_vertices(); ++w) {
        if (w == v) continue;
        std::vector<DartId> rot;
        for (DartId x : g.darts_at(w)) {
            int k = -1;
            for (int q = 0; q < 3; ++q)
                if (x == t[q]) k = q;
            if (k < 0) {
                rot.push_back(dmap[x]);
                continue;
            }
            // toward the next star neighbour ccw, then the previous one
            rot.push_back(TorusGraph::dart_of(side[(k + 2) % 3], true));
            rot.push_back(TorusGraph::dart_of(side[(k + 1) % 3], false));
        }
        b.set_rotation(vmap[w], rot);
    }
    std::set<std::string> used;
    carry_faces(g, b, dmap, used);
    if (!used.count(g.vertex_name(v))) b.name_face(g.vertex_name(v), TorusGraph::dart_of(side[0]));
    s.graph = b.build();
    s.to_delta = true;
    return s;
}

YDeltaSurgery delta_to_y_graph(const TorusGraph& g, FaceId f, const std::string& new_vertex)
{
    const auto& c = g.face_darts(f);
    if (c.size() != 3) throw GraphError("Delta-Y needs a triangular face; '" + g.face_name(f) + "' has " + std::to_string(c.size()) + " sides");
    std::array<EdgeId, 3> ce{g.edge_of(c[0]), g.edge_of(c[1]), g.edge_of(c[2])};
    if (ce[0] == ce[1] || ce[1] == ce[2] || ce[0] == ce[2]) throw GraphError("Delta-Y needs three distinct sides");
    if (g.find_vertex(new_vertex)) throw GraphError("vertex '" + new_vertex + "' already exists");
    YDeltaSurgery s;
    for (int k = 0; k < 3; ++k) s.old_edges[k] = ce[(k + 1) % 3];

    GraphBuilder b;
    auto vmap = copy_vertices(g, b);
    VertexId u = b.add_vertex(new_vertex);
    std::vector<DartId> dmap(g.num_darts(), -1);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (e == ce[0] || e == ce[1] || e == ce[2]) continue;
        DartId d = TorusGraph::dart_of(e);
        EdgeId ne = b.add_edge(g.edge_name(e), vmap[g.tail(d)], vmap[g.head(d)], g.disp(d));
        dmap[d] = TorusGraph::dart_of(ne);
        dmap[d + 1] = TorusGraph::dart_of(ne, false);
    }
    // leg k runs u -> v_k = tail(c[k]) and is opposite side c[k+1]
    std::array<Displacement, 3> off{Displacement{}, g.disp(c[0]), g.disp(c[0]) + g.disp(c[1])};
    std::array<EdgeId, 3> leg;
    for (int k = 0; k < 3; ++k) {
        leg[k] = b.add_edge(g.edge_name(s.old_edges[k]), u, vmap[g.tail(c[k])], off[k]);
        s.new_edges[k] = leg[k];
    }
    for (VertexId w = 0; w < g.num_vertices(); ++w) {
        std::vector<DartId> rot;
        for (DartId x : g.darts_at(w)) {
            int k = -1;
            bool skip = false;
            for (int q = 0; q < 3; ++q) {
                if (x == c[q]) k = q;
                if (x == g.twin(c[(q + 2) % 3])) skip = true;
            }
            if (k >= 0)
                rot.push_back(TorusGraph::dart_of(leg[k], false));
            else if (!skip)
                rot.push_back(dmap[x]);
        }
        b.set_rotation(vmap[w], rot);
    }
    b.set_rotation(u, {TorusGraph::dart_of(leg[0]), TorusGraph::dart_of(leg[1]), TorusGraph::dart_of(leg[2])});
    std::set<std::string> used;
    carry_faces(g, b, dmap, used);
    s.graph = b.build();
    s.to_delta = false;
    return s;
}

std::string GadgetMap::partner_of(const std::string& white) const
{
    for (const auto& [w, b] : partners)
        if (w == white) return b;
    throw GraphError("gadget map has no partner for '" + white + "'");
}

GadgetMap parse_gadget_map(std::istream& in)
{
    GadgetMap gm;
    std::string raw;
    int line = 0;
    std::set<std::string> whites;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ss(raw);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 3) throw ParseError(line, "expected three fields");
        if (tok[0] == "square")
            gm.squares.emplace_back(tok[1], tok[2]);
        else if (tok[0] == "partner") {
            if (!whites.insert(tok[1]).second) throw ParseError(line, "second partner for '" + tok[1] + "'");
            gm.partners.emplace_back(tok[1], tok[2]);
        } else
            throw ParseError(line, "unknown key '" + tok[0] + "'");
    }
    return gm;
}

GadgetMap read_gadget_map(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_gadget_map(in);
}

void write_gadget_map(std::ostream& out, const GadgetMap& gm)
{
    out << "# gadget-map v1\n";
    for (const auto& [e, f] : gm.squares) out << "square " << e << ' ' << f << '\n';
    for (const auto& [w, b] : gm.partners) out << "partner " << w << ' ' << b << '\n';
}

DimerGraph to_dimer_graph(const TorusGraph& g)
{
    if (g.colored()) throw GraphError("to_dimer expects an uncolored Ising graph");
    auto rep = validate_graph(g);
    if (!rep.ok) throw GraphError("invalid Ising graph: " + rep.errors.front());
    const int nd = g.num_darts();
    DimerGraph out;
    GraphBuilder b;
    auto suffix = [&](DartId x) { return g.edge_name(x / 2) + ((x & 1) ? ".1" : ".0"); };
    std::vector<VertexId> B(nd), W(nd);
    for (DartId x = 0; x < nd; ++x) B[x] = b.add_vertex("b." + suffix(x), Color::black);
    for (DartId x = 0; x < nd; ++x) W[x] = b.add_vertex("w." + suffix(x), Color::white);

    // per dart x: cross edge B(x)-W(x) (s), along edge B(x)-W(twin x) (c), corner edge B(x)-W(next x) (1)
    std::vector<EdgeId> cross(nd), along(nd), corner(nd);
    auto add = [&](const std::string& name, VertexId bl, VertexId wh, Displacement d, EdgeId ie, GadgetRole r) {
        EdgeId e = b.add_edge(name, bl, wh, d);
        out.ising_edge.push_back(ie);
        out.role.push_back(r);
        return e;
    };
    for (DartId x = 0; x < nd; ++x) {
        EdgeId ie = g.edge_of(x);
        const std::string k = (x & 1) ? "1" : "0";
        cross[x] = add(g.edge_name(ie) + ".s" + k, B[x], W[x], {}, ie, GadgetRole::s);
        along[x] = add(g.edge_name(ie) + ".c" + k, B[x], W[g.twin(x)], g.disp(x), ie, GadgetRole::c);
    }
    for (DartId x = 0; x < nd; ++x) corner[x] = add(g.edge_name(x / 2) + ".k" + ((x & 1) ? "1" : "0"), B[x], W[g.next_ccw(x)], {}, -1, GadgetRole::one);

    for (DartId x = 0; x < nd; ++x) {
        b.set_rotation(B[x], {TorusGraph::dart_of(along[x]), TorusGraph::dart_of(corner[x]), TorusGraph::dart_of(cross[x])});
        b.set_rotation(W[x], {TorusGraph::dart_of(along[g.twin(x)], false), TorusGraph::dart_of(cross[x], false),
                              TorusGraph::dart_of(corner[g.prev_ccw(x)], false)});
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        b.name_face("sq." + g.edge_name(e), TorusGraph::dart_of(cross[TorusGraph::dart_of(e)]));
        out.gadgets.squares.emplace_back(g.edge_name(e), "sq." + g.edge_name(e));
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) b.name_face("v." + g.vertex_name(v), TorusGraph::dart_of(corner[g.darts_at(v).front()]));
    for (FaceId f = 0; f < g.num_faces(); ++f) b.name_face("f." + g.face_name(f), TorusGraph::dart_of(corner[g.face_darts(f).front()], false));
    for (DartId x = 0; x < nd; ++x) out.gadgets.partners.emplace_back("w." + suffix(x), "b." + suffix(g.prev_ccw(x)));
    out.graph = b.build();
    return out;
}

}  // namespace td
