#include "torusdimer/dimer.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <set>
#include <sstream>

namespace td {

namespace {

// Rebuilds a graph from per-edge endpoints and per-vertex rotations.
struct Parts {
    std::vector<TorusGraph::Vertex> vertices;
    std::vector<std::string> edge_names;
    std::vector<VertexId> tail;       // per dart
    std::vector<Displacement> disp;   // per dart
    std::vector<std::vector<DartId>> rot;
    std::vector<std::pair<std::string, DartId>> anchors;

    static Parts of(const TorusGraph& g)
    {
        Parts p{g.vertices(), g.edge_names(), g.tails(), g.disps(), {}, {}};
        for (VertexId v = 0; v < g.num_vertices(); ++v) p.rot.push_back(g.darts_at(v));
        return p;
    }

    void set_edge(EdgeId e, VertexId from, VertexId to, Displacement d)
    {
        tail[2 * e] = from;
        tail[2 * e + 1] = to;
        disp[2 * e] = d;
        disp[2 * e + 1] = -d;
    }

    TorusGraph build() const
    {
        const int nd = static_cast<int>(tail.size());
        std::vector<DartId> twin(nd), next(nd, -1);
        for (DartId d = 0; d < nd; ++d) twin[d] = d ^ 1;
        for (const auto& r : rot)
            for (std::size_t k = 0; k < r.size(); ++k) next[r[k]] = r[(k + 1) % r.size()];
        auto g = TorusGraph::from_parts(vertices, edge_names, tail, twin, next, disp, anchors);
        auto rep = validate_graph(g);
        if (!rep.ok) throw GraphError("move produced an invalid graph: " + rep.errors.front());
        return g;
    }
};

// Keeps face names through a move: each old face (other than `skip`) is anchored at a surviving dart.
void carry_face_names(const TorusGraph& g, Parts& p, const std::function<DartId(DartId)>& survive, FaceId skip = -1)
{
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        if (f == skip) continue;
        for (DartId d : g.face_darts(f)) {
            DartId n = survive(d);
            if (n >= 0) {
                p.anchors.emplace_back(g.face_name(f), n);
                break;
            }
        }
    }
}

std::string fresh_name(const std::set<std::string>& used, std::string base)
{
    while (used.count(base)) base += "'";
    return base;
}

// eps = (u1 v2 - u2 v1)/2 on three darts (h0, h1, h2) in ccw order, as a doubled integer
Rational half(long twice)
{
    Rational r(twice, 2);
    r.canonicalize();
    return r;
}

long twice_eps(const std::array<long, 3>& u, const std::array<long, 3>& v) { return u[1] * v[2] - u[2] * v[1]; }

}  // namespace

const CycleZ& CycleBasis::operator[](const std::string& name) const
{
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return cycles[k];
    throw std::out_of_range("no basis cycle '" + name + "'");
}

CycleBasis standard_basis(const TorusGraph& g, const std::vector<NamedCycle>& named, std::string omit)
{
    std::vector<std::pair<std::string, FaceId>> faces;
    for (FaceId f = 0; f < g.num_faces(); ++f) faces.emplace_back(g.face_name(f), f);
    std::sort(faces.begin(), faces.end());
    if (omit.empty()) omit = faces.back().first;
    CycleBasis b;
    b.omitted_face = omit;
    bool found = false;
    for (const auto& [name, f] : faces) {
        if (name == omit) {
            found = true;
            continue;
        }
        b.names.push_back(name);
        b.cycles.push_back(CycleZ::face_boundary(g, f));
    }
    if (!found) throw std::invalid_argument("no face '" + omit + "' to omit");

    std::optional<CycleZ> a, bb;
    for (const auto& c : named) {
        if (c.name == "a") a = CycleZ::from_darts(g, c.darts);
        if (c.name == "b") bb = CycleZ::from_darts(g, c.darts);
    }
    if (!a || !bb) {
        auto hb = homology_basis(g);
        if (!a) a = hb.first;
        if (!bb) bb = hb.second;
    }
    if (homology_class(g, *a) != LatticePoint{1, 0} || homology_class(g, *bb) != LatticePoint{0, 1})
        throw std::invalid_argument("cycles a, b must have classes (1,0) and (0,1)");
    b.names.push_back("a");
    b.cycles.push_back(*a);
    b.names.push_back("b");
    b.cycles.push_back(*bb);
    return b;
}

Rational intersection_pairing(const TorusGraph& g, const CycleZ& c, const CycleZ& d)
{
    if (!g.is_bipartite()) throw UnsupportedError("pairing needs a bipartite coloring");
    long twice = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto ds = g.darts_at(v);
        if (ds.size() != 3)
            throw UnsupportedError("pairing needs trivalent vertices; " + g.vertex_name(v) + " has degree " +
                                   std::to_string(ds.size()));
        std::array<long, 3> u{}, w{};
        for (int k = 0; k < 3; ++k) {
            u[k] = c.on_dart(ds[k]);
            w[k] = d.on_dart(ds[k]);
        }
        long e = twice_eps(u, w);
        twice += g.color(v) == Color::black ? e : -e;
    }
    return half(twice);
}

Rational pairing_with_face(const TorusGraph& g, const CycleZ& c, FaceId f)
{
    if (!g.is_bipartite()) throw UnsupportedError("pairing needs a bipartite coloring");
    const auto& fd = g.face_darts(f);
    std::set<VertexId> seen;
    for (DartId d : fd)
        if (!seen.insert(g.tail(d)).second) throw UnsupportedError("face " + g.face_name(f) + " repeats a vertex");
    CycleZ bd = CycleZ::face_boundary(g, f);
    long twice = 0;
    for (std::size_t k = 0; k < fd.size(); ++k) {
        DartId out = fd[k], in = g.twin(fd[(k + fd.size() - 1) % fd.size()]);
        VertexId v = g.tail(out);
        // in and out are ccw neighbours; the third slot collects everything else
        DartId h0 = g.next_ccw(in) == out ? in : out;
        DartId h1 = h0 == in ? out : in;
        std::array<long, 3> u{c.on_dart(h0), c.on_dart(h1), 0}, w{bd.on_dart(h0), bd.on_dart(h1), 0};
        for (DartId x : g.darts_at(v))
            if (x != h0 && x != h1) {
                u[2] += c.on_dart(x);
                w[2] += bd.on_dart(x);
            }
        long e = twice_eps(u, w);
        twice += g.color(v) == Color::black ? e : -e;
    }
    return half(twice);
}

std::string to_string(MoveRecord::Kind k)
{
    switch (k) {
    case MoveRecord::Kind::square: return "square";
    case MoveRecord::Kind::contraction: return "contract";
    case MoveRecord::Kind::uncontraction: return "uncontract";
    case MoveRecord::Kind::color: return "color";
    }
    return "?";
}

SquareSurgery square_surgery(const TorusGraph& g, FaceId f)
{
    if (!g.is_bipartite()) throw UnsupportedError("square move needs a bipartite graph");
    const auto& fd = g.face_darts(f);
    const std::string fname = g.face_name(f);
    if (fd.size() != 4) throw GraphError("face " + fname + " has " + std::to_string(fd.size()) + " sides, not 4");
    std::size_t s = g.color(g.tail(fd[0])) == Color::black ? 0 : 1;
    DartId d0 = fd[s], d1 = fd[(s + 1) % 4], d2 = fd[(s + 2) % 4], d3 = fd[(s + 3) % 4];
    SquareSurgery r;
    r.b1 = g.tail(d0);
    r.w1 = g.tail(d1);
    r.b2 = g.tail(d2);
    r.w2 = g.tail(d3);
    if (std::set<VertexId>{r.b1, r.w1, r.b2, r.w2}.size() != 4)
        throw GraphError("face " + fname + " does not have 4 distinct vertices");

    auto outside = [&](VertexId b, DartId p, DartId q) {
        auto ds = g.darts_at(b);
        if (ds.size() != 3)
            throw UnsupportedError("square move needs trivalent blacks; " + g.vertex_name(b) + " has degree " +
                                   std::to_string(ds.size()));
        for (DartId x : ds)
            if (x != p && x != q) return x;
        throw GraphError("face " + fname + " is degenerate");
    };
    DartId xb1 = outside(r.b1, d0, g.twin(d3)), xb2 = outside(r.b2, d2, g.twin(d1));
    r.x1 = g.head(xb1);
    r.x2 = g.head(xb2);
    for (VertexId x : {r.x1, r.x2})
        if (x == r.w1 || x == r.w2) throw UnsupportedError("face " + fname + ": outside neighbour lies on the square");

    r.b1w1 = g.edge_of(d0);
    r.b1w2 = g.edge_of(d3);
    r.b1x1 = g.edge_of(xb1);
    r.b2w2 = g.edge_of(d2);
    r.b2w1 = g.edge_of(d1);
    r.b2x2 = g.edge_of(xb2);
    const Displacement D_b1w1 = g.disp(d0), D_b1x1 = g.disp(xb1), D_b2w2 = g.disp(d2), D_b2w1 = g.disp(g.twin(d1)),
                       D_b2x2 = g.disp(xb2);

    Parts p = Parts::of(g);
    p.set_edge(r.b1x1, r.b1, r.w1, D_b1w1);
    p.set_edge(r.b1w1, r.b1, r.x2, D_b1w1 - D_b2w1 + D_b2x2);
    p.set_edge(r.b1w2, r.b1, r.x1, D_b1x1);
    p.set_edge(r.b2x2, r.b2, r.w2, D_b2w2);
    p.set_edge(r.b2w1, r.b2, r.x2, D_b2x2);
    p.set_edge(r.b2w2, r.b2, r.x1, D_b2w1 - D_b1w1 + D_b1x1);
    auto P = [](EdgeId e) { return TorusGraph::dart_of(e, true); };
    auto M = [](EdgeId e) { return TorusGraph::dart_of(e, false); };
    p.rot[r.b1] = {P(r.b1x1), P(r.b1w1), P(r.b1w2)};
    p.rot[r.b2] = {P(r.b2x2), P(r.b2w2), P(r.b2w1)};
    const DartId w1_b2 = d1, w1_b1 = g.twin(d0), w2_b1 = d3, w2_b2 = g.twin(d2);
    const DartId x1_b1 = g.twin(xb1), x2_b2 = g.twin(xb2);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (v == r.b1 || v == r.b2) continue;
        std::vector<DartId> rot;
        for (DartId x : g.darts_at(v)) {
            if (x == w1_b2)
                rot.push_back(M(r.b1x1));
            else if (x == w2_b1)
                rot.push_back(M(r.b2x2));
            else if (x == w1_b1 || x == w2_b2)
                continue;
            else if (x == x1_b1) {
                rot.push_back(M(r.b1w2));
                rot.push_back(M(r.b2w2));
            } else if (x == x2_b2) {
                rot.push_back(M(r.b2w1));
                rot.push_back(M(r.b1w1));
            } else
                rot.push_back(x);
        }
        p.rot[v] = rot;
    }
    const std::set<EdgeId> moved{r.b1w1, r.b1w2, r.b1x1, r.b2w1, r.b2w2, r.b2x2};
    carry_face_names(g, p, [&](DartId d) { return moved.count(g.edge_of(d)) ? -1 : d; }, f);
    std::set<std::string> used;
    for (FaceId k = 0; k < g.num_faces(); ++k) used.insert(g.face_name(k));
    std::string new_face = fresh_name(used, fname + "'");
    p.anchors.emplace_back(new_face, P(r.b1w1));
    r.graph = p.build();
    if (r.graph.face_darts(r.graph.face_of(P(r.b1w1))).size() != 4)
        throw GraphError("square move at " + fname + " did not produce a square");

    // cycles split into pieces through b1 and b2; each piece has an image in the new graph
    const TorusGraph before = g, after = r.graph;
    const auto rr = r;
    auto push = [before, after, rr, d0, d1, d2, d3](const CycleZ& c) {
        CycleZ out(after.num_edges());
        const std::set<EdgeId> mv{rr.b1w1, rr.b1w2, rr.b1x1, rr.b2w1, rr.b2w2, rr.b2x2};
        for (EdgeId e = 0; e < before.num_edges(); ++e)
            if (!mv.count(e)) out.flow[e] = c.flow[e];
        const long a1 = -c.on_dart(d0), a2 = c.on_dart(before.twin(d3)), a3 = -c.on_dart(d2),
                   a4 = c.on_dart(before.twin(d1));
        auto P = [](EdgeId e) { return TorusGraph::dart_of(e, true); };
        auto M = [](EdgeId e) { return TorusGraph::dart_of(e, false); };
        out.add_dart(M(rr.b1x1), a1);  // w1 -> nb1 -> x1
        out.add_dart(P(rr.b1w2), a1);
        out.add_dart(M(rr.b2w2), a2);  // x1 -> nb2 -> w2
        out.add_dart(P(rr.b2x2), a2);
        out.add_dart(M(rr.b2x2), a3);  // w2 -> nb2 -> x2
        out.add_dart(P(rr.b2w1), a3);
        out.add_dart(M(rr.b1w1), a4);  // x2 -> nb1 -> w1
        out.add_dart(P(rr.b1x1), a4);
        const long k = a1 + a3;        // new square nb1 -> x2 -> nb2 -> x1
        out.add_dart(P(rr.b1w1), k);
        out.add_dart(M(rr.b2w1), k);
        out.add_dart(P(rr.b2w2), k);
        out.add_dart(M(rr.b1w2), k);
        return out;
    };
    r.record = MoveRecord{MoveRecord::Kind::square, fname, new_face, before, after, push};
    return r;
}

ContractionSurgery contraction_surgery(const TorusGraph& g, VertexId v)
{
    auto ds = g.darts_at(v);
    if (ds.size() != 2)
        throw GraphError("vertex " + g.vertex_name(v) + " has degree " + std::to_string(ds.size()) + ", not 2");
    ContractionSurgery r;
    const DartId d1 = ds[0], d2 = ds[1];
    r.u1 = g.head(d1);
    r.u2 = g.head(d2);
    if (r.u1 == r.u2 || r.u1 == v) throw UnsupportedError("vertex " + g.vertex_name(v) + " has a repeated neighbour");
    r.e1 = g.edge_of(d1);
    r.e2 = g.edge_of(d2);
    // lift of u2 relative to u1
    const Displacement shift = g.disp(g.twin(d1)) + g.disp(d2);

    std::vector<VertexId> vmap(g.num_vertices(), -1);
    std::vector<TorusGraph::Vertex> verts;
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
        if (x == v || x == r.u2) continue;
        vmap[x] = static_cast<VertexId>(verts.size());
        verts.push_back(g.vertex(x));
    }
    vmap[r.u2] = vmap[r.u1];
    r.edge_map.assign(g.num_edges(), -1);
    Parts p;
    p.vertices = verts;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (e == r.e1 || e == r.e2) continue;
        r.edge_map[e] = static_cast<EdgeId>(p.edge_names.size());
        p.edge_names.push_back(g.edge_name(e));
        Displacement d = g.disp(2 * e);
        if (g.tail(2 * e) == r.u2) d = d + shift;
        if (g.head(2 * e) == r.u2) d = d - shift;
        p.tail.push_back(vmap[g.tail(2 * e)]);
        p.tail.push_back(vmap[g.head(2 * e)]);
        p.disp.push_back(d);
        p.disp.push_back(-d);
    }
    auto nd = [&](DartId d) { return 2 * r.edge_map[g.edge_of(d)] + (d & 1); };
    p.rot.resize(verts.size());
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
        if (x == v || x == r.u2) continue;
        auto& rot = p.rot[vmap[x]];
        for (DartId y : g.darts_at(x)) {
            if (x == r.u1 && y == g.twin(d1)) {
                for (DartId z = g.next_ccw(g.twin(d2)); z != g.twin(d2); z = g.next_ccw(z)) rot.push_back(nd(z));
            } else
                rot.push_back(nd(y));
        }
    }
    carry_face_names(g, p, [&](DartId d) { return r.edge_map[g.edge_of(d)] < 0 ? -1 : nd(d); });
    r.graph = p.build();
    const auto em = r.edge_map;
    const int ne = r.graph.num_edges();
    r.record = MoveRecord{MoveRecord::Kind::contraction, g.vertex_name(v), "", g, r.graph, [em, ne](const CycleZ& c) {
                              CycleZ out(ne);
                              for (std::size_t e = 0; e < em.size(); ++e)
                                  if (em[e] >= 0) out.flow[em[e]] = c.flow[e];
                              return out;
                          }};
    return r;
}

UncontractSpec inverse_of_contraction(const TorusGraph& g, VertexId v)
{
    auto ds = g.darts_at(v);
    if (ds.size() != 2) throw GraphError("vertex " + g.vertex_name(v) + " has degree " + std::to_string(ds.size()) + ", not 2");
    const DartId d1 = ds[0], d2 = ds[1];
    UncontractSpec s;
    s.vertex = g.vertex_name(g.head(d1));
    for (DartId z = g.next_ccw(g.twin(d2)); z != g.twin(d2); z = g.next_ccw(z)) s.moved.push_back(g.dart_name(z));
    s.v_name = g.vertex_name(v);
    s.u2_name = g.vertex_name(g.head(d2));
    s.e1_name = g.edge_name(g.edge_of(d1));
    s.e2_name = g.edge_name(g.edge_of(d2));
    s.shift = g.disp(g.twin(d1)) + g.disp(d2);
    return s;
}

UncontractionSurgery uncontraction_surgery(const TorusGraph& g, const UncontractSpec& spec)
{
    const VertexId u = g.vertex_index(spec.vertex);
    auto ds = g.darts_at(u);
    std::vector<DartId> moved;
    for (const auto& n : spec.moved) moved.push_back(g.dart_index(n));
    if (moved.empty() || moved.size() >= ds.size()) throw GraphError("uncontraction must move a proper run of darts");
    for (std::size_t k = 0; k < moved.size(); ++k) {
        if (g.tail(moved[k]) != u) throw GraphError("dart " + spec.moved[k] + " does not leave " + spec.vertex);
        if (k && g.next_ccw(moved[k - 1]) != moved[k]) throw GraphError("moved darts are not a ccw run");
    }
    const std::set<DartId> mv(moved.begin(), moved.end());
    for (DartId d : moved)
        if (mv.count(g.twin(d))) throw UnsupportedError("uncontraction of a loop");

    Parts p = Parts::of(g);
    const Color cu = g.color(u);
    const Color cv = cu == Color::black ? Color::white : cu == Color::white ? Color::black : Color::none;
    const VertexId v = static_cast<VertexId>(p.vertices.size());
    p.vertices.push_back({spec.v_name, cv, {}});
    const VertexId u2 = v + 1;
    p.vertices.push_back({spec.u2_name, cu, {}});
    for (DartId d : moved) {
        p.tail[d] = u2;
        p.disp[d] = p.disp[d] - spec.shift;
        p.disp[g.twin(d)] = -p.disp[d];
    }
    // new edges point black -> white when colored, else u -> v -> u2
    auto add = [&](const std::string& name, VertexId a, VertexId b, Displacement d, bool flip) {
        EdgeId e = static_cast<EdgeId>(p.edge_names.size());
        p.edge_names.push_back(name);
        p.tail.push_back(flip ? b : a);
        p.tail.push_back(flip ? a : b);
        p.disp.push_back(flip ? -d : d);
        p.disp.push_back(flip ? d : -d);
        return e;
    };
    const bool vb = cv == Color::black;
    const EdgeId e1 = add(spec.e1_name, u, v, {0, 0}, vb), e2 = add(spec.e2_name, v, u2, spec.shift, cu == Color::black);
    auto from = [&](EdgeId e, VertexId x) { return p.tail[2 * e] == x ? 2 * e : 2 * e + 1; };
    std::vector<DartId> ru;
    bool placed = false;
    for (DartId d : ds) {
        if (mv.count(d)) {
            if (!placed) ru.push_back(from(e1, u));
            placed = true;
        } else
            ru.push_back(d);
    }
    p.rot[u] = ru;
    p.rot.push_back({from(e1, v), from(e2, v)});
    std::vector<DartId> r2{from(e2, u2)};
    r2.insert(r2.end(), moved.begin(), moved.end());
    p.rot.push_back(r2);
    carry_face_names(g, p, [](DartId d) { return d; });
    UncontractionSurgery r;
    r.graph = p.build();
    r.e1 = e1;
    r.e2 = e2;
    const TorusGraph after = r.graph;
    const DartId e2_into_u2 = from(e2, v);
    r.record = MoveRecord{MoveRecord::Kind::uncontraction, spec.vertex, "", g, after, [after, moved, e1, e2_into_u2, u](const CycleZ& c) {
                              CycleZ out(after.num_edges());
                              for (std::size_t e = 0; e < c.flow.size(); ++e) out.flow[e] = c.flow[e];
                              long through = 0;  // net flow leaving u2 along the moved darts
                              for (DartId d : moved) through += c.on_dart(d);
                              out.add_dart(e2_into_u2, through);
                              out.add_dart(after.tail(2 * e1) == u ? 2 * e1 : 2 * e1 + 1, through);
                              return out;
                          }};
    return r;
}

TorusGraph color_changed(const TorusGraph& g)
{
    if (!g.is_bipartite()) throw UnsupportedError("color change needs a bipartite graph");
    auto verts = g.vertices();
    for (auto& v : verts) v.color = v.color == Color::black ? Color::white : Color::black;
    std::vector<std::pair<std::string, DartId>> anchors;
    for (FaceId f = 0; f < g.num_faces(); ++f) anchors.emplace_back(g.face_name(f), g.face_darts(f).front());
    return TorusGraph::from_parts(verts, g.edge_names(), g.tails(), g.twins(), g.nexts(), g.disps(), anchors);
}

std::optional<std::vector<long>> decompose_into_faces(const TorusGraph& g, const CycleZ& c, FaceId root)
{
    const int nf = g.num_faces();
    std::vector<long> a(nf, 0);
    std::vector<char> seen(nf, 0);
    std::deque<FaceId> q{root};
    seen[root] = 1;
    // flow on d equals a(face left of d) - a(face left of twin d)
    while (!q.empty()) {
        FaceId f = q.front();
        q.pop_front();
        for (DartId d : g.face_darts(f)) {
            FaceId h = g.face_of(g.twin(d));
            if (seen[h]) continue;
            seen[h] = 1;
            a[h] = a[f] - c.on_dart(d);
            q.push_back(h);
        }
    }
    for (DartId d = 0; d < g.num_darts(); d += 2)
        if (c.on_dart(d) != a[g.face_of(d)] - a[g.face_of(g.twin(d))]) return std::nullopt;
    return a;
}

std::vector<ReplayStep> parse_replay(std::istream& in)
{
    std::vector<ReplayStep> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        std::string w0, verb, arg, extra;
        if (!(ss >> w0)) continue;
        if (w0 != "move") throw ParseError(no, "expected 'move', got '" + w0 + "'");
        if (!(ss >> verb)) throw ParseError(no, "missing move kind");
        ss >> arg;
        if (ss >> extra) throw ParseError(no, "trailing text '" + extra + "'");
        ReplayStep st{no, verb, ""};
        auto want = [&](const std::string& key) {
            if (arg.rfind(key + "=", 0) != 0 || arg.size() == key.size() + 1)
                throw ParseError(no, "move " + verb + " needs " + key + "=<name>");
            st.target = arg.substr(key.size() + 1);
        };
        if (verb == "square")
            want("f");
        else if (verb == "contract")
            want("v");
        else if (verb == "color") {
            if (!arg.empty()) throw ParseError(no, "move color takes no argument");
        } else
            throw ParseError(no, "unknown move '" + verb + "'");
        out.push_back(st);
    }
    return out;
}

}  // namespace td
