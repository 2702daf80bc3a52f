#include "torusdimer/torus_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace td {

TorusGraph TorusGraph::from_parts(std::vector<Vertex> vertices, std::vector<std::string> edge_names,
                                  std::vector<VertexId> tail, std::vector<DartId> twin, std::vector<DartId> next_ccw,
                                  std::vector<Displacement> disp, std::vector<std::pair<std::string, DartId>> face_anchors)
{
    TorusGraph g;
    g.vertices_ = std::move(vertices);
    g.edge_names_ = std::move(edge_names);
    g.tail_ = std::move(tail);
    g.twin_ = std::move(twin);
    g.next_ = std::move(next_ccw);
    g.disp_ = std::move(disp);
    g.anchors_ = std::move(face_anchors);
    g.derive();
    return g;
}

namespace {

bool permutation_ok(const std::vector<DartId>& p)
{
    std::vector<char> seen(p.size(), 0);
    for (DartId x : p) {
        if (x < 0 || x >= static_cast<DartId>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

}  // namespace

void TorusGraph::derive()
{
    const int n = num_darts();
    prev_.assign(n, -1);
    faces_.clear();
    face_of_.assign(n, -1);
    face_names_.clear();
    if (static_cast<int>(twin_.size()) != n || static_cast<int>(next_.size()) != n ||
        static_cast<int>(disp_.size()) != n || !permutation_ok(twin_) || !permutation_ok(next_))
        return;
    for (DartId d = 0; d < n; ++d) prev_[next_[d]] = d;
    for (DartId d = 0; d < n; ++d) {
        if (face_of_[d] != -1) continue;
        FaceId f = static_cast<FaceId>(faces_.size());
        faces_.emplace_back();
        DartId x = d;
        do {
            face_of_[x] = f;
            faces_.back().push_back(x);
            x = face_next(x);
        } while (x != d && face_of_[x] == -1);
    }
    face_names_.assign(faces_.size(), "");
    std::set<std::string> used;
    for (const auto& [name, d] : anchors_) {
        if (d < 0 || d >= n) continue;
        face_names_[face_of_[d]] = name;
        used.insert(name);
    }
    for (FaceId f = 0; f < num_faces(); ++f) {
        if (!face_names_[f].empty()) continue;
        std::string s = "f" + std::to_string(f);
        while (used.count(s)) s += "_";
        face_names_[f] = s;
        used.insert(s);
    }
}

bool TorusGraph::colored() const
{
    for (const auto& v : vertices_)
        if (v.color == Color::none) return false;
    return !vertices_.empty();
}

bool TorusGraph::is_bipartite() const
{
    if (!colored()) return false;
    for (DartId d = 0; d < num_darts(); ++d)
        if (color(tail(d)) == color(head(d))) return false;
    return true;
}

std::vector<DartId> TorusGraph::darts_at(VertexId v) const
{
    DartId first = -1;
    for (DartId d = 0; d < num_darts(); ++d)
        if (tail_[d] == v) {
            first = d;
            break;
        }
    std::vector<DartId> out;
    if (first < 0) return out;
    DartId x = first;
    do {
        out.push_back(x);
        x = next_.at(x);
    } while (x != first && static_cast<int>(out.size()) <= num_darts());
    return out;
}

VertexId TorusGraph::vertex_index(const std::string& name) const
{
    if (auto v = find_vertex(name)) return *v;
    throw GraphError("unknown vertex '" + name + "'");
}

std::optional<VertexId> TorusGraph::find_vertex(const std::string& name) const
{
    for (VertexId v = 0; v < num_vertices(); ++v)
        if (vertices_[v].name == name) return v;
    return std::nullopt;
}

EdgeId TorusGraph::edge_index(const std::string& name) const
{
    for (EdgeId e = 0; e < num_edges(); ++e)
        if (edge_names_[e] == name) return e;
    throw GraphError("unknown edge '" + name + "'");
}

DartId TorusGraph::dart_index(const std::string& name) const
{
    if (name.size() < 2 || (name.back() != '+' && name.back() != '-')) throw GraphError("bad dart id '" + name + "'");
    return dart_of(edge_index(name.substr(0, name.size() - 1)), name.back() == '+');
}

std::optional<FaceId> TorusGraph::find_face(const std::string& name) const
{
    for (FaceId f = 0; f < num_faces(); ++f)
        if (face_names_[f] == name) return f;
    return std::nullopt;
}

FaceId TorusGraph::face_index(const std::string& name) const
{
    if (auto f = find_face(name)) return *f;
    throw GraphError("unknown face '" + name + "'");
}

VertexId GraphBuilder::add_vertex(std::string name, Color c, std::optional<Position> pos)
{
    if (vindex_.count(name)) throw GraphError("duplicate vertex '" + name + "'");
    VertexId v = static_cast<VertexId>(vertices_.size());
    vindex_[name] = v;
    vertices_.push_back({std::move(name), c, pos});
    rot_.emplace_back();
    return v;
}

EdgeId GraphBuilder::add_edge(std::string name, VertexId v1, VertexId v2, Displacement d)
{
    if (eindex_.count(name)) throw GraphError("duplicate edge '" + name + "'");
    if (v1 < 0 || v2 < 0 || v1 >= num_vertices() || v2 >= num_vertices()) throw GraphError("edge '" + name + "' has unknown endpoint");
    EdgeId e = static_cast<EdgeId>(edge_names_.size());
    eindex_[name] = e;
    edge_names_.push_back(std::move(name));
    tail_.push_back(v1);
    tail_.push_back(v2);
    disp_.push_back(d);
    disp_.push_back(-d);
    return e;
}

void GraphBuilder::set_rotation(VertexId v, std::vector<DartId> ccw)
{
    if (v < 0 || v >= num_vertices()) throw GraphError("rotation for unknown vertex");
    if (rot_[v]) throw GraphError("duplicate rotation for vertex '" + vertices_[v].name + "'");
    std::set<DartId> seen;
    for (DartId d : ccw) {
        if (d < 0 || d >= static_cast<DartId>(tail_.size())) throw GraphError("rotation names an unknown dart");
        std::string dn = edge_names_[d / 2] + ((d & 1) ? "-" : "+");
        if (tail_[d] != v) throw GraphError("dart " + dn + " does not leave vertex '" + vertices_[v].name + "'");
        if (!seen.insert(d).second) throw GraphError("dart " + dn + " repeated in rotation");
    }
    rot_[v] = std::move(ccw);
}

void GraphBuilder::name_face(std::string name, DartId d) { anchors_.emplace_back(std::move(name), d); }

VertexId GraphBuilder::vertex_index(const std::string& name) const
{
    auto it = vindex_.find(name);
    if (it == vindex_.end()) throw GraphError("unknown vertex '" + name + "'");
    return it->second;
}

EdgeId GraphBuilder::edge_index(const std::string& name) const
{
    auto it = eindex_.find(name);
    if (it == eindex_.end()) throw GraphError("unknown edge '" + name + "'");
    return it->second;
}

DartId GraphBuilder::dart_index(const std::string& name) const
{
    if (name.size() < 2 || (name.back() != '+' && name.back() != '-')) throw GraphError("bad dart id '" + name + "'");
    return TorusGraph::dart_of(edge_index(name.substr(0, name.size() - 1)), name.back() == '+');
}

TorusGraph GraphBuilder::build() const
{
    const int n = static_cast<int>(tail_.size());
    std::vector<DartId> twin(n), next(n, -1);
    for (DartId d = 0; d < n; ++d) twin[d] = d ^ 1;
    std::vector<char> placed(n, 0);
    for (VertexId v = 0; v < num_vertices(); ++v) {
        const auto& name = vertices_[v].name;
        if (!rot_[v]) {
            bool has = std::find(tail_.begin(), tail_.end(), v) != tail_.end();
            if (has) throw GraphError("vertex '" + name + "' has no rotation");
            continue;
        }
        const auto& r = *rot_[v];
        for (std::size_t k = 0; k < r.size(); ++k) {
            DartId d = r[k];
            if (d < 0 || d >= n) throw GraphError("rotation at '" + name + "' names an unknown dart");
            std::string dn = edge_names_[d / 2] + ((d & 1) ? "-" : "+");
            if (tail_[d] != v) throw GraphError("dart " + dn + " does not leave vertex '" + name + "'");
            if (placed[d]) throw GraphError("dart " + dn + " repeated in rotations");
            placed[d] = 1;
            next[d] = r[(k + 1) % r.size()];
        }
    }
    for (DartId d = 0; d < n; ++d)
        if (!placed[d])
            throw GraphError("dart " + edge_names_[d / 2] + ((d & 1) ? "-" : "+") + " missing from rotation at '" +
                             vertices_[tail_[d]].name + "'");
    return TorusGraph::from_parts(vertices_, edge_names_, tail_, twin, next, disp_, anchors_);
}

CycleZ CycleZ::from_darts(const TorusGraph& g, const std::vector<DartId>& darts)
{
    CycleZ c(g.num_edges());
    for (DartId d : darts) c.add_dart(d);
    return c;
}

CycleZ CycleZ::face_boundary(const TorusGraph& g, FaceId f) { return from_darts(g, g.face_darts(f)); }

void CycleZ::add_dart(DartId d, long times) { flow.at(d / 2) += (d & 1) ? -times : times; }

bool CycleZ::is_zero() const
{
    return std::all_of(flow.begin(), flow.end(), [](long x) { return x == 0; });
}

CycleZ& CycleZ::operator+=(const CycleZ& o)
{
    if (flow.size() != o.flow.size()) throw std::invalid_argument("cycles on different graphs");
    for (std::size_t k = 0; k < flow.size(); ++k) flow[k] += o.flow[k];
    return *this;
}

CycleZ& CycleZ::operator-=(const CycleZ& o)
{
    if (flow.size() != o.flow.size()) throw std::invalid_argument("cycles on different graphs");
    for (std::size_t k = 0; k < flow.size(); ++k) flow[k] -= o.flow[k];
    return *this;
}

CycleZ operator-(CycleZ a)
{
    for (auto& x : a.flow) x = -x;
    return a;
}

CycleZ operator*(long k, CycleZ a)
{
    for (auto& x : a.flow) x *= k;
    return a;
}

bool is_cycle(const TorusGraph& g, const CycleZ& c)
{
    if (static_cast<int>(c.flow.size()) != g.num_edges()) return false;
    std::vector<long> net(g.num_vertices(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        DartId d = TorusGraph::dart_of(e);
        net[g.tail(d)] -= c.flow[e];
        net[g.head(d)] += c.flow[e];
    }
    return std::all_of(net.begin(), net.end(), [](long x) { return x == 0; });
}

LatticePoint homology_class(const TorusGraph& g, const CycleZ& c)
{
    if (!is_cycle(g, c)) throw std::invalid_argument("homology class of a chain with nonzero boundary");
    LatticePoint h;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto d = g.disp(TorusGraph::dart_of(e));
        h.x += c.flow[e] * d.x;
        h.y += c.flow[e] * d.y;
    }
    return h;
}

ValidationReport validate_graph(const TorusGraph& g)
{
    ValidationReport r;
    const int n = g.num_darts();
    auto err = [&](std::string s) {
        r.ok = false;
        r.errors.push_back(std::move(s));
    };
    auto dname = [&](DartId d) { return d / 2 < static_cast<int>(g.edge_names().size()) ? g.dart_name(d) : "#" + std::to_string(d); };
    r.vertices = g.num_vertices();
    r.edges = g.num_edges();
    if (n % 2) err("odd number of darts");
    if (static_cast<int>(g.twins().size()) != n || static_cast<int>(g.nexts().size()) != n ||
        static_cast<int>(g.disps().size()) != n) {
        err("dart arrays have inconsistent sizes");
        return r;
    }
    bool twin_ok = true;
    for (DartId d = 0; d < n; ++d) {
        DartId t = g.twins()[d];
        if (t < 0 || t >= n || t == d || g.twins()[t] != d) {
            err("dart " + dname(d) + ": twin(twin(d)) != d");
            twin_ok = false;
            continue;
        }
        if (g.disps()[t] != -g.disps()[d]) err("dart " + dname(d) + ": displacement not antisymmetric with its twin");
    }
    bool next_ok = true;
    std::vector<char> seen(n, 0);
    for (DartId d = 0; d < n; ++d) {
        DartId x = g.nexts()[d];
        if (x < 0 || x >= n || seen[x]) {
            err("dart " + dname(d) + ": rotation is not a permutation");
            next_ok = false;
            continue;
        }
        seen[x] = 1;
        if (g.tails()[x] != g.tails()[d]) {
            err("dart " + dname(d) + ": rotation successor leaves a different vertex");
            next_ok = false;
        }
    }
    for (DartId d = 0; d < n; ++d)
        if (g.tails()[d] < 0 || g.tails()[d] >= g.num_vertices()) err("dart " + dname(d) + ": unknown tail vertex");
    if (!twin_ok || !next_ok) return r;

    r.faces = g.num_faces();
    r.euler = r.vertices - r.edges + r.faces;
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        const auto& fd = g.face_darts(f);
        r.face_sizes.emplace_back(g.face_name(f), static_cast<int>(fd.size()));
        if (g.face_next(fd.back()) != fd.front()) err("face " + g.face_name(f) + ": traversal does not close");
        Displacement s;
        for (DartId d : fd) s = s + g.disp(d);
        if (s != Displacement{0, 0})
            err("face " + g.face_name(f) + ": total displacement (" + std::to_string(s.x) + "," + std::to_string(s.y) + ") != 0");
    }
    if (r.euler != 0) err("Euler characteristic " + std::to_string(r.euler) + " != 0");
    std::vector<char> used(g.num_vertices(), 0);
    for (DartId d = 0; d < n; ++d) used[g.tail(d)] = 1;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (!used[v]) err("vertex " + g.vertex_name(v) + " is isolated");
    int colored = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) colored += g.color(v) != Color::none;
    if (colored && colored != g.num_vertices()) err("graph is partially colored");
    if (colored == g.num_vertices() && colored > 0)
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            DartId d = TorusGraph::dart_of(e);
            if (g.color(g.tail(d)) == g.color(g.head(d))) err("edge " + g.edge_name(e) + " joins two vertices of the same color");
        }
    // connectivity: a non-connected cellular embedding cannot exist on the torus
    std::vector<char> reach(g.num_vertices(), 0);
    std::deque<VertexId> q;
    if (g.num_vertices()) {
        q.push_back(0);
        reach[0] = 1;
    }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (DartId d : g.darts_at(v))
            if (!reach[g.head(d)]) {
                reach[g.head(d)] = 1;
                q.push_back(g.head(d));
            }
    }
    if (std::find(reach.begin(), reach.end(), 0) != reach.end()) err("graph is not connected");
    return r;
}

std::string to_string(const ValidationReport& r)
{
    std::string s = std::string(r.ok ? "valid" : "invalid") + "\nV " + std::to_string(r.vertices) + "\nE " +
                    std::to_string(r.edges) + "\nF " + std::to_string(r.faces) + "\neuler " + std::to_string(r.euler) + "\n";
    for (const auto& [name, size] : r.face_sizes) s += "face " + name + " " + std::to_string(size) + "\n";
    for (const auto& e : r.errors) s += "error " + e + "\n";
    return s;
}

std::pair<CycleZ, CycleZ> homology_basis(const TorusGraph& g)
{
    const int nv = g.num_vertices();
    std::vector<DartId> parent(nv, -1);
    std::vector<LatticePoint> pos(nv);
    std::vector<char> seen(nv, 0);
    std::vector<char> tree(g.num_edges(), 0);
    std::deque<VertexId> q{0};
    seen[0] = 1;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        auto ds = g.darts_at(v);
        std::sort(ds.begin(), ds.end());
        for (DartId d : ds) {
            VertexId h = g.head(d);
            if (seen[h]) continue;
            seen[h] = 1;
            parent[h] = d;
            pos[h] = pos[v] + g.disp(d);
            tree[g.edge_of(d)] = 1;
            q.push_back(h);
        }
    }
    auto root_path = [&](VertexId v) {
        CycleZ c(g.num_edges());
        while (parent[v] != -1) {
            c.add_dart(parent[v]);
            v = g.tail(parent[v]);
        }
        return c;
    };
    struct Item {
        LatticePoint h;
        CycleZ c;
    };
    std::vector<Item> items;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (tree[e]) continue;
        DartId d = TorusGraph::dart_of(e);
        CycleZ c = root_path(g.tail(d));
        c.add_dart(d);
        c -= root_path(g.head(d));
        items.push_back({pos[g.tail(d)] + g.disp(d) - pos[g.head(d)], c});
    }
    // integer row reduction on the classes, carrying the cycles along
    auto reduce = [&](auto coord, std::size_t from) {
        for (;;) {
            std::size_t best = items.size();
            for (std::size_t k = from; k < items.size(); ++k)
                if (coord(items[k].h) != 0 && (best == items.size() || std::abs(coord(items[k].h)) < std::abs(coord(items[best].h))))
                    best = k;
            if (best == items.size()) return false;
            std::swap(items[from], items[best]);
            bool done = true;
            for (std::size_t k = from + 1; k < items.size(); ++k) {
                long m = coord(items[k].h) / coord(items[from].h);
                if (m) {
                    items[k].h = items[k].h - LatticePoint{m * items[from].h.x, m * items[from].h.y};
                    items[k].c -= m * items[from].c;
                }
                if (coord(items[k].h) != 0) done = false;
            }
            if (done) return true;
        }
    };
    auto X = [](const LatticePoint& p) { return p.x; };
    auto Y = [](const LatticePoint& p) { return p.y; };
    if (!reduce(X, 0) || !reduce(Y, 1)) throw GraphError("cycles do not span H1 of the torus");
    Item a = items[0], b = items[1];
    if (std::abs(a.h.x) != 1 || std::abs(b.h.y) != 1) throw GraphError("cycles do not span H1 of the torus");
    if (a.h.x < 0) a = {-a.h, -a.c};
    if (b.h.y < 0) b = {-b.h, -b.c};
    long m = a.h.y;
    a.c -= m * b.c;
    return {a.c, b.c};
}

}  // namespace td
