#include "torusdimer/zigzag.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace td {

std::vector<ZigZag> zigzag_paths(const TorusGraph& g)
{
    std::vector<ZigZag> out;
    if (g.is_bipartite()) {
        std::vector<char> seen(g.num_darts(), 0);
        for (DartId d0 = 0; d0 < g.num_darts(); ++d0) {
            if (seen[d0]) continue;
            ZigZag z;
            DartId d = d0;
            do {
                seen[d] = 1;
                z.darts.push_back(d);
                z.cls = z.cls + g.disp(d);
                DartId t = g.twin(d);
                d = g.color(g.head(d)) == Color::black ? g.next_ccw(t) : g.prev_ccw(t);
            } while (d != d0);
            z.id = "z" + std::to_string(out.size());
            out.push_back(std::move(z));
        }
        return out;
    }
    std::vector<char> seen(2 * g.num_darts(), 0);
    for (DartId d0 = 0; d0 < g.num_darts(); ++d0)
        for (int p0 = 0; p0 < 2; ++p0) {
            if (seen[2 * d0 + p0]) continue;
            ZigZag z;
            DartId d = d0;
            int p = p0;
            do {
                seen[2 * d + p] = 1;
                z.darts.push_back(d);
                z.turns.push_back(p);
                z.cls = z.cls + g.disp(d);
                DartId t = g.twin(d);
                d = p == 0 ? g.next_ccw(t) : g.prev_ccw(t);
                p = 1 - p;
            } while (!(d == d0 && p == p0));
            // at degree-2 vertices both turns agree, and the dart word can repeat inside one strand
            const std::size_t n = z.darts.size();
            for (std::size_t per = 1; per < n; ++per) {
                if (n % per) continue;
                bool rep = true;
                for (std::size_t k = per; k < n && rep; ++k) rep = z.darts[k] == z.darts[k - per];
                if (!rep) continue;
                z.darts.resize(per);
                z.turns.resize(per);
                z.cls = {0, 0};
                for (DartId x : z.darts) z.cls = z.cls + g.disp(x);
                break;
            }
            z.id = "z" + std::to_string(out.size());
            out.push_back(std::move(z));
        }
    return out;
}

std::vector<int> reversal_partners(const TorusGraph& g, const std::vector<ZigZag>& zs)
{
    // the reverse of the state (d, p) is (twin d, p)
    std::map<std::pair<DartId, int>, int> owner;
    for (int k = 0; k < static_cast<int>(zs.size()); ++k)
        for (std::size_t s = 0; s < zs[k].darts.size(); ++s)
            owner[{zs[k].darts[s], zs[k].turns.empty() ? 0 : zs[k].turns[s]}] = k;
    std::vector<int> partner(zs.size(), -1);
    for (int k = 0; k < static_cast<int>(zs.size()); ++k) {
        if (zs[k].turns.empty()) continue;
        auto it = owner.find({g.twin(zs[k].darts[0]), zs[k].turns[0]});
        if (it != owner.end()) partner[k] = it->second;
    }
    return partner;
}

NewtonPolygon graph_newton_polygon(const TorusGraph& g)
{
    std::vector<LatticePoint> edges;
    for (const auto& z : zigzag_paths(g)) {
        if (z.cls == LatticePoint{0, 0}) throw GraphError("zig-zag " + z.id + " has zero homology class; graph is not minimal");
        edges.push_back(z.cls);
    }
    NewtonPolygon n = polygon_from_edges(edges);
    LatticePoint sum;
    for (const auto& v : n.vertices) sum = sum + v;
    const long k = static_cast<long>(n.vertices.size());
    bool bip = g.is_bipartite();
    if (sum.x % k == 0 && sum.y % k == 0) {
        n = n.translated({-sum.x / k, -sum.y / k});
        n.up_to_translation = bip;
    } else {
        n.up_to_translation = true;
    }
    return n;
}

std::string to_string(const MinimalityViolation::Kind k)
{
    switch (k) {
    case MinimalityViolation::Kind::zero_class: return "zero-homology";
    case MinimalityViolation::Kind::non_primitive: return "non-primitive";
    case MinimalityViolation::Kind::self_intersection: return "self-intersection";
    case MinimalityViolation::Kind::parallel_bigon: return "parallel-bigon";
    }
    return "?";
}

namespace {

long cross(const LatticePoint& a, const LatticePoint& b) { return a.x * b.y - a.y * b.x; }
long dot(const LatticePoint& a, const LatticePoint& b) { return a.x * b.x + a.y * b.y; }

long floor_div(long a, long b)
{
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Is there an integer strictly between a/b and c/d (b, d > 0)?
bool int_strictly_between(long a, long b, long c, long d)
{
    long k = floor_div(a, b) + 1;  // smallest integer > a/b
    return k * d < c;
}

struct Lift {
    std::vector<EdgeId> edge;
    std::vector<LatticePoint> pos;  // position of the edge's "+" tail along the lift
    std::vector<DartId> dart;
    LatticePoint cls;
    long n = 0;
};

Lift lift_of(const TorusGraph& g, const ZigZag& z)
{
    Lift l;
    LatticePoint o;
    for (DartId d : z.darts) {
        l.edge.push_back(g.edge_of(d));
        l.pos.push_back((d & 1) ? o + g.disp(d) : o);
        l.dart.push_back(d);
        o = o + g.disp(d);
    }
    l.cls = o;
    l.n = static_cast<long>(z.darts.size());
    return l;
}

bool divisible_by(const LatticePoint& v, const LatticePoint& a)
{
    if (cross(v, a) != 0) return false;
    if (a.x != 0) return v.x % a.x == 0;
    return v.y % a.y == 0;
}

}  // namespace

MinimalityResult check_minimal(const TorusGraph& g)
{
    MinimalityResult res;
    auto zs = zigzag_paths(g);
    const bool bip = g.is_bipartite();
    auto fail = [&](MinimalityViolation v) {
        res.minimal = false;
        res.violations.push_back(std::move(v));
    };

    // uncolored graphs: a zig-zag and its reversal are one unoriented curve
    std::vector<int> curves;
    if (bip) {
        for (int k = 0; k < static_cast<int>(zs.size()); ++k) curves.push_back(k);
    } else {
        auto partner = reversal_partners(g, zs);
        for (int k = 0; k < static_cast<int>(zs.size()); ++k)
            if (partner[k] < 0 || partner[k] >= k) curves.push_back(k);
    }

    std::vector<Lift> lifts;
    std::vector<char> usable;
    for (int k : curves) {
        lifts.push_back(lift_of(g, zs[k]));
        const auto& l = lifts.back();
        bool ok = true;
        if (l.cls == LatticePoint{0, 0}) {
            fail({MinimalityViolation::Kind::zero_class, zs[k].id, "", l.dart[0], -1, {}});
            ok = false;
        } else if (gcd_long(l.cls.x, l.cls.y) != 1) {
            fail({MinimalityViolation::Kind::non_primitive, zs[k].id, "", l.dart[0], -1, {}});
            ok = false;
        }
        usable.push_back(ok);
    }

    for (std::size_t a = 0; a < lifts.size(); ++a) {
        if (!usable[a]) continue;
        const auto& la = lifts[a];
        std::map<EdgeId, std::vector<long>> at;
        for (long s = 0; s < la.n; ++s) at[la.edge[s]].push_back(s);
        for (const auto& [e, steps] : at) {
            if (steps.size() < 2) continue;
            LatticePoint delta = la.pos[steps[0]] - la.pos[steps[1]];
            auto kind = divisible_by(delta, la.cls) ? MinimalityViolation::Kind::self_intersection
                                                    : MinimalityViolation::Kind::parallel_bigon;
            fail({kind, zs[curves[a]].id, zs[curves[a]].id, la.dart[steps[0]], la.dart[steps[1]], delta});
            break;
        }
    }

    for (std::size_t a = 0; a < lifts.size(); ++a)
        for (std::size_t b = a + 1; b < lifts.size(); ++b) {
            if (!usable[a] || !usable[b]) continue;
            const auto& la = lifts[a];
            const auto& lb = lifts[b];
            struct Cross {
                long k, l;
                LatticePoint delta;
            };
            std::vector<Cross> cs;
            for (long k = 0; k < la.n; ++k)
                for (long l = 0; l < lb.n; ++l)
                    if (la.edge[k] == lb.edge[l]) cs.push_back({k, l, la.pos[k] - lb.pos[l]});
            if (cs.empty()) continue;
            const LatticePoint A = la.cls, B = lb.cls;
            auto report = [&](const Cross& c, LatticePoint v) {
                fail({MinimalityViolation::Kind::parallel_bigon, zs[curves[a]].id, zs[curves[b]].id, la.dart[c.k], lb.dart[c.l], v});
            };
            if (cross(A, B) == 0) {
                if (!bip || dot(A, B) > 0) {
                    report(cs[0], cs[0].delta);
                    continue;
                }
                // antiparallel primitive classes: B = -A
                bool found = false;
                for (std::size_t i = 0; i < cs.size() && !found; ++i)
                    for (std::size_t j = 0; j < cs.size() && !found; ++j) {
                        if (i == j) continue;
                        LatticePoint dd = cs[i].delta - cs[j].delta;
                        if (!divisible_by(dd, A)) continue;
                        long c = A.x != 0 ? dd.x / A.x : dd.y / A.y;
                        long K0 = cs[j].k - cs[i].k, L0 = cs[j].l - cs[i].l;
                        // K = K0 + P n, L = L0 + (c - P) m ; need K L > 0 for some integer P
                        bool pos = int_strictly_between(-K0, la.n, c * lb.n + L0, lb.n);
                        bool neg = int_strictly_between(c * lb.n + L0, lb.n, -K0, la.n);
                        if (pos || neg) {
                            report(cs[i], cs[i].delta);
                            found = true;
                        }
                    }
                continue;
            }
            const long D = -cross(A, B);  // det [A | -B]
            bool found = false;
            for (std::size_t i = 0; i < cs.size() && !found; ++i)
                for (std::size_t j = 0; j < cs.size() && !found; ++j) {
                    if (i == j) continue;
                    LatticePoint dd = cs[i].delta - cs[j].delta;  // = P A - Q B
                    long pn = dd.x * (-B.y) - (-B.x) * dd.y;
                    long qn = A.x * dd.y - A.y * dd.x;
                    if (pn % D || qn % D) continue;
                    long P = pn / D, Q = qn / D;
                    long K = cs[j].k - cs[i].k + P * la.n;
                    long L = cs[j].l - cs[i].l + Q * lb.n;
                    if (!bip || (K > 0 && L > 0) || (K < 0 && L < 0)) {
                        report(cs[i], cs[i].delta);
                        found = true;
                    }
                }
        }
    return res;
}

TorusGraph dual_graph(const TorusGraph& g)
{
    const int nd = g.num_darts();
    std::vector<TorusGraph::Vertex> verts;
    for (FaceId f = 0; f < g.num_faces(); ++f) verts.push_back({g.face_name(f), Color::none, std::nullopt});
    // offset of each dart's tail from its face's base vertex, walking the boundary
    std::vector<LatticePoint> off(nd);
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        LatticePoint o;
        for (DartId d : g.face_darts(f)) {
            off[d] = o;
            o = o + g.disp(d);
        }
    }
    std::vector<VertexId> tail(nd);
    std::vector<DartId> twin(nd), next(nd);
    std::vector<Displacement> disp(nd);
    for (DartId d = 0; d < nd; ++d) {
        tail[d] = g.face_of(d);
        twin[d] = g.twin(d);
        next[d] = g.face_next(d);
        disp[d] = off[d] + g.disp(d) - off[g.twin(d)];
    }
    std::vector<std::pair<std::string, DartId>> anchors;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        for (DartId d = 0; d < nd; ++d)
            if (g.head(d) == v) {
                anchors.emplace_back(g.vertex_name(v), d);
                break;
            }
    return TorusGraph::from_parts(verts, g.edge_names(), tail, twin, next, disp, anchors);
}

void for_each_isomorphism(const TorusGraph& a, const TorusGraph& b, const std::function<bool(const Isomorphism&)>& visit)
{
    if (a.num_darts() != b.num_darts() || a.num_vertices() != b.num_vertices() || a.num_darts() == 0) return;
    const int nd = a.num_darts();
    for (DartId x = 0; x < nd; ++x) {
        Isomorphism iso;
        iso.dart_map.assign(nd, -1);
        iso.vertex_map.assign(a.num_vertices(), -1);
        std::vector<char> used(nd, 0);
        std::deque<DartId> q{0};
        iso.dart_map[0] = x;
        used[x] = 1;
        bool ok = true;
        auto assign = [&](DartId da, DartId db) {
            if (iso.dart_map[da] == -1) {
                if (used[db]) return false;
                iso.dart_map[da] = db;
                used[db] = 1;
                q.push_back(da);
                return true;
            }
            return iso.dart_map[da] == db;
        };
        while (ok && !q.empty()) {
            DartId da = q.front();
            q.pop_front();
            DartId db = iso.dart_map[da];
            VertexId va = a.tail(da), vb = b.tail(db);
            if (a.color(va) != b.color(vb)) ok = false;
            if (iso.vertex_map[va] == -1)
                iso.vertex_map[va] = vb;
            else if (iso.vertex_map[va] != vb)
                ok = false;
            ok = ok && assign(a.twin(da), b.twin(db)) && assign(a.next_ccw(da), b.next_ccw(db));
        }
        if (!ok || std::find(iso.dart_map.begin(), iso.dart_map.end(), -1) != iso.dart_map.end()) continue;
        std::vector<char> vused(b.num_vertices(), 0);
        for (VertexId v : iso.vertex_map) {
            if (v < 0 || vused[v]) ok = false;
            if (v >= 0) vused[v] = 1;
        }
        if (!ok) continue;
        // homology: solve for a vertex potential, then check every dart
        iso.potential.assign(a.num_vertices(), {});
        std::vector<char> set(a.num_vertices(), 0);
        std::deque<VertexId> vq{a.tail(0)};
        set[a.tail(0)] = 1;
        while (!vq.empty()) {
            VertexId v = vq.front();
            vq.pop_front();
            for (DartId d : a.darts_at(v)) {
                VertexId h = a.head(d);
                if (set[h]) continue;
                set[h] = 1;
                iso.potential[h] = iso.potential[v] + b.disp(iso.dart_map[d]) - a.disp(d);
                vq.push_back(h);
            }
        }
        for (DartId d = 0; d < nd && ok; ++d)
            if (b.disp(iso.dart_map[d]) != a.disp(d) + iso.potential[a.head(d)] - iso.potential[a.tail(d)]) ok = false;
        if (ok && visit(iso)) return;
    }
}

std::optional<Isomorphism> find_isomorphism(const TorusGraph& a, const TorusGraph& b)
{
    std::optional<Isomorphism> out;
    for_each_isomorphism(a, b, [&](const Isomorphism& iso) {
        out = iso;
        return true;
    });
    return out;
}

}  // namespace td
