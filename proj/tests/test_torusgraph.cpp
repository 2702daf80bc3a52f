#include "doctest.h"

#include "torusdimer/graph_io.hpp"
#include "torusdimer/zigzag.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace td;

namespace doctest {
template <>
struct StringMaker<NewtonPolygon> {
    static String convert(const NewtonPolygon& n) { return to_string(n).c_str(); }
};
template <>
struct StringMaker<LatticePoint> {
    static String convert(const LatticePoint& p) { return ("(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")").c_str(); }
};
}  // namespace doctest

namespace {

GraphFile fixture(const std::string& name) { return read_graph_file(std::string(TD_FIXTURE_DIR) + "/" + name); }

std::multiset<std::pair<long, long>> classes(const TorusGraph& g)
{
    std::multiset<std::pair<long, long>> out;
    for (const auto& z : zigzag_paths(g)) out.insert({z.cls.x, z.cls.y});
    return out;
}

NewtonPolygon unit_square()
{
    NewtonPolygon n;
    n.vertices = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return n;
}

// Brute-force minimality: lift every zig-zag to the cover over a window of translates.
bool same_cyclic(const std::vector<DartId>& a, const std::vector<DartId>& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r) {
        bool ok = true;
        for (std::size_t k = 0; k < a.size() && ok; ++k) ok = a[k] == b[(k + r) % b.size()];
        if (ok) return true;
    }
    return false;
}

bool window_oracle_minimal(const TorusGraph& g)
{
    auto zs = zigzag_paths(g);
    const bool bip = g.is_bipartite();
    std::vector<std::vector<DartId>> curves;
    for (const auto& z : zs) {
        if (z.cls == LatticePoint{0, 0}) return false;
        if (!bip) {
            std::vector<DartId> rev;
            for (auto it = z.darts.rbegin(); it != z.darts.rend(); ++it) rev.push_back(g.twin(*it));
            bool dup = false;
            for (const auto& c : curves) dup = dup || same_cyclic(c, rev);
            if (dup) continue;
        }
        curves.push_back(z.darts);
    }
    std::size_t maxlen = 0;
    for (const auto& c : curves) maxlen = std::max(maxlen, c.size());
    const long L = static_cast<long>(maxlen) + 1;
    const long periods = 2 * L + 1;

    using Key = std::tuple<EdgeId, long, long>;
    struct Lifted {
        std::map<Key, std::vector<long>> at;
        LatticePoint cls;
    };
    std::vector<Lifted> lifts;
    for (const auto& c : curves) {
        Lifted l;
        const long n = static_cast<long>(c.size());
        LatticePoint o;
        for (long s = 0; s < n; ++s) o = o + g.disp(c[s]);
        l.cls = o;
        LatticePoint start{-periods * o.x, -periods * o.y};
        LatticePoint p = start;
        for (long s = -periods * n; s < periods * n; ++s) {
            DartId d = c[((s % n) + n) % n];
            LatticePoint pos = (d & 1) ? p + g.disp(d) : p;
            l.at[{d / 2, pos.x, pos.y}].push_back(s);
            p = p + g.disp(d);
        }
        lifts.push_back(std::move(l));
    }
    for (const auto& l : lifts)
        for (const auto& [k, steps] : l.at)
            if (steps.size() > 1) return false;  // one lifted curve through a lifted edge twice
    for (std::size_t a = 0; a < lifts.size(); ++a)
        for (std::size_t b = a; b < lifts.size(); ++b)
            for (long tx = -L; tx <= L; ++tx)
                for (long ty = -L; ty <= L; ++ty) {
                    if (a == b) {
                        const auto& c = lifts[a].cls;
                        if (c.x * ty - c.y * tx == 0) continue;  // translate along itself
                    }
                    std::vector<std::pair<long, long>> hits;
                    for (const auto& [k, sa] : lifts[a].at) {
                        auto it = lifts[b].at.find({std::get<0>(k), std::get<1>(k) - tx, std::get<2>(k) - ty});
                        if (it == lifts[b].at.end()) continue;
                        hits.emplace_back(sa[0], it->second[0]);
                    }
                    if (a == b && !hits.empty()) return false;
                    if (!bip && hits.size() >= 2) return false;
                    for (std::size_t i = 0; i < hits.size(); ++i)
                        for (std::size_t j = i + 1; j < hits.size(); ++j)
                            if ((hits[j].first - hits[i].first) * (hits[j].second - hits[i].second) > 0) return false;
                }
    return true;
}

// Same embedded graph with shuffled vertex order, edge order and edge orientations.
TorusGraph relabeled(const TorusGraph& g, std::mt19937& rng)
{
    std::vector<int> vp(g.num_vertices()), ep(g.num_edges());
    std::iota(vp.begin(), vp.end(), 0);
    std::iota(ep.begin(), ep.end(), 0);
    std::shuffle(vp.begin(), vp.end(), rng);
    std::shuffle(ep.begin(), ep.end(), rng);
    std::vector<char> flip(g.num_edges());
    for (auto& f : flip) f = rng() & 1;
    GraphBuilder b;
    std::vector<VertexId> vnew(g.num_vertices());
    for (int v : vp) vnew[v] = b.add_vertex("v" + g.vertex_name(v), g.color(v));
    std::vector<EdgeId> enew(g.num_edges());
    for (int e : ep) {
        DartId d = TorusGraph::dart_of(e, !flip[e]);
        enew[e] = b.add_edge("x" + g.edge_name(e), vnew[g.tail(d)], vnew[g.head(d)], g.disp(d));
    }
    auto map_dart = [&](DartId d) { return TorusGraph::dart_of(enew[d / 2], ((d & 1) != 0) == (flip[d / 2] != 0)); };
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        std::vector<DartId> r;
        for (DartId d : g.darts_at(v)) r.push_back(map_dart(d));
        b.set_rotation(vnew[v], r);
    }
    return b.build();
}

}  // namespace

TEST_CASE("fixture graphs validate")
{
    auto g = fixture("square_ising.tg").graph;
    auto r = validate_graph(g);
    CHECK(r.ok);
    CHECK(r.vertices == 1);
    CHECK(r.edges == 2);
    CHECK(r.faces == 1);
    CHECK(r.euler == 0);

    auto gb = fixture("square_dimer.tg").graph;
    r = validate_graph(gb);
    CHECK(r.ok);
    CHECK(r.vertices == 8);
    CHECK(r.edges == 12);
    CHECK(r.faces == 4);
    CHECK(gb.is_bipartite());
    CHECK(gb.face_darts(gb.face_index("f1")).size() == 4);
    CHECK(gb.face_darts(gb.face_index("f3")).size() == 8);

    CycleZ sum(gb.num_edges());
    for (FaceId f = 0; f < gb.num_faces(); ++f) sum += CycleZ::face_boundary(gb, f);
    CHECK(sum.is_zero());
}

TEST_CASE("corrupted twin is reported")
{
    auto g = fixture("square_ising.tg").graph;
    auto twin = g.twins();
    std::swap(twin[0], twin[2]);  // e1+ -> e2+, no longer an involution on e1
    twin[1] = 3;
    auto bad = TorusGraph::from_parts(g.vertices(), g.edge_names(), g.tails(), twin, g.nexts(), g.disps());
    auto r = validate_graph(bad);
    CHECK_FALSE(r.ok);
    bool named = false;
    for (const auto& e : r.errors) named = named || e.find("dart e1") != std::string::npos;
    CHECK(named);
}

TEST_CASE("parser strictness")
{
    const std::string good = "vertex n n\nedge e1 n n 1 0\nedge e2 n n 0 1\nrot n e1+ e2+ e1- e2-\n";
    CHECK_NOTHROW(parse_graph_string(good));
    CHECK_THROWS_AS(parse_graph_string(good + "colour e1 3\n"), ParseError);
    try {
        parse_graph_string("vertex n n\nedge e1 n n 1 0\nedge e2 n n 0 1\nrot n e1+ e2+ e3- e2-\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
    CHECK_THROWS_AS(parse_graph_string(good + "coupling e1 sc=1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_string(good + "weight e9 1\n"), ParseError);
    CHECK_THROWS_AS(parse_graph_string("vertex n q\n"), ParseError);

    auto f = fixture("square_dimer.tg");
    auto again = parse_graph_string(graph_to_string(f));
    CHECK(graph_to_string(again) == graph_to_string(f));
    CHECK(again.cycles.size() == 2);
    CHECK(f.all_rational());
}

TEST_CASE("zig-zag classes")
{
    using C = std::multiset<std::pair<long, long>>;
    const C square{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    CHECK(classes(fixture("square_ising.tg").graph) == square);
    CHECK(classes(fixture("square_dimer.tg").graph) == square);

    GraphBuilder b;
    auto n = b.add_vertex("n");
    auto e = b.add_edge("e", n, n, {1, 0});
    b.set_rotation(n, {TorusGraph::dart_of(e, true), TorusGraph::dart_of(e, false)});
    CHECK(classes(b.build()) == C{{1, 0}, {-1, 0}});

    for (const auto& name : {"square_ising.tg", "square_dimer.tg", "hex_ising.tg"}) {
        auto g = fixture(name).graph;
        LatticePoint total;
        std::vector<int> cover(g.num_darts(), 0);
        for (const auto& z : zigzag_paths(g)) {
            total = total + z.cls;
            CHECK(homology_class(g, z.cycle(g)) == z.cls);
            for (DartId d : z.darts) ++cover[d];
        }
        CHECK(total == LatticePoint{0, 0});
        for (int c : cover) CHECK(c == (g.is_bipartite() ? 1 : 2));
    }
}

TEST_CASE("homology")
{
    auto f = fixture("square_dimer.tg");
    const auto& g = f.graph;
    CHECK(homology_class(g, CycleZ::from_darts(g, f.cycles[0].darts)) == LatticePoint{1, 0});
    CHECK(homology_class(g, CycleZ::from_darts(g, f.cycles[1].darts)) == LatticePoint{0, 1});
    for (FaceId k = 0; k < g.num_faces(); ++k) CHECK(homology_class(g, CycleZ::face_boundary(g, k)) == LatticePoint{0, 0});
    auto [a, b] = homology_basis(g);
    CHECK(homology_class(g, a) == LatticePoint{1, 0});
    CHECK(homology_class(g, b) == LatticePoint{0, 1});
    auto zs = zigzag_paths(fixture("square_ising.tg").graph);
    auto gi = fixture("square_ising.tg").graph;
    auto p = reversal_partners(gi, zs);
    for (std::size_t k = 0; k < zs.size(); ++k) {
        REQUIRE(p[k] >= 0);
        CHECK(homology_class(gi, zs[k].cycle(gi) + zs[p[k]].cycle(gi)) == LatticePoint{0, 0});
    }
    CHECK_THROWS(homology_class(g, CycleZ::from_darts(g, {0})));
}

TEST_CASE("graph newton polygons")
{
    auto n = graph_newton_polygon(fixture("square_ising.tg").graph);
    CHECK(n == unit_square());
    CHECK_FALSE(n.up_to_translation);
    CHECK(n.interior_points() == 1);
    auto nb = graph_newton_polygon(fixture("square_dimer.tg").graph);
    CHECK(nb == unit_square());
    CHECK(nb.up_to_translation);
    auto nh = graph_newton_polygon(fixture("hex_ising.tg").graph);
    CHECK(nh.vertices.size() == 6);
    CHECK(nh == nh.negated());
}

TEST_CASE("minimality against the window oracle")
{
    for (const auto& name : {"square_ising.tg", "square_dimer.tg", "hex_ising.tg"}) {
        auto g = fixture(name).graph;
        CHECK(check_minimal(g).minimal);
        CHECK(window_oracle_minimal(g));
    }
    auto bad = fixture("hex_doubled.tg").graph;
    auto res = check_minimal(bad);
    CHECK_FALSE(res.minimal);
    CHECK_FALSE(window_oracle_minimal(bad));
    REQUIRE_FALSE(res.violations.empty());
    // certificate: both darts lie on one edge
    const auto& v = res.violations.front();
    CHECK(bad.edge_of(v.dart_a) == bad.edge_of(v.dart_b));

    // doubled edge with no displacement: the 2-cycle is a contractible zig-zag
    GraphBuilder b;
    auto x = b.add_vertex("x", Color::black), y = b.add_vertex("y", Color::white);
    auto e1 = b.add_edge("e1", x, y, {0, 0}), e2 = b.add_edge("e2", x, y, {0, 0});
    b.set_rotation(x, {TorusGraph::dart_of(e1), TorusGraph::dart_of(e2)});
    b.set_rotation(y, {TorusGraph::dart_of(e1, false), TorusGraph::dart_of(e2, false)});
    auto two = check_minimal(b.build());
    CHECK_FALSE(two.minimal);
    CHECK(two.violations.front().kind == MinimalityViolation::Kind::zero_class);
    CHECK_THROWS_AS(graph_newton_polygon(b.build()), GraphError);

    // uncolored copy of the doubled hexagon
    auto f = fixture("hex_doubled.tg");
    auto vs = f.graph.vertices();
    for (auto& vx : vs) vx.color = Color::none;
    auto unc = TorusGraph::from_parts(vs, f.graph.edge_names(), f.graph.tails(), f.graph.twins(), f.graph.nexts(), f.graph.disps());
    CHECK(check_minimal(unc).minimal == window_oracle_minimal(unc));
}

TEST_CASE("minimality is invariant under relabeling")
{
    std::mt19937 rng(3);
    for (const auto& name : {"square_ising.tg", "square_dimer.tg", "hex_ising.tg", "hex_doubled.tg"}) {
        auto g = fixture(name).graph;
        bool m = check_minimal(g).minimal;
        for (int t = 0; t < 10; ++t) {
            auto h = relabeled(g, rng);
            CHECK(validate_graph(h).ok);
            CHECK(check_minimal(h).minimal == m);
            CHECK(window_oracle_minimal(h) == m);
            CHECK(find_isomorphism(g, h).has_value());
        }
    }
}

TEST_CASE("dual graphs")
{
    for (const auto& name : {"square_ising.tg", "hex_ising.tg"}) {
        auto g = fixture(name).graph;
        auto d = dual_graph(g);
        auto r = validate_graph(d);
        CHECK(r.ok);
        CHECK(r.vertices == g.num_faces());
        CHECK(r.faces == g.num_vertices());
        CHECK(r.edges == g.num_edges());
        CHECK(find_isomorphism(g, dual_graph(d)).has_value());
    }
    auto g = fixture("square_ising.tg").graph;
    CHECK(find_isomorphism(g, dual_graph(g)).has_value());
    auto h = fixture("hex_ising.tg").graph;
    auto dh = dual_graph(h);
    CHECK(dh.num_vertices() == 1);
    CHECK(dh.degree(0) == 6);
    CHECK(graph_newton_polygon(dh) == graph_newton_polygon(h));
}
