#include "doctest.h"

#include "torusdimer/graph_io.hpp"
#include "torusdimer/ising.hpp"

#include <cmath>
#include <random>

using namespace td;

namespace {

GraphFile fixture(const std::string& name) { return read_graph_file(std::string(TD_FIXTURE_DIR) + "/" + name); }
Rational q(const char* s) { return parse_rational(s); }

// Baxter's form of the star-triangle relation, solved for the star:
// sinh 2K_i sinh 2L_i = k with k built from the triangle's tanh L_i.
std::array<double, 3> baxter_star(const std::array<double, 3>& tri)
{
    auto sh = [](double x) { return (1 - x * x) / (2 * x); };
    std::array<double, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = (1 - tri[i]) / (1 + tri[i]);
    double k = 4 * std::sqrt((1 + v[0] * v[1] * v[2]) * (v[0] + v[1] * v[2]) * (v[1] + v[0] * v[2]) * (v[2] + v[0] * v[1])) /
               ((1 - v[0] * v[0]) * (1 - v[1] * v[1]) * (1 - v[2] * v[2]));
    std::array<double, 3> star;
    for (int i = 0; i < 3; ++i) {
        double s = k / sh(tri[i]);
        star[i] = -s + std::sqrt(s * s + 1);
    }
    return star;
}

}  // namespace

TEST_CASE("couplings")
{
    auto k = coupling_from_sc(q("4/5"), q("3/5"));
    CHECK(k.x == q("1/2"));
    CHECK(!k.J);
    CHECK_THROWS_AS(coupling_from_sc(q("1/2"), q("1/2")), CouplingError);
    CHECK_THROWS_AS(coupling_from_sc(q("1"), q("0")), CouplingError);
    CHECK_THROWS_AS(coupling_from_x(q("3/2")), CouplingError);

    auto kx = coupling_from_x(q("1/2"));
    CHECK(kx.s == q("4/5"));
    CHECK(kx.c == q("3/5"));

    // critical square lattice
    auto kc = coupling_from_J(0.5 * std::log(1 + std::sqrt(2.0)));
    CHECK(kc.x == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-14));
    CHECK(kc.s == doctest::Approx(kc.c).epsilon(1e-14));
    CHECK_THROWS_AS(coupling_from_J(-1.0), CouplingError);

    auto kd = coupling_from_sc(0.8, 0.6);
    CHECK(*kd.J == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("exact mode refuses J couplings")
{
    auto f = parse_graph_string("vertex n n .5 .5\nedge e1 n n 1 0\nedge e2 n n 0 1\nrot n e1+ e2+ e1- e2-\n"
                                "coupling e1 J=0.3\ncoupling e2 sc=4/5,3/5\n");
    CHECK_THROWS_AS(ising_from_file<Rational>(f), ModeError);
    auto m = ising_from_file<double>(f);
    CHECK(m.couplings[0].x == doctest::Approx(std::exp(-0.6)));
}

TEST_CASE("Kramers-Wannier duality")
{
    CHECK(dual_x(q("1/2")) == q("1/3"));
    CHECK(dual_x(dual_x(q("2/7"))) == q("2/7"));
    for (const char* name : {"square_ising.tg", "hex_ising.tg", "square_ising_2x2.tg"}) {
        auto m = ising_from_file<Rational>(fixture(name));
        auto d = dual_ising(m);
        CHECK(d.graph.num_vertices() == m.graph.num_faces());
        CHECK(ising_models_match(dual_ising(d), m));
    }
    // the square lattice at x = 1/2 goes to x* = 1/3 on the same graph
    auto m = ising_from_file<Rational>(fixture("square_ising.tg"));
    auto d = dual_ising(m);
    CHECK(d.couplings[0].x == q("1/3"));
    CHECK(find_isomorphism(d.graph, m.graph));
}

TEST_CASE("star-triangle weights")
{
    auto t = y_to_delta_weights(q("1"), q("1"), q("1"));
    CHECK(t[0] == q("1"));
    CHECK(t[2] == q("1"));
    CHECK_THROWS_AS(y_to_delta_weights(q("1/2"), q("1/2"), q("1/2")), ModeError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 3> star{u(rng), u(rng), u(rng)};
        auto tri = y_to_delta_weights(star[0], star[1], star[2]);
        auto back = baxter_star(tri);
        auto inv = delta_to_y_weights(tri[0], tri[1], tri[2]);
        for (int i = 0; i < 3; ++i) {
            CHECK(tri[i] > 0);
            CHECK(tri[i] < 1);
            CHECK(std::abs(back[i] - star[i]) < 1e-12);
            CHECK(std::abs(inv[i] - star[i]) < 1e-12);
        }
    }
}

TEST_CASE("star-triangle on graphs")
{
    auto m = ising_from_file<double>(fixture("hex_ising.tg"));
    auto t = y_delta(m, "u");
    CHECK(validate_graph(t.graph).ok);
    CHECK(t.graph.num_vertices() == 1);
    CHECK(t.graph.num_edges() == 3);
    CHECK(t.graph.degree(0) == 6);
    CHECK(t.graph.num_faces() == 2);
    for (FaceId f = 0; f < 2; ++f) CHECK(t.graph.face_darts(f).size() == 3);
    CHECK(graph_newton_polygon(t.graph).congruent_by_translation(graph_newton_polygon(m.graph)));

    // and back through either triangle
    auto face = t.graph.face_name(t.graph.face_of(0));
    auto y = y_delta(t, face);
    CHECK(ising_models_match(y, m, 1e-12));

    // duality turns the star at u into a triangle in the dual
    for (int trial = 0; trial < 50; ++trial) {
        std::mt19937_64 rng(100 + trial);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        auto r = m;
        for (auto& k : r.couplings) k = coupling_from_x(u(rng));
        auto lhs = dual_ising(y_delta(r, "u"));
        auto rhs = y_delta(dual_ising(r), "u");
        CHECK(ising_models_match(lhs, rhs, 1e-12));
    }
}

TEST_CASE("bipartite image of an Ising graph")
{
    for (const char* name : {"square_ising.tg", "hex_ising.tg", "square_ising_2x2.tg", "square_ising_bigon.tg"}) {
        CAPTURE(name);
        auto m = ising_from_file<Rational>(fixture(name));
        auto d = to_dimer(m);
        const int E = m.graph.num_edges();
        CHECK(d.graph.num_vertices() == 4 * E);
        CHECK(d.graph.num_edges() == 6 * E);
        CHECK(d.graph.num_faces() == E + m.graph.num_vertices() + m.graph.num_faces());
        CHECK(validate_graph(d.graph).ok);
        CHECK(d.graph.is_bipartite());
        for (VertexId v = 0; v < d.graph.num_vertices(); ++v) CHECK(d.graph.degree(v) == 3);
        CHECK(check_minimal(d.graph).minimal == check_minimal(m.graph).minimal);
        if (check_minimal(m.graph).minimal)
            CHECK(graph_newton_polygon(d.graph).congruent_by_translation(graph_newton_polygon(m.graph)));
        CHECK(d.gadgets.squares.size() == static_cast<std::size_t>(E));
        CHECK(d.gadgets.partners.size() == static_cast<std::size_t>(2 * E));
        // weights: s, c and 1 on each gadget
        for (const auto& [edge, face] : d.gadgets.squares) {
            const auto& k = m.couplings[m.graph.edge_index(edge)];
            auto bd = CycleZ::face_boundary(d.graph, d.graph.face_index(face));
            CHECK(x_of_cycle(d.graph, d.wt, bd) == (k.s * k.s) / (k.c * k.c));
        }
    }
}

TEST_CASE("bipartite image matches the hand-made fixture")
{
    auto m = ising_from_file<Rational>(fixture("square_ising.tg"));
    auto d = to_dimer(m);
    auto f = fixture("square_dimer.tg");
    auto wt = weights_from_file<Rational>(f);
    int hits = 0;
    for_each_isomorphism(d.graph, f.graph, [&](const Isomorphism& iso) {
        bool same = true;
        for (EdgeId e = 0; e < d.graph.num_edges(); ++e) same = same && d.wt[e] == wt[iso.dart_map[2 * e] / 2];
        hits += same;
        return false;
    });
    CHECK(hits == 1);

    // the sidecar written for the fixture agrees with the one produced here, through that isomorphism
    auto gm = read_gadget_map(std::string(TD_FIXTURE_DIR) + "/square_dimer.gadget");
    auto iso = *find_isomorphism(d.graph, f.graph);
    for (const auto& [w, b] : d.gadgets.partners) {
        auto wi = f.graph.vertex_name(iso.vertex_map[d.graph.vertex_index(w)]);
        auto bi = f.graph.vertex_name(iso.vertex_map[d.graph.vertex_index(b)]);
        CHECK(gm.partner_of(wi) == bi);
    }
}

TEST_CASE("gadget map parsing")
{
    std::istringstream ok("# gadget-map v1\nsquare e1 f1\npartner w1 b4\n");
    auto gm = parse_gadget_map(ok);
    CHECK(gm.partner_of("w1") == "b4");
    std::istringstream bad("square e1\n");
    CHECK_THROWS_AS(parse_gadget_map(bad), ParseError);
    std::istringstream twice("partner w1 b4\npartner w1 b3\n");
    CHECK_THROWS_AS(parse_gadget_map(twice), ParseError);
    std::ostringstream out;
    write_gadget_map(out, gm);
    std::istringstream back(out.str());
    CHECK(parse_gadget_map(back).squares == gm.squares);
}
