#pragma once

#include "torusdimer/weights.hpp"
#include "torusdimer/zigzag.hpp"

#include <array>
#include <cmath>
#include <iosfwd>

namespace td {

// x = exp(-2J), s = sech 2J = 2x/(1+x^2), c = tanh 2J = (1-x^2)/(1+x^2).
template <class S>
struct Coupling {
    S s, c, x;
    std::optional<double> J;  // absent in exact mode
};

struct CouplingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class S>
void check_unit_interval(const S& v, const char* what)
{
    if (!(ScalarTraits<S>::is_positive(v) && v < ScalarTraits<S>::from_int(1)))
        throw CouplingError(std::string(what) + " must lie in (0,1), got " + ScalarTraits<S>::format(v));
}

template <class S>
std::optional<double> j_of_x(const S& x)
{
    if constexpr (ScalarTraits<S>::exact) {
        return std::nullopt;
    } else {
        return -0.5 * std::log(x);
    }
}

}  // namespace detail

template <class S>
Coupling<S> coupling_from_x(const S& x)
{
    detail::check_unit_interval(x, "x");
    const S one = ScalarTraits<S>::from_int(1);
    S x2 = x * x;
    return {S(2 * x / (one + x2)), S((one - x2) / (one + x2)), x, detail::j_of_x(x)};
}

template <class S>
Coupling<S> coupling_from_sc(const S& s, const S& c, double tol = 1e-10)
{
    detail::check_unit_interval(s, "s");
    detail::check_unit_interval(c, "c");
    const S one = ScalarTraits<S>::from_int(1);
    S defect = s * s + c * c - one;
    if (!ScalarTraits<S>::is_zero(defect, ScalarTraits<S>::exact ? 0.0 : tol))
        throw CouplingError("s^2 + c^2 = " + ScalarTraits<S>::format(S(defect + one)) + ", not 1");
    S x = (one - c) / s;
    return {s, c, x, detail::j_of_x(x)};
}

inline Coupling<double> coupling_from_J(double J)
{
    if (!(J > 0) || !std::isfinite(J)) throw CouplingError("J must be positive");
    auto k = coupling_from_x(std::exp(-2 * J));
    k.J = J;
    return k;
}

template <class S>
S dual_x(const S& x)
{
    const S one = ScalarTraits<S>::from_int(1);
    return (one - x) / (one + x);
}

template <class S>
struct IsingModel {
    TorusGraph graph;
    std::vector<Coupling<S>> couplings;  // by edge id
};

template <class S>
IsingModel<S> ising_from_file(const GraphFile& f)
{
    IsingModel<S> m{f.graph, {}};
    if (m.graph.colored()) throw GraphError("an Ising graph must be uncolored");
    for (EdgeId e = 0; e < f.graph.num_edges(); ++e) {
        auto it = f.couplings.find(e);
        if (it == f.couplings.end()) throw GraphError("edge '" + f.graph.edge_name(e) + "' has no coupling");
        const auto& t = it->second;
        if (t.has_J()) {
            if constexpr (ScalarTraits<S>::exact)
                throw ModeError("coupling J=" + t.J + " on edge '" + f.graph.edge_name(e) + "' needs numeric mode");
            else
                m.couplings.push_back(coupling_from_J(parse_double(t.J)));
        } else {
            m.couplings.push_back(coupling_from_sc(parse_scalar<S>(t.s), parse_scalar<S>(t.c)));
        }
    }
    return m;
}

template <class S>
GraphFile ising_to_file(const IsingModel<S>& m)
{
    GraphFile f;
    f.graph = m.graph;
    for (EdgeId e = 0; e < m.graph.num_edges(); ++e)
        f.couplings[e] = {"", ScalarTraits<S>::format(m.couplings[e].s), ScalarTraits<S>::format(m.couplings[e].c)};
    return f;
}

// Kramers-Wannier: the dual edge e* keeps the name and id of e, x* = (1-x)/(1+x).
template <class S>
IsingModel<S> dual_ising(const IsingModel<S>& m)
{
    IsingModel<S> d{dual_graph(m.graph), {}};
    for (const auto& k : m.couplings) d.couplings.push_back(coupling_from_x(dual_x(k.x)));
    return d;
}

namespace detail {

template <class S>
S checked_sqrt(const S& v)
{
    auto r = ScalarTraits<S>::sqrt(v);
    if (!r) throw ModeError("square root of " + ScalarTraits<S>::format(v) + " is not exact; use numeric mode");
    return *r;
}

}  // namespace detail

// Star weights (a, b, c) -> triangle weights; the k-th triangle edge is opposite the k-th star leg.
template <class S>
std::array<S, 3> y_to_delta_weights(const S& a, const S& b, const S& c)
{
    const S one = ScalarTraits<S>::from_int(1);
    S q = a * b * c + one;
    S pa = a + b * c, pb = b + a * c, pc = c + a * b;
    return {detail::checked_sqrt(S(pb * pc / (q * pa))), detail::checked_sqrt(S(pa * pc / (q * pb))),
            detail::checked_sqrt(S(pa * pb / (q * pc)))};
}

// Inverse map, obtained by conjugating with duality (the dual of a triangle is a star).
template <class S>
std::array<S, 3> delta_to_y_weights(const S& A, const S& B, const S& C)
{
    auto t = y_to_delta_weights(dual_x(A), dual_x(B), dual_x(C));
    return {dual_x(t[0]), dual_x(t[1]), dual_x(t[2])};
}

// Graph part of the star-triangle move.
struct YDeltaSurgery {
    TorusGraph graph;
    std::array<EdgeId, 3> old_edges;  // legs (Y->Delta) or triangle sides (Delta->Y), ccw
    std::array<EdgeId, 3> new_edges;  // new_edges[k] is the edge replacing old_edges[k] (opposite it)
    bool to_delta = true;
};

YDeltaSurgery y_to_delta_graph(const TorusGraph& g, VertexId v);
YDeltaSurgery delta_to_y_graph(const TorusGraph& g, FaceId f, const std::string& new_vertex);

// `where` names a degree-3 vertex (Y->Delta) or a triangular face (Delta->Y).
template <class S>
IsingModel<S> y_delta(const IsingModel<S>& m, const std::string& where)
{
    YDeltaSurgery s;
    if (auto v = m.graph.find_vertex(where)) {
        s = y_to_delta_graph(m.graph, *v);
    } else if (auto f = m.graph.find_face(where)) {
        std::string name = "y_" + where;
        while (m.graph.find_vertex(name)) name += "_";
        s = delta_to_y_graph(m.graph, *f, name);
    } else {
        throw GraphError("no vertex or face named '" + where + "'");
    }
    std::array<S, 3> in{m.couplings[s.old_edges[0]].x, m.couplings[s.old_edges[1]].x, m.couplings[s.old_edges[2]].x};
    auto out = s.to_delta ? y_to_delta_weights(in[0], in[1], in[2]) : delta_to_y_weights(in[0], in[1], in[2]);

    // surviving edges keep their relative order; new edges take the removed slots
    IsingModel<S> r{s.graph, std::vector<Coupling<S>>(s.graph.num_edges(), Coupling<S>{})};
    std::vector<char> removed(m.graph.num_edges(), 0);
    for (EdgeId e : s.old_edges) removed[e] = 1;
    EdgeId next = 0;
    for (EdgeId e = 0; e < m.graph.num_edges(); ++e)
        if (!removed[e]) r.couplings[next++] = m.couplings[e];
    for (int k = 0; k < 3; ++k) r.couplings[s.new_edges[k]] = coupling_from_x(out[k]);
    return r;
}

// Same model up to an isomorphism of embedded graphs, couplings compared in x within tol.
template <class S>
bool ising_models_match(const IsingModel<S>& a, const IsingModel<S>& b, double tol = 0.0)
{
    bool found = false;
    for_each_isomorphism(a.graph, b.graph, [&](const Isomorphism& iso) {
        for (EdgeId e = 0; e < a.graph.num_edges(); ++e) {
            const S diff = a.couplings[e].x - b.couplings[iso.dart_map[TorusGraph::dart_of(e)] / 2].x;
            if (!ScalarTraits<S>::is_zero(diff, tol)) return false;
        }
        found = true;
        return true;
    });
    return found;
}

// Sidecar data linking G-box back to the Ising graph.
struct GadgetMap {
    std::vector<std::pair<std::string, std::string>> squares;  // (Ising edge, square face of G-box)
    std::vector<std::pair<std::string, std::string>> partners;  // (white, black outside its square)

    std::string partner_of(const std::string& white) const;
};

GadgetMap parse_gadget_map(std::istream& in);
GadgetMap read_gadget_map(const std::string& path);
void write_gadget_map(std::ostream& out, const GadgetMap& gm);

// Role of each G-box edge inside its gadget.
enum class GadgetRole { s, c, one };

struct DimerGraph {
    TorusGraph graph;
    GadgetMap gadgets;
    std::vector<EdgeId> ising_edge;  // per G-box edge; -1 for the weight-one corner edges
    std::vector<GadgetRole> role;
};

DimerGraph to_dimer_graph(const TorusGraph& g);

template <class S>
struct DimerImage {
    TorusGraph graph;
    WeightCochain<S> wt;
    GadgetMap gadgets;
};

template <class S>
DimerImage<S> to_dimer(const IsingModel<S>& m)
{
    auto d = to_dimer_graph(m.graph);
    WeightCochain<S> wt(d.graph.num_edges());
    for (EdgeId e = 0; e < d.graph.num_edges(); ++e) {
        if (d.role[e] == GadgetRole::s) wt[e] = m.couplings[d.ising_edge[e]].s;
        if (d.role[e] == GadgetRole::c) wt[e] = m.couplings[d.ising_edge[e]].c;
    }
    return {d.graph, wt, d.gadgets};
}

}  // namespace td
