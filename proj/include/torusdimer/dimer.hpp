#pragma once

#include "torusdimer/ising.hpp"

#include <functional>

namespace td {

struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Faces except one (sorted by name) followed by the a and b cycles.
struct CycleBasis {
    std::vector<std::string> names;
    std::vector<CycleZ> cycles;
    std::string omitted_face;

    std::size_t size() const { return names.size(); }
    const CycleZ& operator[](const std::string& name) const;
};

// a and b come from cycles named "a"/"b" when supplied, otherwise from homology_basis().
// `omit` defaults to the last face name.
CycleBasis standard_basis(const TorusGraph& g, const std::vector<NamedCycle>& named = {}, std::string omit = "");

template <class S>
std::vector<S> x_coordinates(const TorusGraph& g, const WeightCochain<S>& wt, const CycleBasis& basis)
{
    std::vector<S> out;
    for (const auto& c : basis.cycles) out.push_back(x_of_cycle(g, wt, c));
    return out;
}

// Sum over black vertices of eps minus the sum over white ones; every vertex must be trivalent.
Rational intersection_pairing(const TorusGraph& g, const CycleZ& c, const CycleZ& d);

// Pairing against a face with distinct vertices. At each corner the darts outside the face
// are lumped into one virtual dart, so vertices of any degree are allowed.
Rational pairing_with_face(const TorusGraph& g, const CycleZ& c, FaceId f);

struct MoveRecord {
    enum class Kind { square, contraction, uncontraction, color };
    Kind kind;
    std::string target;     // face or vertex acted on
    std::string new_face;   // square moves: the name of the new square
    TorusGraph before, after;
    std::function<CycleZ(const CycleZ&)> push;  // s_* from cycles of `before` to cycles of `after`

    CycleZ transport(const CycleZ& c) const { return push(c); }
};

std::string to_string(MoveRecord::Kind k);

// Composition of recorded moves.
struct MoveLedger {
    std::vector<MoveRecord> records;
    CycleZ transport(const CycleZ& c) const
    {
        CycleZ r = c;
        for (const auto& m : records) r = m.transport(r);
        return r;
    }
};

// Combinatorics of the square move at a face b1 -> w1 -> b2 -> w2 whose blacks are trivalent;
// x1, x2 are the outside whites of b1, b2.
struct SquareSurgery {
    TorusGraph graph;
    VertexId b1, b2, w1, w2, x1, x2;
    EdgeId b1w1, b1w2, b1x1, b2w1, b2w2, b2x2;  // ids as in the old graph; they survive re-attached
    MoveRecord record;
};

SquareSurgery square_surgery(const TorusGraph& g, FaceId f);

template <class S>
struct MoveResult {
    TorusGraph graph;
    WeightCochain<S> wt;
    MoveRecord record;
};

// Spider form: after gauging the outside edges of b1 and b2 to 1, with a = wt(b1w1), b = wt(b1w2),
// c = wt(b2w2), d = wt(b2w1) the new blacks carry 1 and c, b, d, a over ac + bd.
template <class S>
MoveResult<S> square_move(const TorusGraph& g, const WeightCochain<S>& wt, FaceId f)
{
    auto s = square_surgery(g, f);
    const S a = wt[s.b1w1] / wt[s.b1x1], b = wt[s.b1w2] / wt[s.b1x1];
    const S d = wt[s.b2w1] / wt[s.b2x2], c = wt[s.b2w2] / wt[s.b2x2];
    const S den = a * c + b * d;
    if (ScalarTraits<S>::is_zero(den)) throw std::domain_error("square move with ac + bd = 0");
    WeightCochain<S> out = wt;
    const S one = ScalarTraits<S>::from_int(1);
    out[s.b1x1] = one;      // nb1 - w1
    out[s.b1w2] = c / den;  // nb1 - x1
    out[s.b1w1] = b / den;  // nb1 - x2
    out[s.b2x2] = one;      // nb2 - w2
    out[s.b2w2] = d / den;  // nb2 - x1
    out[s.b2w1] = a / den;  // nb2 - x2
    return {s.graph, out, s.record};
}

struct ContractionSurgery {
    TorusGraph graph;
    VertexId u1, u2;                 // old ids; u2 merges into u1
    EdgeId e1, e2;                   // old edges v-u1, v-u2
    std::vector<EdgeId> edge_map;    // old edge -> new edge, -1 for e1, e2
    MoveRecord record;
};

ContractionSurgery contraction_surgery(const TorusGraph& g, VertexId v);

template <class S>
MoveResult<S> contraction_move(const TorusGraph& g, const WeightCochain<S>& wt, VertexId v)
{
    auto s = contraction_surgery(g, v);
    // gauge so that both edges at v are 1: u2's other edges pick up wt(e1)/wt(e2)
    const S k = wt[s.e1] / wt[s.e2];
    WeightCochain<S> out(s.graph.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (s.edge_map[e] < 0) continue;
        DartId d = TorusGraph::dart_of(e);
        bool at_u2 = g.tail(d) == s.u2 || g.head(d) == s.u2;
        out[s.edge_map[e]] = at_u2 ? S(wt[e] * k) : wt[e];
    }
    return {s.graph, out, s.record};
}

// Splits `vertex`: the contiguous ccw run `moved` goes to a new vertex `u2_name`, joined back
// through a new degree-2 vertex `v_name`. `shift` is the lift of u2 relative to the old vertex.
struct UncontractSpec {
    std::string vertex;
    std::vector<std::string> moved;  // dart names, ccw and contiguous
    std::string v_name, u2_name, e1_name, e2_name;
    Displacement shift;
};

struct UncontractionSurgery {
    TorusGraph graph;
    EdgeId e1, e2;  // new edges (weight 1)
    MoveRecord record;
};

UncontractionSurgery uncontraction_surgery(const TorusGraph& g, const UncontractSpec& spec);

// The spec that undoes contraction at v (computed before contracting).
UncontractSpec inverse_of_contraction(const TorusGraph& g, VertexId v);

template <class S>
MoveResult<S> uncontraction_move(const TorusGraph& g, const WeightCochain<S>& wt, const UncontractSpec& spec)
{
    auto s = uncontraction_surgery(g, spec);
    WeightCochain<S> out(s.graph.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) out[e] = wt[e];
    return {s.graph, out, s.record};
}

TorusGraph color_changed(const TorusGraph& g);

template <class S>
MoveResult<S> color_change(const TorusGraph& g, const WeightCochain<S>& wt)
{
    MoveRecord r{MoveRecord::Kind::color, "", "", g, color_changed(g), [](const CycleZ& c) { return c; }};
    return {r.after, wt, r};
}

// Per square face: the pairing of every basis cycle with it, and the moves' combined result.
template <class S>
struct IsingLocusReport {
    bool pass = false;
    std::vector<std::string> basis_names;
    std::vector<S> x_before;              // X_gamma(wt)
    std::vector<S> x_after;               // X of the image of gamma-bar under the isomorphism, at mu(wt)
    std::vector<S> residual;              // x_before * x_after - 1
    std::vector<std::string> squares;     // in the order the moves were applied
    std::vector<S> x_squares;             // X_f(wt) for those squares
    std::vector<std::vector<Rational>> pairing;   // [basis][square] = <gamma, f>
    std::vector<std::vector<long>> face_exponent; // [basis][square] = coefficient of the new square f'
    std::vector<bool> other_faces;        // the decomposition used faces other than new squares
    std::vector<bool> relation_holds;     // X_gamma^2 = prod X_f^{a_f} (1 + X_f)^{<gamma, f>}
    bool isomorphic = false;
    TorusGraph moved;                     // graph after all square moves
    WeightCochain<S> moved_wt;
};

// Locates the square faces of the gadget map, applies square moves in ascending face id and compares
// with the color-changed graph through the partner correspondence.
template <class S>
IsingLocusReport<S> ising_locus_check(const TorusGraph& g, const WeightCochain<S>& wt, const GadgetMap& gm,
                                      const CycleBasis& basis, double tol = 0.0);

// s = sqrt(X/(1+X)), c = sqrt(1/(1+X)); exact only when both are rational squares.
template <class S>
Coupling<S> coupling_from_face(const S& xf)
{
    if (!ScalarTraits<S>::is_positive(xf)) throw CouplingError("face X must be positive");
    const S one = ScalarTraits<S>::from_int(1);
    S s = detail::checked_sqrt(S(xf / (one + xf)));
    S c = detail::checked_sqrt(S(one / (one + xf)));
    return coupling_from_sc(s, c, 1e-12);
}

// Couplings per Ising edge named in the gadget map, from the X values of its square.
template <class S>
std::vector<std::pair<std::string, Coupling<S>>> ising_from_faces(const TorusGraph& g, const WeightCochain<S>& wt, const GadgetMap& gm)
{
    std::vector<std::pair<std::string, Coupling<S>>> out;
    for (const auto& [edge, face] : gm.squares)
        out.emplace_back(edge, coupling_from_face(x_of_cycle(g, wt, CycleZ::face_boundary(g, g.face_index(face)))));
    return out;
}

// Face coefficients a_f with c = sum a_f * boundary(f), normalized so that `root` has 0.
std::optional<std::vector<long>> decompose_into_faces(const TorusGraph& g, const CycleZ& c, FaceId root = 0);

// Replay file lines: "move square f=<face>", "move contract v=<vertex>", "move color".
struct ReplayStep {
    int line;
    std::string verb;    // square | contract | color
    std::string target;
};

std::vector<ReplayStep> parse_replay(std::istream& in);

template <class S>
struct ReplayResult {
    TorusGraph graph;
    WeightCochain<S> wt;
    MoveLedger ledger;
};

template <class S>
ReplayResult<S> replay(const TorusGraph& g, const WeightCochain<S>& wt, const std::vector<ReplayStep>& steps)
{
    ReplayResult<S> r{g, wt, {}};
    for (const auto& st : steps) {
        MoveResult<S> m;
        try {
            if (st.verb == "square")
                m = square_move(r.graph, r.wt, r.graph.face_index(st.target));
            else if (st.verb == "contract")
                m = contraction_move(r.graph, r.wt, r.graph.vertex_index(st.target));
            else
                m = color_change(r.graph, r.wt);
        } catch (const std::exception& e) {
            throw ParseError(st.line, "move " + st.verb + (st.target.empty() ? "" : " " + st.target) + ": " + e.what());
        }
        r.graph = m.graph;
        r.wt = m.wt;
        r.ledger.records.push_back(m.record);
    }
    return r;
}

}  // namespace td

#include "torusdimer/detail/ising_locus.hpp"
