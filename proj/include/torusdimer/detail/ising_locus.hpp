#pragma once

// Body of ising_locus_check; included from dimer.hpp.

#include <algorithm>
#include <map>

namespace td {

namespace detail {

template <class S>
bool close_enough(const S& a, const S& b, double tol)
{
    if constexpr (ScalarTraits<S>::exact) {
        return a == b;
    } else {
        double scale = std::max(1.0, ScalarTraits<S>::abs(a));
        return ScalarTraits<S>::abs(S(a - b)) <= tol * scale;
    }
}

// subtract the most common coefficient so that untouched faces read 0
inline void center_face_coefficients(std::vector<long>& a)
{
    std::map<long, int> count;
    for (long v : a) ++count[v];
    long mode = 0;
    int best = -1;
    for (const auto& [v, n] : count)
        if (n > best || (n == best && v == 0)) {
            mode = v;
            best = n;
        }
    for (long& v : a) v -= mode;
}

}  // namespace detail

template <class S>
IsingLocusReport<S> ising_locus_check(const TorusGraph& g, const WeightCochain<S>& wt, const GadgetMap& gm,
                                      const CycleBasis& basis, double tol)
{
    IsingLocusReport<S> rep;
    rep.basis_names = basis.names;
    rep.x_before = x_coordinates(g, wt, basis);

    std::vector<FaceId> sq;
    for (const auto& [edge, face] : gm.squares) sq.push_back(g.face_index(face));
    std::sort(sq.begin(), sq.end());
    for (FaceId f : sq) {
        rep.squares.push_back(g.face_name(f));
        rep.x_squares.push_back(x_of_cycle(g, wt, CycleZ::face_boundary(g, f)));
    }
    for (const auto& c : basis.cycles) {
        std::vector<Rational> row;
        for (FaceId f : sq) row.push_back(pairing_with_face(g, c, f));
        rep.pairing.push_back(row);
    }

    TorusGraph cur = g;
    WeightCochain<S> cw = wt;
    MoveLedger ledger;
    std::vector<std::string> new_faces;
    for (FaceId f : sq) {
        auto m = square_move(cur, cw, cur.face_index(g.face_name(f)));
        cur = m.graph;
        cw = m.wt;
        new_faces.push_back(m.record.new_face);
        ledger.records.push_back(std::move(m.record));
    }
    rep.moved = cur;
    rep.moved_wt = cw;

    // isomorphism from the color-changed graph onto the moved one sending partner(w) to w
    const TorusGraph bar = color_changed(g);
    std::optional<Isomorphism> psi;
    for_each_isomorphism(bar, cur, [&](const Isomorphism& iso) {
        for (const auto& [w, b] : gm.partners)
            if (iso.vertex_map[bar.vertex_index(b)] != cur.vertex_index(w)) return false;
        psi = iso;
        return true;
    });
    rep.isomorphic = psi.has_value();
    if (!psi) return rep;

    const S one = ScalarTraits<S>::from_int(1);
    bool all = true;
    for (std::size_t k = 0; k < basis.cycles.size(); ++k) {
        const CycleZ& c = basis.cycles[k];
        CycleZ image(cur.num_edges());
        for (EdgeId e = 0; e < bar.num_edges(); ++e) image.add_dart(psi->dart_map[2 * e], c.flow[e]);
        S xa = x_of_cycle(cur, cw, image);
        rep.x_after.push_back(xa);
        S res = rep.x_before[k] * xa - one;
        rep.residual.push_back(res);
        bool ok = ScalarTraits<S>::is_zero(res, tol);
        all = all && ok;

        auto a = decompose_into_faces(cur, image - ledger.transport(c));
        std::vector<long> ex;
        bool other = false, holds = false;
        if (a) {
            detail::center_face_coefficients(*a);
            for (const auto& nf : new_faces) ex.push_back((*a)[cur.face_index(nf)]);
            S rhs = one;
            for (FaceId h = 0; h < cur.num_faces(); ++h) {
                long ah = (*a)[h];
                if (!ah) continue;
                if (std::find(new_faces.begin(), new_faces.end(), cur.face_name(h)) == new_faces.end()) other = true;
                rhs *= ipow(x_of_cycle(cur, cw, CycleZ::face_boundary(cur, h)), -ah);
            }
            holds = true;
            for (std::size_t j = 0; j < sq.size(); ++j) {
                const Rational& p = rep.pairing[k][j];
                if (p.get_den() != 1) {
                    holds = false;
                    break;
                }
                rhs *= ipow(S(one + rep.x_squares[j]), p.get_num().get_si());
            }
            holds = holds && detail::close_enough(S(rep.x_before[k] * rep.x_before[k]), rhs, tol);
        }
        rep.face_exponent.push_back(ex);
        rep.other_faces.push_back(other);
        rep.relation_holds.push_back(holds);
    }
    rep.pass = all;
    return rep;
}

}  // namespace td
