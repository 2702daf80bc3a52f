#include "torusdimer/spectral.hpp"

#include <deque>

namespace td {

namespace {

using Row = std::vector<unsigned char>;  // last entry is the right-hand side

// Reduced row echelon form over GF(2); returns nullopt when inconsistent.
std::optional<Row> solve_gf2(std::vector<Row> rows, int n)
{
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !rows[p][c]) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (k != r && rows[k][c])
                for (int j = c; j <= n; ++j) rows[k][j] ^= rows[r][j];
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t k = r; k < rows.size(); ++k)
        if (rows[k][n]) return std::nullopt;
    Row x(n, 0);  // free variables at 0
    for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = rows[k][n];
    return x;
}

Row cycle_row(const CycleZ& c, int ne, int rhs)
{
    Row row(ne + 1, 0);
    for (int e = 0; e < ne; ++e) row[e] = static_cast<unsigned char>(std::abs(c.flow[e]) & 1);
    row[ne] = static_cast<unsigned char>(rhs & 1);
    return row;
}

}  // namespace

std::vector<KasteleynSign> solve_kasteleyn_signs(const TorusGraph& g, const CycleZ& a, const CycleZ& b)
{
    if (!g.is_bipartite()) throw GraphError("Kasteleyn signs need a bipartite graph");
    const int ne = g.num_edges();
    std::vector<Row> faces;
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        Row row(ne + 1, 0);
        for (DartId d : g.face_darts(f)) row[g.edge_of(d)] ^= 1;
        row[ne] = static_cast<unsigned char>((g.face_darts(f).size() / 2 + 1) & 1);
        faces.push_back(row);
    }
    if (!solve_gf2(faces, ne))
        throw KasteleynError("face sign conditions are inconsistent (E + F = " + std::to_string(ne + g.num_faces()) + ")");
    std::vector<KasteleynSign> out;
    for (int ta : {0, 1})
        for (int tb : {0, 1}) {
            auto rows = faces;
            rows.push_back(cycle_row(a, ne, ta));
            rows.push_back(cycle_row(b, ne, tb));
            auto x = solve_gf2(rows, ne);
            if (!x) throw KasteleynError("no Kasteleyn sign with cycle signs " + std::string(ta ? "-" : "+") + (tb ? "-" : "+"));
            KasteleynSign s;
            for (int e = 0; e < ne; ++e) s.sign.push_back((*x)[e] ? -1 : 1);
            s.a = ta ? -1 : 1;
            s.b = tb ? -1 : 1;
            out.push_back(s);
        }
    return out;
}

const KasteleynSign& pick_sign(const std::vector<KasteleynSign>& all, const std::string& label)
{
    for (const auto& s : all)
        if (s.label() == label) return s;
    throw std::invalid_argument("no sign class '" + label + "' (use ++, +-, -+ or --)");
}

bool satisfies_face_condition(const TorusGraph& g, const std::vector<int>& sign)
{
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        int p = 1;
        for (DartId d : g.face_darts(f)) p *= sign[g.edge_of(d)];
        int want = ((g.face_darts(f).size() / 2 + 1) & 1) ? -1 : 1;
        if (p != want) return false;
    }
    return true;
}

bool sign_gauge_equivalent(const TorusGraph& g, const std::vector<int>& s, const std::vector<int>& t)
{
    std::vector<int> eps(g.num_vertices(), 0);
    for (VertexId root = 0; root < g.num_vertices(); ++root) {
        if (eps[root]) continue;
        eps[root] = 1;
        std::deque<VertexId> q{root};
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            for (DartId d : g.darts_at(v)) {
                int want = eps[v] * s[g.edge_of(d)] * t[g.edge_of(d)];
                VertexId u = g.head(d);
                if (!eps[u]) {
                    eps[u] = want;
                    q.push_back(u);
                } else if (eps[u] != want)
                    return false;
            }
        }
    }
    return true;
}

std::vector<std::pair<std::string, std::string>> zigzag_pairs(const TorusGraph& g, const GadgetMap& gm)
{
    auto zs = zigzag_paths(g);
    std::vector<std::vector<std::string>> through(g.num_edges());
    for (const auto& z : zs)
        for (DartId d : z.darts) through[g.edge_of(d)].push_back(z.id);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [w, b] : gm.partners) {
        VertexId wv = g.vertex_index(w), bv = g.vertex_index(b);
        std::optional<EdgeId> edge;
        for (DartId d : g.darts_at(wv))
            if (g.head(d) == bv) edge = g.edge_of(d);
        if (!edge) throw GraphError("partner " + w + " " + b + " is not an edge");
        auto ids = through[*edge];
        if (ids.size() != 2) throw GraphError("edge " + g.edge_name(*edge) + " is not crossed by two zig-zags");
        std::sort(ids.begin(), ids.end());
        std::pair<std::string, std::string> p{ids[0], ids[1]};
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

const NuEntry& NuMap::operator[](const std::string& z) const
{
    for (const auto& e : entries)
        if (e.zigzag == z) return e;
    throw std::out_of_range("no zig-zag '" + z + "'");
}

}  // namespace td
