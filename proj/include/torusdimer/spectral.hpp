#pragma once

#include "torusdimer/dimer.hpp"
#include "torusdimer/laurent_matrix.hpp"
#include "torusdimer/roots.hpp"

#include <cmath>
#include <map>

namespace td {

namespace detail {

template <class S>
double magnitude(const S& x)
{
    if constexpr (ScalarTraits<S>::exact)
        return std::abs(ScalarTraits<S>::to_double(x));
    else
        return static_cast<double>(ScalarTraits<S>::abs(x));
}

}  // namespace detail

struct KasteleynError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One representative per class; `a`, `b` are the sign products along the a and b cycles.
struct KasteleynSign {
    std::vector<int> sign;  // per edge, +1 or -1
    int a = 1, b = 1;
    std::string label() const { return std::string(a > 0 ? "+" : "-") + (b > 0 ? "+" : "-"); }
};

// Solves prod over the boundary of f = (-1)^(#f/2 + 1) over GF(2). Classes come back in the
// order ++, +-, -+, --.
std::vector<KasteleynSign> solve_kasteleyn_signs(const TorusGraph& g, const CycleZ& a, const CycleZ& b);
const KasteleynSign& pick_sign(const std::vector<KasteleynSign>& all, const std::string& label);
bool satisfies_face_condition(const TorusGraph& g, const std::vector<int>& sign);
// s and t differ by a vertex sign-gauge.
bool sign_gauge_equivalent(const TorusGraph& g, const std::vector<int>& s, const std::vector<int>& t);

// Rows are white vertices, columns black, both in vertex id order. The monomial of an edge is
// z^i w^j for the displacement (i,j) of its black-to-white dart.
template <class S>
LaurentMatrix<S> kasteleyn_matrix(const TorusGraph& g, const WeightCochain<S>& wt, const std::vector<int>& sign)
{
    if (!g.is_bipartite()) throw GraphError("Kasteleyn matrix needs a bipartite graph");
    std::vector<std::string> rows, cols;
    std::vector<std::size_t> at(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto& side = g.color(v) == Color::white ? rows : cols;
        at[v] = side.size();
        side.push_back(g.vertex_name(v));
    }
    LaurentMatrix<S> k(rows, cols);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        DartId d = TorusGraph::dart_of(e, bw_orientation(g, e) > 0);
        Displacement p = g.disp(d);
        S c = wt[e];
        if (sign[e] < 0) c = -c;
        k(at[g.head(d)], at[g.tail(d)]) += LaurentPoly<S>::monomial(c, static_cast<int>(p.x), static_cast<int>(p.y));
    }
    return k;
}

template <class S>
struct SpectralCurve {
    LaurentPoly<S> P;
    NewtonPolygon polygon;
    long genus = 0;
    std::optional<bool> matches_graph_polygon;  // set for minimal graphs
    bool sign_flipped = false;                  // P = -det K
};

template <class S>
SpectralCurve<S> characteristic_polynomial(const TorusGraph& g, const WeightCochain<S>& wt, const std::vector<int>& sign,
                                           double tol = 0.0)
{
    auto k = kasteleyn_matrix(g, wt, sign);
    if (k.rows() != k.cols())
        throw GraphError("Kasteleyn matrix is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + ", not square");
    DeterminantOptions opt;
    opt.max_dimension = std::max<std::size_t>(opt.max_dimension, k.rows());
    opt.tol = tol;
    SpectralCurve<S> c;
    c.P = lm_determinant(k, opt);
    if (!ScalarTraits<S>::exact) c.P = c.P.pruned(tol);
    if (c.P.is_zero()) throw GraphError("characteristic polynomial vanishes identically");
    // det K is defined up to sign by the gauge; make the constant (else first canonical) term positive
    auto lead = c.P.terms().find(Exponent{0, 0});
    if (lead == c.P.terms().end()) {
        lead = c.P.terms().begin();
        for (auto it = c.P.terms().begin(); it != c.P.terms().end(); ++it)
            if (canonical_exponent_less(it->first, lead->first)) lead = it;
    }
    if (ScalarTraits<S>::to_double(lead->second) < 0) {
        c.P = -c.P;
        c.sign_flipped = true;
    }
    c.polygon = newton_polygon(c.P);
    c.genus = c.polygon.interior_points();
    if (check_minimal(g).minimal) c.matches_graph_polygon = graph_newton_polygon(g).congruent_by_translation(c.polygon);
    return c;
}

// K-bar(z, w) = K(1/z, 1/w)^T under the identity on vertex names.
template <class S>
LaurentMatrix<S> sigma_transpose(const LaurentMatrix<S>& k)
{
    LaurentMatrix<S> t(k.col_labels(), k.row_labels());
    for (std::size_t r = 0; r < k.rows(); ++r)
        for (std::size_t c = 0; c < k.cols(); ++c) t(c, r) = lp_sigma(k(r, c));
    return t;
}

struct DivisorPoint {
    Complex z, w;
    std::optional<Rational> zq, wq;  // set when confirmed exactly
    int multiplicity = 1;
    double residual = 0;             // max |entry| and |P| at the point
};

struct Divisor {
    std::string vertex;
    std::vector<DivisorPoint> points;
    std::string note;  // clustering or degree problems

    int degree() const
    {
        int d = 0;
        for (const auto& p : points) d += p.multiplicity;
        return d;
    }
    bool exact() const
    {
        for (const auto& p : points)
            if (!p.zq) return false;
        return true;
    }
};

Divisor sigma(const Divisor& d);
// Multiset equality; exact points compare exactly, the rest within tol.
bool divisors_equal(const Divisor& a, const Divisor& b, double tol = 1e-8);
std::string to_string(const DivisorPoint& p);

namespace detail {

struct Candidates {
    std::vector<std::pair<Complex, Complex>> pts;
    std::string note;
};

// Points of (C^*)^2 where P and every entry vanish, from the z-roots of a resultant.
Candidates common_zeros(const LaurentPoly<Complex>& P, const std::vector<LaurentPoly<Complex>>& entries,
                        const std::vector<Complex>& z_roots, double tol);

Divisor cluster_divisor(const std::vector<std::pair<Complex, Complex>>& pts, const LaurentPoly<Complex>& P,
                        const std::vector<LaurentPoly<Complex>>& entries);

}  // namespace detail

// Common zeros on the curve of the row (black v) or column (white v) of adj K.
template <class S>
Divisor divisor_of_vertex(const TorusGraph& g, const WeightCochain<S>& wt, const std::vector<int>& sign, VertexId v,
                          double tol = 1e-10)
{
    auto k = kasteleyn_matrix(g, wt, sign);
    DeterminantOptions opt;
    opt.max_dimension = std::max<std::size_t>(opt.max_dimension, k.rows());
    auto curve = characteristic_polynomial(g, wt, sign);
    Divisor out;
    out.vertex = g.vertex_name(v);
    if (curve.genus == 0) return out;

    auto adj = lm_adjugate(k, opt);
    std::vector<LaurentPoly<S>> entries;
    if (g.color(v) == Color::white) {
        std::size_t c = adj.col_index(g.vertex_name(v));
        for (std::size_t r = 0; r < adj.rows(); ++r) entries.push_back(adj(r, c));
    } else {
        std::size_t r = adj.row_index(g.vertex_name(v));
        for (std::size_t c = 0; c < adj.cols(); ++c) entries.push_back(adj(r, c));
    }
    std::vector<LaurentPoly<S>> nz;
    for (auto& e : entries)
        if (!e.pruned(ScalarTraits<S>::exact ? 0.0 : 1e-14).is_zero()) nz.push_back(e);
    if (nz.empty()) throw std::runtime_error("adjugate line of " + out.vertex + " vanishes identically");

    // eliminate w between P and an entry; a monomial entry has no zeros on the torus
    std::vector<Complex> zr;
    bool have = false;
    for (const auto& e : nz) {
        if (e.size() == 1) return out;
        if (!e.depends_on(Var::w)) {
            // zeros of e(z) alone
            std::vector<Complex> c(e.max_exponent().i - e.min_exponent().i + 1);
            for (const auto& [x, v] : e.terms()) c[x.i - e.min_exponent().i] += scalar_cast<Complex>(v);
            zr = poly_roots(c);
            have = true;
            break;
        }
        auto res = resultant_eliminate(curve.P, e, Var::w, opt);
        if (res.value.is_zero()) continue;
        auto rv = res.value;
        std::vector<Complex> c(rv.max_exponent().i - rv.min_exponent().i + 1);
        for (const auto& [x, val] : rv.terms()) c[x.i - rv.min_exponent().i] += scalar_cast<Complex>(val);
        zr = poly_roots(c);
        have = true;
        break;
    }
    if (!have) throw std::runtime_error("no usable resultant for " + out.vertex + " (common factor with P)");

    auto Pc = lp_cast<Complex>(curve.P);
    std::vector<LaurentPoly<Complex>> ec;
    for (const auto& e : nz) ec.push_back(lp_cast<Complex>(e));
    auto cand = detail::common_zeros(Pc, ec, zr, tol);
    Divisor d = detail::cluster_divisor(cand.pts, Pc, ec);
    d.vertex = out.vertex;
    d.note = cand.note;

    // exact confirmation by rational reconstruction
    for (auto& p : d.points) {
        if (std::abs(p.z.imag()) > 1e-9 || std::abs(p.w.imag()) > 1e-9) continue;
        Rational zq = rational_reconstruct(p.z.real()), wq = rational_reconstruct(p.w.real());
        if (zq == 0 || wq == 0) continue;
        bool ok = true;
        if constexpr (std::is_same_v<S, Rational>) {
            ok = curve.P(zq, wq) == 0;
            for (const auto& e : nz) ok = ok && e(zq, wq) == 0;
        } else {
            ok = false;
        }
        if (ok) {
            p.zq = zq;
            p.wq = wq;
        }
    }
    if (d.degree() != curve.genus) {
        if (!d.note.empty()) d.note += "; ";
        d.note += "found degree " + std::to_string(d.degree()) + " but genus is " + std::to_string(curve.genus);
    }
    return d;
}

// Label of a point at infinity: side direction (the zig-zag class) and intercept -log|X|.
struct NuEntry {
    std::string zigzag;
    LatticePoint side;
    double intercept = 0;
    int position = 0;   // rank by intercept among zig-zags of the same side
    bool tie = false;
};

struct NuMap {
    std::vector<NuEntry> entries;  // in zig-zag order
    std::vector<std::string> ties; // sides with equal |X|
    const NuEntry& operator[](const std::string& z) const;
};

template <class S>
NuMap nu_map(const TorusGraph& g, const WeightCochain<S>& wt)
{
    NuMap m;
    auto zs = zigzag_paths(g);
    for (const auto& z : zs) {
        double x = detail::magnitude(x_of_cycle(g, wt, z.cycle(g)));
        m.entries.push_back({z.id, z.cls, -std::log(x), 0, false});
    }
    std::map<LatticePoint, std::vector<std::size_t>> by_side;
    for (std::size_t k = 0; k < m.entries.size(); ++k) by_side[m.entries[k].side].push_back(k);
    for (auto& [side, ks] : by_side) {
        std::stable_sort(ks.begin(), ks.end(), [&](std::size_t a, std::size_t b) { return m.entries[a].intercept < m.entries[b].intercept; });
        for (std::size_t r = 0; r < ks.size(); ++r) {
            m.entries[ks[r]].position = static_cast<int>(r);
            if (r && std::abs(m.entries[ks[r]].intercept - m.entries[ks[r - 1]].intercept) < 1e-12) {
                m.entries[ks[r]].tie = m.entries[ks[r - 1]].tie = true;
                m.ties.push_back("(" + std::to_string(side.x) + "," + std::to_string(side.y) + ")");
            }
        }
    }
    return m;
}

// Pairs alpha with alpha-bar: the two zig-zags through each partner edge.
std::vector<std::pair<std::string, std::string>> zigzag_pairs(const TorusGraph& g, const GadgetMap& gm);

template <class S>
struct SpectralCheck {
    std::string name;
    bool pass = false;
    double residual = 0;
    std::string witness;
};

template <class S>
struct IsingSpectralReport {
    SpectralCurve<S> curve;
    Divisor d_white, d_black;
    std::vector<SpectralCheck<S>> checks;  // (1), (2'), (3)
    bool pass() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

template <class S>
IsingSpectralReport<S> verify_ising_spectral(const TorusGraph& g, const WeightCochain<S>& wt, const std::vector<int>& sign,
                                             const GadgetMap& gm, VertexId white, double tol = 1e-8)
{
    IsingSpectralReport<S> rep;
    rep.curve = characteristic_polynomial(g, wt, sign);

    SpectralCheck<S> c1{"sigma-invariant curve", false, 0, ""};
    auto diff = lp_sigma(rep.curve.P) - rep.curve.P;
    for (const auto& [e, v] : diff.terms()) {
        double r = detail::magnitude(v);
        if (r > c1.residual) {
            c1.residual = r;
            c1.witness = "coefficient of " + detail::monomial_text(e) + " differs from its mirror by " + ScalarTraits<S>::format(v);
        }
    }
    c1.pass = ScalarTraits<S>::exact ? diff.is_zero() : c1.residual <= tol;
    rep.checks.push_back(c1);

    if (g.color(white) != Color::white) throw GraphError(g.vertex_name(white) + " is not white");
    const VertexId black = g.vertex_index(gm.partner_of(g.vertex_name(white)));
    rep.d_white = divisor_of_vertex(g, wt, sign, white);
    rep.d_black = divisor_of_vertex(g, wt, sign, black);
    SpectralCheck<S> c2{"D_w = sigma(D_b)", false, 0, ""};
    auto sb = sigma(rep.d_black);
    c2.pass = divisors_equal(rep.d_white, sb, tol);
    for (const auto& p : rep.d_white.points) {
        double best = 1e300;
        for (const auto& q : sb.points) best = std::min(best, std::abs(p.z - q.z) + std::abs(p.w - q.w));
        c2.residual = std::max(c2.residual, sb.points.empty() ? 1e300 : best);
    }
    if (!c2.pass) c2.witness = "D_" + rep.d_white.vertex + " has " + std::to_string(rep.d_white.degree()) + " points, sigma(D_" +
                               rep.d_black.vertex + ") " + std::to_string(sb.degree());
    rep.checks.push_back(c2);

    // tentacles: the sigma-image of alpha's asymptote <S, p> + log|X_alpha| = 0 is <-S, p> + log|X_alpha| = 0
    SpectralCheck<S> c3{"nu(abar) = sigma(nu(a))", true, 0, ""};
    std::map<std::string, ZigZag> zz;
    for (const auto& z : zigzag_paths(g)) zz[z.id] = z;
    for (const auto& [a, b] : zigzag_pairs(g, gm)) {
        S xa = x_of_cycle(g, wt, zz[a].cycle(g)), xb = x_of_cycle(g, wt, zz[b].cycle(g));
        bool opposite = zz[a].cls == -zz[b].cls;
        double r = std::abs(std::log(detail::magnitude(xa)) - std::log(detail::magnitude(xb)));
        bool ok = opposite && (ScalarTraits<S>::exact ? (xa == xb || xa == S(-xb)) : r <= tol);
        if (r > c3.residual) c3.residual = r;
        if (!ok) {
            c3.pass = false;
            if (c3.witness.empty())
                c3.witness = opposite ? a + " has |X| = " + ScalarTraits<S>::format(xa) + ", " + b + " has " + ScalarTraits<S>::format(xb)
                                      : a + " and " + b + " are not on opposite sides";
        }
    }
    rep.checks.push_back(c3);
    return rep;
}

// Discrete Abel map on a window of lifts: label = formal sum of zig-zag ids.
struct AbelLabel {
    std::map<std::string, long> coeff;
    long degree() const
    {
        long d = 0;
        for (const auto& [k, v] : coeff) d += v;
        return d;
    }
    AbelLabel& operator+=(const AbelLabel& o);
    AbelLabel& operator-=(const AbelLabel& o);
    friend AbelLabel operator+(AbelLabel a, const AbelLabel& b) { return a += b; }
    friend AbelLabel operator-(AbelLabel a, const AbelLabel& b) { return a -= b; }
    friend bool operator==(const AbelLabel& a, const AbelLabel& b);
};

std::string to_string(const AbelLabel& a);

struct AbelMap {
    int window = 0;  // lifts (i, j) with 0 <= i, j < window
    std::string base;
    std::map<std::pair<VertexId, LatticePoint>, AbelLabel> label;
    AbelLabel div_z, div_w;  // sum over zig-zags of -q * alpha and p * alpha
    bool closed = true;      // every edge inside the window satisfied
    std::vector<std::string> problems;
};

// d(b) - d(w) = alpha + beta over the two zig-zags through {b, w}; d(base white at (0,0)) = 0.
AbelMap discrete_abel(const TorusGraph& g, int window, const std::string& base_white = "");
// div z^i w^j as a label
AbelLabel monomial_divisor(const AbelMap& m, long i, long j);

// Samples of Log(C) with z on a grid of log-modulus times phase.
struct AmoebaPoint {
    double x, y;
    bool is_real;
    double residual;
};

struct AmoebaOptions {
    int grid = 200;
    double xmin = -4, xmax = 4, ymin = -4, ymax = 4;
};

std::vector<AmoebaPoint> amoeba_sample(const LaurentPoly<double>& P, const AmoebaOptions& opt = {});
void write_amoeba_csv(std::ostream& out, const std::vector<AmoebaPoint>& pts);
void write_amoeba_svg(std::ostream& out, const std::vector<AmoebaPoint>& pts, const std::vector<std::pair<double, double>>& marks,
                      const AmoebaOptions& opt);

// Max number of Log-preimages seen on a coarse grid; a Harnack curve never exceeds 2.
struct HarnackDiagnostic {
    int max_preimages = 0;
    int cells = 0;
    bool consistent() const { return max_preimages <= 2; }
};
HarnackDiagnostic harnack_diagnostic(const LaurentPoly<double>& P, int grid = 24, double radius = 3.0);

// Point reflection test: every sample has a mirror image within tol.
bool point_symmetric(const std::vector<AmoebaPoint>& pts, double tol);
// Whether (x, y) lies in the convex hull of the samples.
bool inside_hull(const std::vector<AmoebaPoint>& pts, double x, double y);

}  // namespace td
