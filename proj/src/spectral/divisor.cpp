#include "torusdimer/spectral.hpp"

#include <sstream>

namespace td {

namespace {

Complex eval(const LaurentPoly<Complex>& p, Complex z, Complex w) { return p(z, w); }

// partial derivatives of a Laurent polynomial
std::pair<Complex, Complex> gradient(const LaurentPoly<Complex>& p, Complex z, Complex w)
{
    Complex dz{}, dw{};
    for (const auto& [e, c] : p.terms()) {
        Complex m = c * ipow(z, e.i) * ipow(w, e.j);
        dz += m * double(e.i) / z;
        dw += m * double(e.j) / w;
    }
    return {dz, dw};
}

double scale_of(const LaurentPoly<Complex>& p, Complex z, Complex w)
{
    double s = 0;
    for (const auto& [e, c] : p.terms()) s = std::max(s, std::abs(c * ipow(z, e.i) * ipow(w, e.j)));
    return std::max(s, 1e-300);
}

// largest relative value among P and the entries
double residual(const LaurentPoly<Complex>& P, const std::vector<LaurentPoly<Complex>>& es, Complex z, Complex w)
{
    double r = std::abs(eval(P, z, w)) / scale_of(P, z, w);
    for (const auto& e : es) r = std::max(r, std::abs(eval(e, z, w)) / scale_of(e, z, w));
    return r;
}

double absolute_residual(const LaurentPoly<Complex>& P, const std::vector<LaurentPoly<Complex>>& es, Complex z, Complex w)
{
    double r = std::abs(eval(P, z, w));
    for (const auto& e : es) r = std::max(r, std::abs(eval(e, z, w)));
    return r;
}

}  // namespace

namespace detail {

Candidates common_zeros(const LaurentPoly<Complex>& P, const std::vector<LaurentPoly<Complex>>& entries,
                        const std::vector<Complex>& z_roots, double tol)
{
    Candidates out;
    const Exponent lo = P.min_exponent(), hi = P.max_exponent();
    std::vector<Complex> zs;
    for (Complex z : z_roots) {
        if (std::abs(z) < 1e-12 || std::abs(z) > 1e12) continue;
        bool dup = false;
        for (Complex y : zs) dup = dup || std::abs(y - z) <= 1e-7 * std::max(1.0, std::abs(z));
        if (!dup) zs.push_back(z);
    }
    for (Complex z0 : zs) {
        std::vector<Complex> c(hi.j - lo.j + 1);
        for (const auto& [e, k] : P.terms()) c[e.j - lo.j] += k * ipow(z0, e.i);
        for (Complex w0 : poly_roots(c)) {
            if (std::abs(w0) < 1e-12) continue;
            if (residual(P, entries, z0, w0) > 1e-5) continue;
            // Newton on P and the entry giving the best-conditioned pair
            Complex z = z0, w = w0;
            for (int it = 0; it < 30; ++it) {
                auto [pz, pw] = gradient(P, z, w);
                const LaurentPoly<Complex>* best = nullptr;
                Complex bz, bw;
                double bdet = 0;
                for (const auto& e : entries) {
                    auto [ez, ew] = gradient(e, z, w);
                    double d = std::abs(pz * ew - pw * ez);
                    if (d > bdet) {
                        bdet = d;
                        best = &e;
                        bz = ez;
                        bw = ew;
                    }
                }
                if (!best || bdet < 1e-14) {
                    out.note = "singular intersection near z = " + ScalarTraits<Complex>::format(z) + " (condition estimate " +
                               format_double(bdet > 0 ? 1.0 / bdet : 1e300) + ")";
                    break;
                }
                Complex f1 = eval(P, z, w), f2 = eval(*best, z, w);
                Complex det = pz * bw - pw * bz;
                Complex dz = (f1 * bw - pw * f2) / det, dw = (pz * f2 - f1 * bz) / det;
                z -= dz;
                w -= dw;
                if (std::abs(dz) + std::abs(dw) < 1e-15 * (std::abs(z) + std::abs(w))) break;
            }
            if (absolute_residual(P, entries, z, w) <= tol * std::max(1.0, scale_of(P, z, w))) out.pts.emplace_back(z, w);
        }
    }
    return out;
}

Divisor cluster_divisor(const std::vector<std::pair<Complex, Complex>>& pts, const LaurentPoly<Complex>& P,
                        const std::vector<LaurentPoly<Complex>>& entries)
{
    Divisor d;
    for (const auto& [z, w] : pts) {
        bool merged = false;
        for (auto& p : d.points)
            if (std::abs(p.z - z) <= 1e-7 * std::max(1.0, std::abs(z)) && std::abs(p.w - w) <= 1e-7 * std::max(1.0, std::abs(w)))
                merged = true;
        if (merged) continue;
        DivisorPoint p;
        p.z = z;
        p.w = w;
        p.residual = absolute_residual(P, entries, z, w);
        d.points.push_back(p);
    }
    std::sort(d.points.begin(), d.points.end(), [](const DivisorPoint& a, const DivisorPoint& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return d;
}

}  // namespace detail

Divisor sigma(const Divisor& d)
{
    Divisor s = d;
    for (auto& p : s.points) {
        p.z = 1.0 / p.z;
        p.w = 1.0 / p.w;
        if (p.zq) p.zq = Rational(1 / *p.zq);
        if (p.wq) p.wq = Rational(1 / *p.wq);
    }
    return s;
}

bool divisors_equal(const Divisor& a, const Divisor& b, double tol)
{
    if (a.degree() != b.degree()) return false;
    std::vector<char> used(b.points.size(), 0);
    for (const auto& p : a.points) {
        bool found = false;
        for (std::size_t k = 0; k < b.points.size() && !found; ++k) {
            if (used[k] || b.points[k].multiplicity != p.multiplicity) continue;
            const auto& q = b.points[k];
            bool same = (p.zq && q.zq) ? (*p.zq == *q.zq && *p.wq == *q.wq)
                                       : std::abs(p.z - q.z) <= tol * std::max(1.0, std::abs(p.z)) &&
                                             std::abs(p.w - q.w) <= tol * std::max(1.0, std::abs(p.w));
            if (same) {
                used[k] = 1;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::string to_string(const DivisorPoint& p)
{
    std::ostringstream s;
    if (p.zq)
        s << "(" << p.zq->get_str() << ", " << p.wq->get_str() << ")";
    else
        s << "(" << ScalarTraits<Complex>::format(p.z) << ", " << ScalarTraits<Complex>::format(p.w) << ")";
    if (p.multiplicity != 1) s << " x" << p.multiplicity;
    return s.str();
}

}  // namespace td
