#include "torusdimer/spectral.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>
#include <unordered_map>

namespace td {

namespace {

// coefficients of P(z, .) as a polynomial in w, lowest power first
std::vector<Complex> w_coefficients(const LaurentPoly<double>& P, Complex z, int jlo, int jhi)
{
    std::vector<Complex> c(jhi - jlo + 1);
    for (const auto& [e, k] : P.terms()) c[e.j - jlo] += k * ipow(z, e.i);
    return c;
}

}  // namespace

std::vector<AmoebaPoint> amoeba_sample(const LaurentPoly<double>& P, const AmoebaOptions& opt)
{
    if (!P.depends_on(Var::w)) throw std::invalid_argument("amoeba sampling needs P to depend on w");
    if (opt.grid < 2) throw std::invalid_argument("grid must be at least 2");
    const int jlo = P.min_exponent().j, jhi = P.max_exponent().j;
    std::vector<AmoebaPoint> out;
    for (int a = 0; a < opt.grid; ++a) {
        double x = opt.xmin + (opt.xmax - opt.xmin) * a / (opt.grid - 1);
        for (int b = 0; b < opt.grid; ++b) {
            double theta = 2 * std::numbers::pi * b / opt.grid;
            Complex z = std::polar(std::exp(x), theta);
            bool z_real = b == 0 || 2 * b == opt.grid;
            if (z_real) z = Complex(z.real(), 0.0);
            auto c = w_coefficients(P, z, jlo, jhi);
            for (Complex w : poly_roots(c)) {
                if (std::abs(w) == 0) continue;
                double r = std::abs(P(z, w));
                double y = std::log(std::abs(w));
                if (!(r < 1e-8) || y < opt.ymin || y > opt.ymax) continue;
                bool real = z_real && std::abs(w.imag()) <= 1e-9 * std::abs(w);
                out.push_back({x, y, real, r});
            }
        }
    }
    return out;
}

void write_amoeba_csv(std::ostream& out, const std::vector<AmoebaPoint>& pts)
{
    out << "x,y,is_real\n";
    for (const auto& p : pts) out << format_double(p.x) << ',' << format_double(p.y) << ',' << (p.is_real ? 1 : 0) << '\n';
}

void write_amoeba_svg(std::ostream& out, const std::vector<AmoebaPoint>& pts, const std::vector<std::pair<double, double>>& marks,
                      const AmoebaOptions& opt)
{
    const double size = 600;
    auto sx = [&](double x) { return (x - opt.xmin) / (opt.xmax - opt.xmin) * size; };
    auto sy = [&](double y) { return size - (y - opt.ymin) / (opt.ymax - opt.ymin) * size; };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& p : pts)
        out << "<circle cx=\"" << format_double(sx(p.x)) << "\" cy=\"" << format_double(sy(p.y)) << "\" r=\"0.6\" fill=\""
            << (p.is_real ? "black" : "#7799cc") << "\"/>\n";
    for (const auto& [x, y] : marks)
        out << "<circle cx=\"" << format_double(sx(x)) << "\" cy=\"" << format_double(sy(y))
            << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    out << "</svg>\n";
}

HarnackDiagnostic harnack_diagnostic(const LaurentPoly<double>& P, int grid, double radius)
{
    const int jlo = P.min_exponent().j, jhi = P.max_exponent().j;
    const int phases = 720;
    HarnackDiagnostic h;
    for (int a = 0; a < grid; ++a) {
        double x = -radius + 2 * radius * (a + 0.5) / grid;
        // log|w| of every root at every phase of z
        std::vector<std::vector<double>> ys(phases);
        for (int b = 0; b < phases; ++b) {
            Complex z = std::polar(std::exp(x), 2 * std::numbers::pi * (b + 0.5) / phases);
            for (Complex w : poly_roots(w_coefficients(P, z, jlo, jhi)))
                if (std::abs(w) > 0) ys[b].push_back(std::log(std::abs(w)));
        }
        for (int c = 0; c < grid; ++c) {
            double y = -radius + 2 * radius * (c + 0.5) / grid;
            // preimages of (x, y) = crossings of the level y as the phase goes round
            auto below = [&](int b) { return std::count_if(ys[b].begin(), ys[b].end(), [&](double v) { return v < y; }); };
            int crossings = 0;
            for (int b = 0; b < phases; ++b) crossings += static_cast<int>(std::abs(below((b + 1) % phases) - below(b)));
            h.max_preimages = std::max(h.max_preimages, crossings);
            ++h.cells;
        }
    }
    return h;
}

bool point_symmetric(const std::vector<AmoebaPoint>& pts, double tol)
{
    auto key = [tol](double x, double y) {
        return (static_cast<long long>(std::floor(x / tol)) * 1000003LL) ^ static_cast<long long>(std::floor(y / tol));
    };
    std::unordered_multimap<long long, std::size_t> cells;
    for (std::size_t k = 0; k < pts.size(); ++k) cells.emplace(key(pts[k].x, pts[k].y), k);
    for (const auto& p : pts) {
        bool found = false;
        for (int dx = -1; dx <= 1 && !found; ++dx)
            for (int dy = -1; dy <= 1 && !found; ++dy) {
                auto [lo, hi] = cells.equal_range(key(-p.x + dx * tol, -p.y + dy * tol));
                for (auto it = lo; it != hi && !found; ++it)
                    found = std::abs(pts[it->second].x + p.x) <= tol && std::abs(pts[it->second].y + p.y) <= tol;
            }
        if (!found) return false;
    }
    return true;
}

bool inside_hull(const std::vector<AmoebaPoint>& pts, double x, double y)
{
    std::vector<std::pair<double, double>> v;
    for (const auto& p : pts) v.emplace_back(p.x, p.y);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() < 3) return false;
    auto cross = [](auto o, auto a, auto b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> h(2 * v.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], v[i]) <= 0) --k;
        h[k++] = v[i];
    }
    for (std::size_t i = v.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], v[i]) <= 0) --k;
        h[k++] = v[i];
    }
    h.resize(k - 1);
    std::pair<double, double> q{x, y};
    for (std::size_t i = 0; i < h.size(); ++i)
        if (cross(h[i], h[(i + 1) % h.size()], q) < 0) return false;
    return true;
}

}  // namespace td
