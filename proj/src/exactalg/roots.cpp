#include "torusdimer/roots.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace td {

Complex poly_eval(const std::vector<Complex>& c, const Complex& x)
{
    Complex acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

std::vector<Complex> poly_roots(std::vector<Complex> c)
{
    double scale = 0;
    for (const auto& a : c) scale = std::max(scale, std::abs(a));
    while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    if (c.size() <= 1) return {};
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) comp(0, k) = -c[n - 1 - k] / c[n];
    for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> d(n);
    for (int k = 0; k < n; ++k) d[k] = c[k + 1] * double(k + 1);
    std::vector<Complex> roots;
    for (int k = 0; k < n; ++k) {
        Complex x = es.eigenvalues()[k];
        for (int it = 0; it < 8; ++it) {
            Complex fp = poly_eval(d, x);
            if (std::abs(fp) < 1e-300) break;
            Complex step = poly_eval(c, x) / fp;
            Complex nx = x - step;
            if (std::abs(poly_eval(c, nx)) > std::abs(poly_eval(c, x))) break;
            x = nx;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
        }
        roots.push_back(x);
    }
    return roots;
}

Rational rational_reconstruct(double x, long max_den)
{
    // convergents h/k of the continued fraction of x
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        mpz_class ai(a);
        mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = r - a;
        if (std::abs(frac) < 1e-15) break;
        r = 1.0 / frac;
    }
    Rational q(h1, k1);
    q.canonicalize();
    return q;
}

}  // namespace td
