#include "doctest.h"

#include "torusdimer/laurent.hpp"
#include "torusdimer/laurent_matrix.hpp"
#include "torusdimer/newton_polygon.hpp"
#include "torusdimer/roots.hpp"

#include <random>

using namespace td;

namespace doctest {
template <>
struct StringMaker<NewtonPolygon> {
    static String convert(const NewtonPolygon& n) { return to_string(n).c_str(); }
};
template <>
struct StringMaker<LaurentPoly<Rational>> {
    static String convert(const LaurentPoly<Rational>& p) { return to_string(p).c_str(); }
};
}  // namespace doctest
using LP = LaurentPoly<Rational>;

namespace {

Rational q(const char* s) { return parse_rational(s); }

LP random_poly(std::mt19937& rng, int terms, int span)
{
    std::uniform_int_distribution<int> ex(-span, span), num(-9, 9), den(1, 7);
    LP p;
    for (int k = 0; k < terms; ++k) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        p.add_term({ex(rng), ex(rng)}, c);
    }
    return p;
}

}  // namespace

TEST_CASE("laurent products")
{
    auto z = LP::z(), w = LP::w();
    CHECK(lp_mul(z + LP::z(-1), w + LP::w(-1)) == z * w + z * LP::w(-1) + LP::z(-1) * w + LP::z(-1) * LP::w(-1));
    CHECK(lp_mul(LP(1) + z, LP(1) - z) == LP(1) - LP::z(2));
    auto p = parse_laurent<Rational>("2 - 4/13*w - 4/13*w^-1 - 36/65*z - 36/65*z^-1");
    CHECK(lp_mul(p, LP(1)) == p);
    CHECK((p - p).is_zero());
    CHECK((p * Rational(0)).is_zero());
}

TEST_CASE("sigma")
{
    CHECK(lp_sigma(LP::monomial(1, 2, -1)) == LP::monomial(1, -2, 1));
    auto p = parse_laurent<Rational>("2 - 4/13*w - 4/13*w^-1 - 36/65*z - 36/65*z^-1");
    CHECK(lp_sigma(p) == p);
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        auto a = random_poly(rng, 4, 3), b = random_poly(rng, 4, 3);
        CHECK(lp_sigma(lp_sigma(a)) == a);
        CHECK(lp_sigma(a * b) == lp_sigma(a) * lp_sigma(b));
    }
}

TEST_CASE("canonical text")
{
    auto p = LP(2) - q("4/13") * (LP::w() + LP::w(-1)) - q("36/65") * (LP::z() + LP::z(-1));
    CHECK(to_string(p) == "2 - 4/13*w - 4/13*w^-1 - 36/65*z - 36/65*z^-1");
    CHECK(to_string(LP()) == "0");
    CHECK(to_string(LP::monomial(-1, 2, -1)) == "-z^2*w^-1");
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto a = random_poly(rng, 5, 3);
        CHECK(parse_laurent<Rational>(to_string(a)) == a);
    }
    CHECK_THROWS(parse_laurent<Rational>("2 + x"));
    CHECK_THROWS(parse_laurent<Rational>("2 +"));
}

TEST_CASE("rational arithmetic is exact")
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> d(-1000000, 1000000);
    for (int t = 0; t < 200; ++t) {
        Rational a(d(rng), std::abs(d(rng)) + 1), c(d(rng), std::abs(d(rng)) + 1);
        a.canonicalize();
        c.canonicalize();
        CHECK((a + c) - a == c);
    }
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("0.5"));
    CHECK(*exact_sqrt(q("16/25")) == q("4/5"));
    CHECK(!exact_sqrt(q("2")));
}

TEST_CASE("determinant and adjugate")
{
    auto z = LP::z(), w = LP::w();
    LaurentMatrix<Rational> m(2, 2);
    m(0, 0) = z;
    m(0, 1) = w;
    m(1, 0) = LP(3);
    m(1, 1) = LP::w(-1);
    CHECK(lm_determinant(m) == z * LP::w(-1) - LP(3) * w);
    CHECK(lm_determinant(LaurentMatrix<Rational>::identity(5)) == LP(1));

    LaurentMatrix<Rational> one(1, 1);
    one(0, 0) = z + w;
    CHECK(lm_adjugate(one)(0, 0) == LP(1));

    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) {
        LaurentMatrix<Rational> a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = random_poly(rng, 2, 1);
        auto d = lm_determinant(a);
        auto prod = a * lm_adjugate(a);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(prod(i, j) == (i == j ? d : LP()));
    }
    CHECK_THROWS_AS(lm_determinant(LaurentMatrix<Rational>(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(lm_determinant(LaurentMatrix<Rational>::identity(17)), std::length_error);
}

TEST_CASE("bareiss agrees with cofactor expansion")
{
    std::mt19937 rng(17);
    std::bernoulli_distribution sparse(0.4);
    for (int t = 0; t < 3; ++t) {
        LaurentMatrix<Rational> a(9, 9);
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j)
                if (i == j || sparse(rng)) a(i, j) = random_poly(rng, 2, 1);
        DeterminantOptions laplace;
        laplace.laplace_limit = 9;
        CHECK(lm_determinant(a) == lm_determinant(a, laplace));
    }
    CHECK(lp_exact_divide(LP::z(2) - LP(1), LP::z() - LP(1)) == LP::z() + LP(1));
    CHECK_THROWS_AS(lp_exact_divide(LP::z(2) + LP(1), LP::z() - LP(1)), DivisionError);
}

TEST_CASE("newton polygons")
{
    auto p = parse_laurent<Rational>("2 - 4/13*w - 4/13*w^-1 - 36/65*z - 36/65*z^-1");
    auto n = newton_polygon(p);
    CHECK(n.vertices == std::vector<LatticePoint>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    CHECK(n.interior_points() == 1);
    CHECK(n.boundary_points() == 4);
    auto mono = newton_polygon(LP::monomial(1, 3, 1));
    CHECK(mono.vertices == std::vector<LatticePoint>{{3, 1}});
    CHECK(mono.interior_points() == 0);
    auto tri = newton_polygon(LP(1) + LP::z() + LP::w());
    CHECK(tri.vertices == std::vector<LatticePoint>{{1, 0}, {0, 1}, {0, 0}});
    CHECK(tri.interior_points() == 0);
    auto seg = newton_polygon(LP(1) + LP::z(3));
    CHECK(seg.vertices.size() == 2);
    CHECK(seg.boundary_points() == 4);
    CHECK_THROWS(newton_polygon(LP()));

    // Minkowski sums against the hull of all pairwise support sums
    std::mt19937 rng(23);
    for (int t = 0; t < 40; ++t) {
        auto a = random_poly(rng, 4, 2), b = random_poly(rng, 3, 2);
        if (a.is_zero() || b.is_zero()) continue;
        std::vector<LatticePoint> sums;
        for (const auto& [ea, ca] : a.terms())
            for (const auto& [eb, cb] : b.terms()) sums.push_back({ea.i + eb.i, ea.j + eb.j});
        auto oracle = convex_hull(sums);
        CHECK(newton_polygon(a * b) == oracle);
        CHECK(minkowski_sum(newton_polygon(a), newton_polygon(b)) == oracle);
    }
}

TEST_CASE("resultants")
{
    auto a = q("3/7"), b = q("-2");
    auto r = resultant_eliminate(LP::w() - LP(a), LP::w() - LP(b), Var::w);
    CHECK(r.value == LP(a - b));
    auto p = LP::w(2) + LP::z() * LP::w() - LP(1);
    CHECK(resultant_eliminate(p, p, Var::w).value.is_zero());
    CHECK_THROWS(resultant_eliminate(LP::z(), LP::z(2), Var::w));
    // w^-1 factors are cleared before the Sylvester matrix is formed
    auto s = resultant_eliminate(LP::w(-1) * (LP::w() - LP::z()), LP::w() + LP::z(), Var::w);
    CHECK(s.cleared_p == Exponent{0, -1});
    CHECK(s.value == LP::z() * Rational(2));
}

TEST_CASE("numeric roots and reconstruction")
{
    // (x - 2)(x + 1/3)(x^2 + 1)
    std::vector<Complex> c{Complex(-2.0 / 3), Complex(-5.0 / 3), Complex(1.0 / 3), Complex(-5.0 / 3), Complex(1.0)};
    auto roots = poly_roots(c);
    REQUIRE(roots.size() == 4);
    for (const auto& x : roots) CHECK(std::abs(poly_eval(c, x)) < 1e-12);
    CHECK(rational_reconstruct(13.0 / 20) == q("13/20"));
    CHECK(rational_reconstruct(-52.0 / 25) == q("-52/25"));
    CHECK(rational_reconstruct(0.0) == Rational(0));
}
