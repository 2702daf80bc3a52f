#include "torusdimer/scalar.hpp"

#include <cctype>
#include <regex>

namespace td {

namespace {
const std::regex rational_re(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
const std::regex float_re(R"(^[+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?$)");
}

bool looks_rational(const std::string& text) { return std::regex_match(text, rational_re); }

Rational parse_rational(const std::string& text)
{
    if (!looks_rational(text)) throw std::invalid_argument("not a rational: '" + text + "'");
    std::string t = text[0] == '+' ? text.substr(1) : text;
    Rational r;
    if (r.set_str(t, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

double parse_double(const std::string& text)
{
    if (looks_rational(text)) return parse_rational(text).get_d();
    if (!std::regex_match(text, float_re)) throw std::invalid_argument("not a number: '" + text + "'");
    return std::stod(text);
}

std::optional<Rational> exact_sqrt(const Rational& x)
{
    if (sgn(x) < 0) return std::nullopt;
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn = sqrt(n), rd = sqrt(d);
    return Rational(rn, rd);
}

std::string format_double(double x)
{
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace td
