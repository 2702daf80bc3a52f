#include "torusdimer/laurent.hpp"

#include <cctype>

namespace td {

namespace {

template <class S>
S parse_coef(const std::string& s);

template <>
Rational parse_coef<Rational>(const std::string& s)
{
    return parse_rational(s);
}

template <>
double parse_coef<double>(const std::string& s)
{
    return parse_double(s);
}

Exponent parse_monomial(const std::string& m, const std::string& whole)
{
    Exponent e;
    std::size_t pos = 0;
    while (pos < m.size()) {
        char v = m[pos];
        if (v != 'z' && v != 'w') throw std::invalid_argument("bad monomial in '" + whole + "'");
        ++pos;
        int k = 1;
        if (pos < m.size() && m[pos] == '^') {
            ++pos;
            std::size_t end = pos;
            if (end < m.size() && (m[end] == '-' || m[end] == '+')) ++end;
            while (end < m.size() && std::isdigit(static_cast<unsigned char>(m[end]))) ++end;
            if (end == pos) throw std::invalid_argument("bad exponent in '" + whole + "'");
            k = std::stoi(m.substr(pos, end - pos));
            pos = end;
        }
        (v == 'z' ? e.i : e.j) += k;
        if (pos < m.size()) {
            if (m[pos] != '*') throw std::invalid_argument("bad monomial in '" + whole + "'");
            ++pos;
        }
    }
    return e;
}

template <class S>
LaurentPoly<S> parse_impl(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    if (s == "0") return {};

    // split at +/- that are not part of an exponent or a float exponent
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t k = 0; k < s.size(); ++k) {
        char ch = s[k];
        bool sep = (ch == '+' || ch == '-') && k > 0 && s[k - 1] != '^' && s[k - 1] != 'e' && s[k - 1] != 'E';
        if (sep) {
            parts.push_back(cur);
            cur.clear();
        }
        cur += ch;
    }
    parts.push_back(cur);

    LaurentPoly<S> p;
    for (std::string t : parts) {
        bool neg = false;
        if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
            neg = t[0] == '-';
            t = t.substr(1);
        }
        if (t.empty()) throw std::invalid_argument("dangling sign in '" + text + "'");
        std::size_t vpos = t.find_first_of("zw");
        S c = ScalarTraits<S>::from_int(1);
        Exponent e;
        if (vpos == std::string::npos) {
            c = parse_coef<S>(t);
        } else {
            std::string coef = t.substr(0, vpos);
            if (!coef.empty()) {
                if (coef.back() != '*') throw std::invalid_argument("missing '*' in '" + text + "'");
                coef.pop_back();
                c = parse_coef<S>(coef);
            }
            e = parse_monomial(t.substr(vpos), text);
        }
        p.add_term(e, neg ? S(-c) : c);
    }
    return p;
}

}  // namespace

template <>
LaurentPoly<Rational> parse_laurent<Rational>(const std::string& text)
{
    return parse_impl<Rational>(text);
}

template <>
LaurentPoly<double> parse_laurent<double>(const std::string& text)
{
    return parse_impl<double>(text);
}

}  // namespace td
