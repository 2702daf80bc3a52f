#pragma once

#include "torusdimer/scalar.hpp"

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace td {

struct Exponent {
    int i = 0;  // power of z
    int j = 0;  // power of w
    auto operator<=>(const Exponent&) const = default;
    Exponent operator+(const Exponent& o) const { return {i + o.i, j + o.j}; }
    Exponent operator-(const Exponent& o) const { return {i - o.i, j - o.j}; }
    Exponent operator-() const { return {-i, -j}; }
};

enum class Var { z, w };

// Finite sum of c * z^i w^j with no stored zero coefficients. Mixing scalar
// kinds is a type error: LaurentPoly<Rational> and LaurentPoly<double> never meet.
template <class S>
class LaurentPoly {
public:
    using Scalar = S;
    using Terms = std::map<Exponent, S>;

    LaurentPoly() = default;
    LaurentPoly(const S& c) { add_term({0, 0}, c); }
    template <std::integral I>
    LaurentPoly(I c) : LaurentPoly(ScalarTraits<S>::from_int(static_cast<long>(c)))
    {
    }

    static LaurentPoly monomial(const S& c, int i, int j)
    {
        LaurentPoly p;
        p.add_term({i, j}, c);
        return p;
    }
    static LaurentPoly z(int e = 1) { return monomial(ScalarTraits<S>::from_int(1), e, 0); }
    static LaurentPoly w(int e = 1) { return monomial(ScalarTraits<S>::from_int(1), 0, e); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    S coeff(int i, int j) const
    {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? ScalarTraits<S>::from_int(0) : it->second;
    }

    void add_term(const Exponent& e, const S& c)
    {
        if (c == ScalarTraits<S>::from_int(0)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == ScalarTraits<S>::from_int(0)) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly& operator*=(const S& s)
    {
        if (s == ScalarTraits<S>::from_int(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a)
    {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend LaurentPoly operator*(LaurentPoly a, const S& s) { return a *= s; }
    friend LaurentPoly operator*(const S& s, LaurentPoly a) { return a *= s; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    Exponent min_exponent() const
    {
        Exponent m{0, 0};
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) m = e;
            m.i = std::min(m.i, e.i);
            m.j = std::min(m.j, e.j);
            first = false;
        }
        return m;
    }
    Exponent max_exponent() const
    {
        Exponent m{0, 0};
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first) m = e;
            m.i = std::max(m.i, e.i);
            m.j = std::max(m.j, e.j);
            first = false;
        }
        return m;
    }

    LaurentPoly shifted(const Exponent& by) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + by, c);
        return r;
    }

    // Evaluation at any scalar kind that S converts into (S itself, double, Complex).
    template <class T>
    T operator()(const T& zv, const T& wv) const
    {
        T acc{};
        for (const auto& [e, c] : terms_) acc += scalar_cast<T>(c) * ipow(zv, e.i) * ipow(wv, e.j);
        return acc;
    }

    // Drops coefficients with |c| <= tol (numeric cleanup after cancellation).
    LaurentPoly pruned(double tol) const
    {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            if (!ScalarTraits<S>::is_zero(c, tol)) r.terms_.emplace(e, c);
        return r;
    }

    bool depends_on(Var v) const
    {
        for (const auto& [e, c] : terms_)
            if ((v == Var::z ? e.i : e.j) != 0) return true;
        return false;
    }

private:
    Terms terms_;
};

template <class S>
LaurentPoly<S> lp_mul(const LaurentPoly<S>& p, const LaurentPoly<S>& q)
{
    return p * q;
}

template <class S>
LaurentPoly<S> lp_sigma(const LaurentPoly<S>& p)
{
    LaurentPoly<S> r;
    for (const auto& [e, c] : p.terms()) r.add_term(-e, c);
    return r;
}

// Substitutes z -> z^a w^b, w -> z^c w^d (monomial change of variables).
template <class S>
LaurentPoly<S> lp_monomial_substitute(const LaurentPoly<S>& p, int a, int b, int c, int d)
{
    LaurentPoly<S> r;
    for (const auto& [e, k] : p.terms()) r.add_term({a * e.i + c * e.j, b * e.i + d * e.j}, k);
    return r;
}

template <class To, class S>
LaurentPoly<To> lp_cast(const LaurentPoly<S>& p)
{
    LaurentPoly<To> r;
    for (const auto& [e, c] : p.terms()) r.add_term(e, scalar_cast<To>(c));
    return r;
}

template <class S>
bool lp_approx_equal(const LaurentPoly<S>& p, const LaurentPoly<S>& q, double tol)
{
    return (p - q).pruned(tol).is_zero();
}

struct DivisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact quotient p / q; throws DivisionError when q does not divide p.
template <class S>
LaurentPoly<S> lp_exact_divide(const LaurentPoly<S>& p, const LaurentPoly<S>& q, double tol = 0.0)
{
    if (q.is_zero()) throw DivisionError("division by zero polynomial");
    if (p.is_zero()) return {};
    const Exponent lo = p.min_exponent() - q.min_exponent();
    const Exponent hi = p.max_exponent() - q.max_exponent();
    const auto& [lq, cq] = *q.terms().rbegin();
    LaurentPoly<S> quo, rem = p;
    while (!rem.is_zero()) {
        const auto [lr, cr] = *rem.terms().rbegin();
        Exponent e = lr - lq;
        if (e.i < lo.i || e.j < lo.j || e.i > hi.i || e.j > hi.j) {
            if (!ScalarTraits<S>::exact && ScalarTraits<S>::is_zero(cr, tol)) {
                rem = rem.pruned(tol);
                continue;
            }
            throw DivisionError("polynomial does not divide");
        }
        auto t = LaurentPoly<S>::monomial(cr / cq, e.i, e.j);
        quo += t;
        rem -= t * q;
        if constexpr (!ScalarTraits<S>::exact) {
            // remove the cancelled leading term even if rounding left a residue
            LaurentPoly<S> cleaned;
            for (const auto& [ex, c] : rem.terms())
                if (!(ex == lr)) cleaned.add_term(ex, c);
            rem = cleaned;
        }
    }
    return quo;
}

// Orders integers 0, 1, -1, 2, -2, ... ; canonical term order is lexicographic on (i, j) under it.
inline bool canonical_int_less(int a, int b)
{
    int aa = std::abs(a), bb = std::abs(b);
    if (aa != bb) return aa < bb;
    return a > b;
}

inline bool canonical_exponent_less(const Exponent& a, const Exponent& b)
{
    if (a.i != b.i) return canonical_int_less(a.i, b.i);
    return canonical_int_less(a.j, b.j);
}

namespace detail {
inline std::string monomial_text(const Exponent& e)
{
    std::string s;
    auto var = [&](char v, int k) {
        if (k == 0) return;
        if (!s.empty()) s += '*';
        s += v;
        if (k != 1) s += "^" + std::to_string(k);
    };
    var('z', e.i);
    var('w', e.j);
    return s;
}
}  // namespace detail

template <class S>
std::string to_string(const LaurentPoly<S>& p)
{
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exponent, S>> ts(p.terms().begin(), p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return canonical_exponent_less(a.first, b.first); });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        bool neg = ScalarTraits<S>::is_negative(c);
        S mag = neg ? S(-c) : c;
        std::string mono = detail::monomial_text(e);
        std::string coef = ScalarTraits<S>::format(mag);
        std::string body;
        if (mono.empty())
            body = coef;
        else if (coef == "1")
            body = mono;
        else
            body = coef + "*" + mono;
        if (first)
            out += (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

// Parses the canonical text form (any term order, optional spaces).
template <class S>
LaurentPoly<S> parse_laurent(const std::string& text);

template <>
LaurentPoly<Rational> parse_laurent<Rational>(const std::string& text);
template <>
LaurentPoly<double> parse_laurent<double>(const std::string& text);

}  // namespace td
