#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

namespace td {

using Rational = mpq_class;
using Complex = std::complex<double>;

struct ModeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "p/q", "p" or (when allow_float) a decimal literal. Throws on garbage.
Rational parse_rational(const std::string& text);
bool looks_rational(const std::string& text);
double parse_double(const std::string& text);

std::optional<Rational> exact_sqrt(const Rational& x);

std::string format_double(double x);  // 12 significant digits

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x, double = 0.0) { return sgn(x) == 0; }
    static double to_double(const Rational& x) { return x.get_d(); }
    static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
    static Rational from_int(long v) { return Rational(v); }
    static std::optional<Rational> sqrt(const Rational& x) { return exact_sqrt(x); }
    static std::string format(const Rational& x) { return x.get_str(); }
    static bool is_negative(const Rational& x) { return sgn(x) < 0; }
    static bool is_positive(const Rational& x) { return sgn(x) > 0; }
    static Rational abs(const Rational& x) { return ::abs(x); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double x, double tol = 0.0) { return std::abs(x) <= tol; }
    static double to_double(double x) { return x; }
    static Complex to_complex(double x) { return {x, 0.0}; }
    static double from_int(long v) { return static_cast<double>(v); }
    static std::optional<double> sqrt(double x)
    {
        if (x < 0) return std::nullopt;
        return std::sqrt(x);
    }
    static std::string format(double x) { return format_double(x); }
    static bool is_negative(double x) { return x < 0; }
    static bool is_positive(double x) { return x > 0; }
    static double abs(double x) { return std::abs(x); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x, double tol = 0.0) { return std::abs(x) <= tol; }
    static double to_double(const Complex& x) { return x.real(); }
    static Complex to_complex(const Complex& x) { return x; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static std::optional<Complex> sqrt(const Complex& x) { return std::sqrt(x); }
    static std::string format(const Complex& x)
    {
        if (x.imag() == 0.0) return format_double(x.real());
        return "(" + format_double(x.real()) + (x.imag() < 0 ? "-" : "+") +
               format_double(std::abs(x.imag())) + "i)";
    }
    static bool is_negative(const Complex& x) { return x.imag() == 0.0 && x.real() < 0; }
    static bool is_positive(const Complex& x) { return x.imag() == 0.0 && x.real() > 0; }
    static double abs(const Complex& x) { return std::abs(x); }
};

template <class S>
S parse_scalar(const std::string& text)
{
    if constexpr (std::is_same_v<S, Rational>)
        return parse_rational(text);
    else
        return S(parse_double(text));
}

// Cast between scalar kinds; only widening (exact -> numeric) is offered.
template <class To, class From>
To scalar_cast(const From& x)
{
    if constexpr (std::is_same_v<To, From>)
        return x;
    else if constexpr (std::is_same_v<To, double>)
        return ScalarTraits<From>::to_double(x);
    else if constexpr (std::is_same_v<To, Complex>)
        return ScalarTraits<From>::to_complex(x);
    else
        static_assert(sizeof(To) == 0, "no narrowing scalar_cast");
}

template <class S>
S ipow(const S& base, long e)
{
    S acc = ScalarTraits<S>::from_int(1);
    S b = base;
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (inv) return ScalarTraits<S>::from_int(1) / acc;
    return acc;
}

}  // namespace td
