#pragma once

#include "torusdimer/scalar.hpp"

#include <vector>

namespace td {

// Roots of sum_k c[k] x^k (lowest degree first) from the companion matrix eigenvalues,
// each polished by a few Newton steps. Leading zeros are trimmed; x = 0 roots are kept.
std::vector<Complex> poly_roots(std::vector<Complex> c);

Complex poly_eval(const std::vector<Complex>& c, const Complex& x);

// Best rational approximation with denominator <= max_den by continued fractions.
Rational rational_reconstruct(double x, long max_den = 1000000);

}  // namespace td
