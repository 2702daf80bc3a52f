#pragma once

#include "torusdimer/laurent.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace td {

template <class S>
class LaurentMatrix {
public:
    using Poly = LaurentPoly<S>;

    LaurentMatrix() = default;
    LaurentMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    LaurentMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
        : rows_(row_labels.size()), cols_(col_labels.size()), data_(rows_ * cols_),
          row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels))
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }
    void set_labels(std::vector<std::string> r, std::vector<std::string> c)
    {
        row_labels_ = std::move(r);
        col_labels_ = std::move(c);
    }
    std::size_t row_index(const std::string& label) const { return find(row_labels_, label); }
    std::size_t col_index(const std::string& label) const { return find(col_labels_, label); }

    LaurentMatrix transpose() const
    {
        LaurentMatrix t(col_labels_, row_labels_);
        if (t.rows_ != cols_) t = LaurentMatrix(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    static LaurentMatrix identity(std::size_t n)
    {
        LaurentMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = Poly(1);
        return m;
    }

    friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        LaurentMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    static std::size_t find(const std::vector<std::string>& v, const std::string& x)
    {
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] == x) return k;
        throw std::out_of_range("no matrix label '" + x + "'");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> data_;
    std::vector<std::string> row_labels_, col_labels_;
};

struct DeterminantOptions {
    std::size_t max_dimension = 16;
    std::size_t laplace_limit = 8;  // memoized cofactor expansion up to this size, Bareiss above
    double tol = 0.0;               // numeric pruning after each Bareiss step
};

namespace detail {

template <class S>
LaurentPoly<S> det_laplace(const LaurentMatrix<S>& m)
{
    const std::size_t n = m.rows();
    if (n == 0) return LaurentPoly<S>(1);
    // dp over column subsets: det of rows [0, popcount) restricted to the subset
    std::vector<LaurentPoly<S>> dp(std::size_t(1) << n);
    std::vector<char> known(dp.size(), 0);
    dp[0] = LaurentPoly<S>(1);
    known[0] = 1;
    for (std::size_t mask = 1; mask < dp.size(); ++mask) {
        std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
        LaurentPoly<S> acc;
        int above = 0;  // set columns to the right of j, giving the cofactor sign
        for (std::size_t jj = n; jj-- > 0;) {
            if (!(mask >> jj & 1)) continue;
            const auto& e = m(k - 1, jj);
            if (!e.is_zero() && !dp[mask ^ (std::size_t(1) << jj)].is_zero()) {
                auto t = e * dp[mask ^ (std::size_t(1) << jj)];
                if (above & 1)
                    acc -= t;
                else
                    acc += t;
            }
            ++above;
        }
        dp[mask] = std::move(acc);
    }
    return dp.back();
}

template <class S>
LaurentPoly<S> det_bareiss(LaurentMatrix<S> a, double tol)
{
    const std::size_t n = a.rows();
    if (n == 0) return LaurentPoly<S>(1);
    LaurentPoly<S> prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k).is_zero()) ++piv;
            if (piv == n) return {};
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                auto num = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                if (!ScalarTraits<S>::exact) num = num.pruned(tol);
                a(i, j) = lp_exact_divide(num, prev, tol);
            }
        prev = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) a(i, k) = {};
    }
    auto d = a(n - 1, n - 1);
    return negate ? -d : d;
}

}  // namespace detail

template <class S>
LaurentPoly<S> lm_determinant(const LaurentMatrix<S>& m, const DeterminantOptions& opt = {})
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() > opt.max_dimension)
        throw std::length_error("matrix dimension " + std::to_string(m.rows()) + " exceeds bound " +
                                std::to_string(opt.max_dimension));
    if (m.rows() <= opt.laplace_limit) return detail::det_laplace(m);
    return detail::det_bareiss(m, opt.tol);
}

template <class S>
LaurentMatrix<S> minor_matrix(const LaurentMatrix<S>& m, std::size_t skip_r, std::size_t skip_c)
{
    LaurentMatrix<S> r(m.rows() - 1, m.cols() - 1);
    for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
        if (i == skip_r) continue;
        for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
            if (j == skip_c) continue;
            r(ri, rj++) = m(i, j);
        }
        ++ri;
    }
    return r;
}

// Transposed cofactor matrix: rows are labelled by m's columns, columns by m's rows.
template <class S>
LaurentMatrix<S> lm_adjugate(const LaurentMatrix<S>& m, const DeterminantOptions& opt = {})
{
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    LaurentMatrix<S> adj(n, n);
    if (!m.row_labels().empty() && !m.col_labels().empty()) adj.set_labels(m.col_labels(), m.row_labels());
    if (n == 1) {
        adj(0, 0) = LaurentPoly<S>(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto d = lm_determinant(minor_matrix(m, i, j), opt);
            adj(j, i) = ((i + j) & 1) ? -d : d;
        }
    return adj;
}

// Result of eliminating one variable; `cleared_p`, `cleared_q` are the monomials divided out of
// the inputs before building the Sylvester matrix.
template <class S>
struct Resultant {
    LaurentPoly<S> value;
    Exponent cleared_p, cleared_q;
};

template <class S>
Resultant<S> resultant_eliminate(const LaurentPoly<S>& p, const LaurentPoly<S>& q, Var var, const DeterminantOptions& opt = {})
{
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of the zero polynomial");
    if (!p.depends_on(var) && !q.depends_on(var)) throw std::invalid_argument("both inputs are constant in the eliminated variable");
    Resultant<S> out;
    out.cleared_p = p.min_exponent();
    out.cleared_q = q.min_exponent();
    auto pc = p.shifted(-out.cleared_p), qc = q.shifted(-out.cleared_q);

    // coefficient lists in var, highest degree first, entries are polynomials in the other variable
    auto split = [var](const LaurentPoly<S>& f) {
        int deg = var == Var::z ? f.max_exponent().i : f.max_exponent().j;
        std::vector<LaurentPoly<S>> c(deg + 1);
        for (const auto& [e, k] : f.terms()) {
            int d = var == Var::z ? e.i : e.j;
            Exponent rest = var == Var::z ? Exponent{0, e.j} : Exponent{e.i, 0};
            c[deg - d].add_term(rest, k);
        }
        return c;
    };
    auto a = split(pc), b = split(qc);
    const std::size_t m = a.size() - 1, n = b.size() - 1, size = m + n;
    if (size == 0) {
        out.value = LaurentPoly<S>(1);
        return out;
    }
    LaurentMatrix<S> syl(size, size);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k <= m; ++k) syl(r, r + k) = a[k];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t k = 0; k <= n; ++k) syl(n + r, r + k) = b[k];
    DeterminantOptions o = opt;
    o.max_dimension = std::max(o.max_dimension, size);
    out.value = lm_determinant(syl, o);
    return out;
}

}  // namespace td
