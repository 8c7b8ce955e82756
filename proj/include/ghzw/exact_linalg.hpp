#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/gaussian_rational.hpp"

namespace ghzw {

// Element of Z[i]. Only what fraction-free elimination needs.
struct GaussianInteger {
    BigInt re = 0;
    BigInt im = 0;

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
        return {a.re - b.re, a.im - b.im};
    }

    // Division known to be exact (Bareiss guarantees it).
    GaussianInteger exact_div(const GaussianInteger& d) const {
        const BigInt n = d.re * d.re + d.im * d.im;
        const BigInt re_num = re * d.re + im * d.im;
        const BigInt im_num = im * d.re - re * d.im;
        if (re_num % n != 0 || im_num % n != 0) throw Error("internal: inexact Gaussian integer division");
        return {re_num / n, im_num / n};
    }
};

using ExactMatrix = std::vector<std::vector<GaussianRational>>;

// Rank over Q(i) by Bareiss fraction-free elimination. Rows are first scaled
// by the lcm of their denominators so every entry lives in Z[i].
inline std::size_t exact_rank(const ExactMatrix& matrix) {
    if (matrix.empty()) return 0;
    const std::size_t cols = matrix.front().size();
    std::vector<std::vector<GaussianInteger>> m;
    m.reserve(matrix.size());
    for (const auto& row : matrix) {
        if (row.size() != cols) throw ContractError("ragged matrix");
        BigInt l = 1;
        for (const auto& z : row) {
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(z.re()));
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(z.im()));
        }
        std::vector<GaussianInteger> irow;
        irow.reserve(cols);
        bool nonzero = false;
        for (const auto& z : row) {
            GaussianInteger g{boost::multiprecision::numerator(z.re()) * (l / boost::multiprecision::denominator(z.re())),
                              boost::multiprecision::numerator(z.im()) * (l / boost::multiprecision::denominator(z.im()))};
            nonzero = nonzero || !g.is_zero();
            irow.push_back(std::move(g));
        }
        if (nonzero) m.push_back(std::move(irow));
    }
    const std::size_t rows = m.size();
    GaussianInteger prev{1, 0};
    std::size_t k = 0;
    for (std::size_t col = 0; col < cols && k < rows; ++col) {
        std::size_t pivot = k;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[k]);
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                m[i][j] = (m[k][col] * m[i][j] - m[i][col] * m[k][j]).exact_div(prev);
            }
            m[i][col] = GaussianInteger{};
        }
        prev = m[k][col];
        ++k;
    }
    return k;
}

// Incrementally built affine system  sum_j a_j x_j + c = 0  over Q(i), kept
// in reduced row echelon form. Used by greedy elimination: candidate
// equations are offered one at a time and accepted only when consistent.
class AffineSystem {
public:
    explicit AffineSystem(std::size_t unknowns) : unknowns_(unknowns) {}

    enum class Offer { independent, redundant, inconsistent };

    // Offers the equation; independent ones are kept.
    Offer offer(std::vector<GaussianRational> coeffs, GaussianRational constant) {
        if (coeffs.size() != unknowns_) throw ContractError("equation width mismatch");
        reduce(coeffs, constant);
        std::optional<std::size_t> lead;
        for (std::size_t j = 0; j < unknowns_; ++j) {
            if (!coeffs[j].is_zero()) {
                lead = j;
                break;
            }
        }
        if (!lead) return constant.is_zero() ? Offer::redundant : Offer::inconsistent;
        const GaussianRational inv = coeffs[*lead].inverse();
        for (auto& c : coeffs) c *= inv;
        constant *= inv;
        // Keep full RREF: clear the new pivot column from existing rows.
        for (auto& row : rows_) {
            const GaussianRational f = row.coeffs[*lead];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < unknowns_; ++j) row.coeffs[j] -= f * coeffs[j];
            row.constant -= f * constant;
        }
        rows_.push_back({*lead, std::move(coeffs), std::move(constant)});
        return Offer::independent;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

    bool is_pivot(std::size_t j) const {
        for (const auto& r : rows_)
            if (r.pivot == j) return true;
        return false;
    }

    // Solution with every non-pivot unknown set to zero.
    std::vector<GaussianRational> solve() const {
        std::vector<GaussianRational> x(unknowns_);
        for (const auto& r : rows_) x[r.pivot] = -r.constant;
        return x;
    }

private:
    struct Row {
        std::size_t pivot;
        std::vector<GaussianRational> coeffs;
        GaussianRational constant;
    };

    void reduce(std::vector<GaussianRational>& coeffs, GaussianRational& constant) const {
        for (const auto& r : rows_) {
            const GaussianRational f = coeffs[r.pivot];
            if (f.is_zero()) continue;
            for (std::size_t j = 0; j < unknowns_; ++j) coeffs[j] -= f * r.coeffs[j];
            constant -= f * r.constant;
        }
    }

    std::size_t unknowns_;
    std::vector<Row> rows_;
};

// Integer matrix helpers for multiplicative (exponent) linear algebra.
using IntMatrix = std::vector<std::vector<long long>>;

// Returns X with A X = I (A is r x m, X is m x r) when A has an integer right
// inverse, i.e. when the gcd of its r x r minors is 1. Column Euclid reduction
// brings A to [L | 0] with L lower triangular; the inverse exists iff every
// diagonal entry of L is +-1.
inline std::optional<IntMatrix> integer_right_inverse(const IntMatrix& a) {
    const std::size_t r = a.size();
    if (r == 0) return IntMatrix{};
    const std::size_t m = a.front().size();
    if (r > m) return std::nullopt;
    // Work on B = A V, tracking V (m x m), starting from identity.
    IntMatrix b = a;
    IntMatrix v(m, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < m; ++i) v[i][i] = 1;
    auto col_axpy = [&](std::size_t dst, std::size_t src, long long f) {  // col dst -= f * col src
        for (std::size_t i = 0; i < r; ++i) b[i][dst] -= f * b[i][src];
        for (std::size_t i = 0; i < m; ++i) v[i][dst] -= f * v[i][src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (std::size_t i = 0; i < r; ++i) std::swap(b[i][x], b[i][y]);
        for (std::size_t i = 0; i < m; ++i) std::swap(v[i][x], v[i][y]);
    };
    for (std::size_t i = 0; i < r; ++i) {
        // Euclid across columns i..m-1 of row i until only column i is nonzero.
        for (;;) {
            std::size_t best = m;
            for (std::size_t j = i; j < m; ++j) {
                if (b[i][j] != 0 && (best == m || std::llabs(b[i][j]) < std::llabs(b[i][best]))) best = j;
            }
            if (best == m) return std::nullopt;  // row dependent on previous rows
            if (best != i) col_swap(i, best);
            bool done = true;
            for (std::size_t j = i + 1; j < m; ++j) {
                if (b[i][j] != 0) {
                    col_axpy(j, i, b[i][j] / b[i][i]);
                    if (b[i][j] != 0) done = false;
                }
            }
            if (done) break;
        }
        if (b[i][i] != 1 && b[i][i] != -1) return std::nullopt;
    }
    // Solve L Y = I with L = B[:, :r] lower triangular, unit-modulus diagonal.
    IntMatrix y(r, std::vector<long long>(r, 0));
    for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t i = 0; i < r; ++i) {
            long long s = (i == c) ? 1 : 0;
            for (std::size_t k = 0; k < i; ++k) s -= b[i][k] * y[k][c];
            y[i][c] = s * b[i][i];  // b[i][i] is its own inverse
        }
    }
    // X = V [Y; 0]
    IntMatrix x(m, std::vector<long long>(r, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < r; ++c)
            for (std::size_t k = 0; k < r; ++k) x[i][c] += v[i][k] * y[k][c];
    return x;
}

}  // namespace ghzw
