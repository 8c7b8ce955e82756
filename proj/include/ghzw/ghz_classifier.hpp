#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ghzw/canonical.hpp"
#include "ghzw/error.hpp"
#include "ghzw/monomial_scaling.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

// Rows are terms, columns are groups; a bit is set where the term has |1..1>.
inline TermMatrix support_matrix(const SymbolicState& state) {
    if (!state.all_kind(BasisKind::ghz)) throw ContractError("support_matrix needs an all-GHZ state");
    if (state.group_count() > 32) throw ResourceError("more than 32 groups");
    TermMatrix m;
    m.cols = state.group_count();
    for (const auto& g : state.groups()) m.sizes.push_back(g.size);
    for (const auto& t : state.terms()) {
        std::uint32_t key = 0;
        for (auto s : t.symbols) key = key << 1U | static_cast<std::uint32_t>(s == Symbol::one);
        m.rows.push_back(key);
    }
    return m;
}

// Unit-coefficient GHZ state with one term per distinct row.
inline SymbolicState matrix_to_state(const TermMatrix& m, const std::vector<int>& sizes) {
    if (sizes.size() != m.cols) throw ContractError("size count differs from column count");
    std::vector<GroupSpec> groups;
    for (std::size_t c = 0; c < m.cols; ++c) groups.push_back({c, sizes[c], BasisKind::ghz});
    std::set<std::uint32_t> distinct(m.rows.begin(), m.rows.end());
    std::vector<Term> terms;
    for (auto key : distinct) {
        Term t;
        for (std::size_t c = 0; c < m.cols; ++c) t.symbols.push_back((key >> (m.cols - 1 - c)) & 1U ? Symbol::one : Symbol::zero);
        terms.push_back(std::move(t));
    }
    return normalize_terms(SymbolicState(std::move(groups), std::move(terms)));
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Least q >= 0 with binomial(p+q, p) >= n: enough rows for n distinct
// weight-p columns.
inline int q_inf(int p, int n) {
    if (p < 1 || n < 1) throw DomainError("q_inf needs p >= 1 and n >= 1");
    int q = 0;
    while (binomial(p + q, p) < n) ++q;
    return q;
}

struct GhzClass {
    CanonicalForm form;
    std::vector<int> row_sums;  // nonzero row weights, descending

    std::string partition_string() const {
        int total = 0;
        for (int v : row_sums) total += v;
        std::string s = std::to_string(total) + "=";
        for (std::size_t i = 0; i < row_sums.size(); ++i) {
            if (i) s += '+';
            s += std::to_string(row_sums[i]);
        }
        if (row_sums.empty()) s += '0';
        return s;
    }
};

struct EnumerationLimits {
    CanonicalLimits canonical;
    std::size_t max_candidates = 2'000'000;
};

namespace detail {

inline bool simplest_columns(const TermMatrix& m) {
    const std::size_t t = m.rows.size();
    std::vector<std::vector<bool>> cols;
    for (std::size_t c = 0; c < m.cols; ++c) {
        const std::size_t w = m.weight(c);
        if (w == 0 || w == t) return false;
        cols.push_back(m.column(c));
    }
    for (std::size_t a = 0; a < cols.size(); ++a) {
        for (std::size_t b = a + 1; b < cols.size(); ++b) {
            bool equal = true;
            bool complement = true;
            for (std::size_t r = 0; r < t; ++r) {
                equal = equal && cols[a][r] == cols[b][r];
                complement = complement && cols[a][r] != cols[b][r];
            }
            if (equal || complement) return false;
        }
    }
    return true;
}

inline bool nonzero_rows_distinct(const TermMatrix& m) {
    std::set<std::uint32_t> seen;
    for (auto r : m.rows) {
        if (r == 0) continue;
        if (!seen.insert(r).second) return false;
    }
    return true;
}

// Collapses duplicate all-zero rows.
inline TermMatrix collapse_zero_rows(TermMatrix m) {
    bool zero_seen = false;
    std::vector<std::uint32_t> rows;
    for (auto r : m.rows) {
        if (r == 0) {
            if (zero_seen) continue;
            zero_seen = true;
        }
        rows.push_back(r);
    }
    m.rows = std::move(rows);
    return m;
}

}  // namespace detail

// Classes of matrices with t = p+q rows and n pairwise distinct columns of
// weight p, optionally with one extra all-zero row (the redundant |0..0> term
// of a block), kept when the support is in simplest form and fully entangled.
inline std::vector<GhzClass> enumerate_ghz_classes(int p, int q, int n, const EnumerationLimits& limits = {}) {
    if (p < 0 || q < 0 || n < 1) throw DomainError("enumerate_ghz_classes needs p, q >= 0 and n >= 1");
    const int t = p + q;
    if (t < 1) return {};
    if (static_cast<std::size_t>(t) + 1 > limits.canonical.max_rows) {
        throw ResourceError("t = " + std::to_string(t) + " exceeds row cap");
    }
    if (static_cast<std::size_t>(n) > limits.canonical.max_cols) {
        throw ResourceError("n = " + std::to_string(n) + " exceeds column cap");
    }
    const BigInt candidates = binomial(static_cast<int>(binomial(t, p)), n);
    if (candidates > limits.max_candidates) {
        throw ResourceError("enumeration needs " + candidates.str() + " candidates, cap is " +
                            std::to_string(limits.max_candidates));
    }

    // Weight-p columns as t-bit masks (bit r = row r).
    std::vector<std::uint32_t> colmasks;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << t); ++mask)
        if (__builtin_popcount(mask) == p) colmasks.push_back(mask);
    const std::size_t k = colmasks.size();
    if (static_cast<std::size_t>(n) > k) return {};

    std::map<std::vector<std::uint32_t>, GhzClass> found;
    std::vector<std::size_t> pick(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (;;) {
        TermMatrix base;
        base.cols = static_cast<std::size_t>(n);
        base.rows.assign(static_cast<std::size_t>(t), 0);
        for (std::size_t c = 0; c < pick.size(); ++c)
            for (int r = 0; r < t; ++r)
                if (colmasks[pick[c]] >> r & 1U) base.set(static_cast<std::size_t>(r), c, true);
        for (int zero_row = 0; zero_row < 2; ++zero_row) {
            TermMatrix m = base;
            if (zero_row) m.rows.push_back(0);
            m = detail::collapse_zero_rows(std::move(m));
            if (zero_row && m.rows.size() == base.rows.size()) continue;  // same as the variant without
            if (!detail::nonzero_rows_distinct(m) || !detail::simplest_columns(m)) continue;
            CanonicalForm form = canonicalize_ghz(m, false, limits.canonical);
            if (found.count(form.matrix.rows)) continue;
            GhzClass cls{form, {}};
            for (auto r : form.matrix.rows)
                if (r != 0) cls.row_sums.push_back(__builtin_popcount(r));
            std::sort(cls.row_sums.rbegin(), cls.row_sums.rend());
            found.emplace(form.matrix.rows, std::move(cls));
        }
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] == k - pick.size() + pos - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = pick[i - 1] + 1;
    }
    std::vector<GhzClass> out;
    for (auto& [key, cls] : found) out.push_back(std::move(cls));
    return out;
}

// Every distinct way to put the given sizes on the class's columns, up to the
// class's column automorphisms. Each result is the size-respecting canonical
// representative as a unit-coefficient state.
inline std::vector<SymbolicState> assign_sizes(const CanonicalForm& cls, std::vector<int> sizes,
                                               const CanonicalLimits& limits = {}) {
    if (sizes.size() != cls.matrix.cols) throw ContractError("size count differs from column count");
    for (int s : sizes)
        if (s < 2) throw DomainError("group sizes must be >= 2");
    std::sort(sizes.begin(), sizes.end());
    std::set<CanonicalForm> seen;
    std::vector<SymbolicState> out;
    do {
        TermMatrix m = cls.matrix;
        m.sizes = sizes;
        CanonicalForm form = canonicalize_ghz(m, true, limits);
        if (seen.insert(form).second) out.push_back(matrix_to_state(form.matrix, form.matrix.sizes));
    } while (std::next_permutation(sizes.begin(), sizes.end()));
    return out;
}

struct GhzNormalization {
    SymbolicState state;
    std::size_t residual = 0;  // essential coefficients left
    std::vector<GaussianRational> column_scalars;  // identity-like product per group
    GaussianRational global{1};
};

// Identity-like relative ILOs (one scalar per group) plus a global scalar set
// as many coefficients to 1 as the exponent lattice allows.
inline GhzNormalization normalize_coefficients_ghz(const SymbolicState& state) {
    if (!state.all_kind(BasisKind::ghz)) throw ContractError("normalize_coefficients_ghz needs an all-GHZ state");
    auto r = scale_to_unit_coefficients(normalize_terms(state));
    return {std::move(r.state), r.residual_terms.size(), std::move(r.group_scalars), std::move(r.global)};
}

}  // namespace ghzw
