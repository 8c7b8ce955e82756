#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"

namespace ghzw {

// Binary matrix with t rows and n <= 32 columns. Column c of a row is bit
// (n-1-c), so comparing row keys numerically is comparing rows left to right.
struct TermMatrix {
    std::size_t cols = 0;
    std::vector<std::uint32_t> rows;
    std::vector<int> sizes;  // optional group size per column; empty if unknown

    std::size_t row_count() const noexcept { return rows.size(); }

    bool bit(std::size_t r, std::size_t c) const { return (rows[r] >> (cols - 1 - c)) & 1U; }

    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint32_t m = std::uint32_t{1} << (cols - 1 - c);
        rows[r] = v ? (rows[r] | m) : (rows[r] & ~m);
    }

    std::size_t weight(std::size_t c) const {
        std::size_t w = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) w += bit(r, c);
        return w;
    }

    std::vector<bool> column(std::size_t c) const {
        std::vector<bool> v(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) v[r] = bit(r, c);
        return v;
    }

    std::string row_string(std::size_t r) const {
        std::string s(cols, '0');
        for (std::size_t c = 0; c < cols; ++c)
            if (bit(r, c)) s[c] = '1';
        return s;
    }

    static TermMatrix from_strings(const std::vector<std::string>& rows, std::vector<int> sizes = {}) {
        TermMatrix m;
        m.cols = rows.empty() ? 0 : rows.front().size();
        if (m.cols > 32) throw ResourceError("more than 32 columns");
        for (const auto& s : rows) {
            if (s.size() != m.cols) throw ContractError("ragged bit rows");
            std::uint32_t key = 0;
            for (char ch : s) {
                if (ch != '0' && ch != '1') throw ContractError("bit rows use only 0 and 1");
                key = key << 1U | static_cast<std::uint32_t>(ch == '1');
            }
            m.rows.push_back(key);
        }
        m.sizes = std::move(sizes);
        return m;
    }
};

struct CanonicalLimits {
    std::size_t max_cols = 10;
    std::size_t max_rows = 24;
};

// Group element achieving a canonical form. Canonical column c is source
// column perm[c], complemented when flips[perm[c]] is set; canonical row r is
// source row row_order[r].
struct Certificate {
    std::vector<std::size_t> perm;
    std::vector<bool> flips;
    std::vector<std::size_t> row_order;
};

struct ColumnBlock {
    std::size_t p = 0;  // ones per column after p <= q normalization
    std::size_t q = 0;
    std::size_t count = 0;

    friend bool operator==(const ColumnBlock&, const ColumnBlock&) = default;
};

struct CanonicalForm {
    TermMatrix matrix;  // canonical rows ascending; sizes follow canonical columns when respected
    bool respects_sizes = false;
    Certificate certificate;

    // Equality of forms is equality of the orbit representative.
    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.matrix.cols == b.matrix.cols && a.matrix.rows == b.matrix.rows &&
               a.respects_sizes == b.respects_sizes && (!a.respects_sizes || a.matrix.sizes == b.matrix.sizes);
    }
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
        return std::tie(a.matrix.cols, a.matrix.rows, a.matrix.sizes) <
               std::tie(b.matrix.cols, b.matrix.rows, b.matrix.sizes);
    }
};

namespace detail {

// Orbit minimization. Only arrangements whose column keys come out sorted are
// visited: the set of such arrangements depends only on the orbit, so the
// minimum over it is still an orbit invariant, and it avoids the full n!.
inline CanonicalForm minimize_orbit(const TermMatrix& m, bool respect_sizes, bool allow_flips,
                                    const CanonicalLimits& limits) {
    const std::size_t n = m.cols;
    const std::size_t t = m.rows.size();
    if (n > limits.max_cols) {
        throw ResourceError("canonical form over " + std::to_string(n) + " columns exceeds cap " +
                            std::to_string(limits.max_cols));
    }
    if (t > limits.max_rows) {
        throw ResourceError("canonical form over " + std::to_string(t) + " rows exceeds cap " +
                            std::to_string(limits.max_rows));
    }
    if (respect_sizes && m.sizes.size() != n) throw ContractError("column sizes missing");

    // Column keys: (size if respected, min(w, t-w) or w).
    std::vector<std::pair<int, std::size_t>> key(n);
    std::vector<int> mode(n, 0);  // 0 keep, 1 flip, 2 try both
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t w = m.weight(c);
        std::size_t k = w;
        if (allow_flips) {
            k = std::min(w, t - w);
            if (2 * w > t) mode[c] = 1;
            if (2 * w == t) mode[c] = 2;
        }
        key[c] = {respect_sizes ? m.sizes[c] : 0, k};
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // [begin, end) in order
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && key[order[j]] == key[order[i]]) ++j;
        blocks.emplace_back(i, j);
        i = j;
    }

    std::vector<std::size_t> balanced;
    for (std::size_t c = 0; c < n; ++c)
        if (mode[c] == 2) balanced.push_back(c);
    if (balanced.size() > 20) throw ResourceError("too many balanced columns");

    std::vector<std::uint32_t> best;
    Certificate best_cert;
    std::vector<std::uint32_t> work(t);
    std::vector<std::size_t> idx(t);
    std::vector<std::size_t> perm = order;

    // Per source column, the bit each row contributes after flips.
    std::vector<bool> flips(n, false);
    auto evaluate = [&]() {
        for (std::size_t r = 0; r < t; ++r) {
            std::uint32_t key_r = 0;
            for (std::size_t c = 0; c < n; ++c) {
                const std::size_t src = perm[c];
                const bool b = m.bit(r, src) != flips[src];
                key_r = key_r << 1U | static_cast<std::uint32_t>(b);
            }
            work[r] = key_r;
        }
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return work[a] != work[b] ? work[a] < work[b] : a < b;
        });
        std::vector<std::uint32_t> sorted(t);
        for (std::size_t r = 0; r < t; ++r) sorted[r] = work[idx[r]];
        if (best.empty() || sorted < best) {
            best = std::move(sorted);
            best_cert = {perm, flips, idx};
        }
    };

    const std::size_t flip_masks = std::size_t{1} << balanced.size();
    auto over_flips = [&]() {
        for (std::size_t c = 0; c < n; ++c) flips[c] = mode[c] == 1;
        for (std::size_t fm = 0; fm < flip_masks; ++fm) {
            for (std::size_t b = 0; b < balanced.size(); ++b) flips[balanced[b]] = (fm >> b) & 1U;
            evaluate();
        }
    };

    // Odometer over the permutations of each block.
    for (auto& [b, e] : blocks) std::sort(perm.begin() + b, perm.begin() + e);
    if (t == 0) {
        best_cert = {perm, flips, {}};
    } else {
        for (;;) {
            over_flips();
            std::size_t bi = blocks.size();
            bool advanced = false;
            while (bi > 0) {
                --bi;
                auto [b, e] = blocks[bi];
                if (std::next_permutation(perm.begin() + b, perm.begin() + e)) {
                    advanced = true;
                    break;
                }
                // next_permutation wrapped the block back to sorted order.
            }
            if (!advanced) break;
        }
    }

    CanonicalForm form;
    form.matrix.cols = n;
    form.matrix.rows = std::move(best);
    form.respects_sizes = respect_sizes;
    if (respect_sizes) {
        form.matrix.sizes.resize(n);
        for (std::size_t c = 0; c < n; ++c) form.matrix.sizes[c] = m.sizes[best_cert.perm[c]];
    }
    form.certificate = std::move(best_cert);
    return form;
}

}  // namespace detail

// Minimum of the row-sorted matrix over column permutations (within equal
// sizes when respect_sizes), per-column complements and row reordering.
// Columns heavier than t/2 are always complemented; balanced ones try both.
inline CanonicalForm canonicalize_ghz(const TermMatrix& m, bool respect_sizes = false,
                                      const CanonicalLimits& limits = {}) {
    return detail::minimize_orbit(m, respect_sizes, true, limits);
}

// Same without complements: 0 and W are not exchangeable.
inline CanonicalForm canonicalize_w_layer(const TermMatrix& m, bool respect_sizes = false,
                                          const CanonicalLimits& limits = {}) {
    return detail::minimize_orbit(m, respect_sizes, false, limits);
}

// Applies a certificate to a matrix, giving the canonical rows (unsorted rows
// are reordered by row_order). Used to replay and audit canonical forms.
inline TermMatrix apply_certificate(const TermMatrix& m, const Certificate& cert) {
    TermMatrix out;
    out.cols = m.cols;
    out.rows.resize(m.rows.size());
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        std::uint32_t key = 0;
        for (std::size_t c = 0; c < m.cols; ++c) {
            const std::size_t src = cert.perm[c];
            const bool b = m.bit(cert.row_order[r], src) != static_cast<bool>(cert.flips[src]);
            key = key << 1U | static_cast<std::uint32_t>(b);
        }
        out.rows[r] = key;
    }
    if (!m.sizes.empty()) {
        out.sizes.resize(m.cols);
        for (std::size_t c = 0; c < m.cols; ++c) out.sizes[c] = m.sizes[cert.perm[c]];
    }
    return out;
}

// Columns grouped by weight class p = min(w, t-w); sum of counts is n.
inline std::vector<ColumnBlock> decompose_blocks(const TermMatrix& m) {
    const std::size_t t = m.rows.size();
    std::vector<ColumnBlock> blocks;
    for (std::size_t c = 0; c < m.cols; ++c) {
        const std::size_t w = m.weight(c);
        const std::size_t p = std::min(w, t - w);
        auto it = std::find_if(blocks.begin(), blocks.end(), [&](const ColumnBlock& b) { return b.p == p; });
        if (it == blocks.end()) {
            blocks.push_back({p, t - p, 1});
        } else {
            ++it->count;
        }
    }
    std::sort(blocks.begin(), blocks.end(), [](const ColumnBlock& a, const ColumnBlock& b) { return a.p < b.p; });
    return blocks;
}

inline std::string blocks_to_string(const std::vector<ColumnBlock>& blocks) {
    std::string s = "blocks:";
    for (const auto& b : blocks) {
        s += " (" + std::to_string(b.p) + "," + std::to_string(b.q) + ")x" + std::to_string(b.count);
    }
    return s;
}

}  // namespace ghzw
