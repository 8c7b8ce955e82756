#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/exact_linalg.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

// One qubit per group: |0..0> -> |0>, |1..1> or |W> -> |1>. Bit i of a basis
// mask is qubit i (group i).
struct CorrespondingState {
    std::size_t qubits = 0;
    std::vector<std::pair<std::uint64_t, GaussianRational>> terms;

    std::string bits(std::uint64_t mask) const {
        std::string s(qubits, '0');
        for (std::size_t i = 0; i < qubits; ++i)
            if (mask >> i & 1U) s[i] = '1';
        return s;
    }
};

inline constexpr std::size_t kMaxCorrespondingQubits = 63;

inline CorrespondingState concentrate(const SymbolicState& state) {
    if (state.group_count() > kMaxCorrespondingQubits) throw ResourceError("too many groups to concentrate");
    CorrespondingState out;
    out.qubits = state.group_count();
    out.terms.reserve(state.term_count());
    for (const auto& t : state.terms()) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < t.symbols.size(); ++i)
            if (t.symbols[i] != Symbol::zero) mask |= std::uint64_t{1} << i;
        out.terms.emplace_back(mask, t.coeff);
    }
    return out;
}

// Exact rank of the coefficient matrix of the cut (subset | complement), which
// equals the rank of the reduced density operator on the subset.
inline std::size_t exact_cut_rank(const CorrespondingState& cs, std::uint64_t subset) {
    std::map<std::uint64_t, std::size_t> rows;
    std::map<std::uint64_t, std::size_t> cols;
    for (const auto& [mask, c] : cs.terms) {
        if (c.is_zero()) continue;
        rows.try_emplace(mask & subset, rows.size());
        cols.try_emplace(mask & ~subset, cols.size());
    }
    if (rows.empty()) return 0;
    if (rows.size() == 1 || cols.size() == 1) return 1;
    ExactMatrix m(rows.size(), std::vector<GaussianRational>(cols.size()));
    for (const auto& [mask, c] : cs.terms) m[rows[mask & subset]][cols[mask & ~subset]] += c;
    return exact_rank(m);
}

namespace detail {

// Cheap exact screen: a rank-1 matrix with no zero rows or columns has full
// support, so fewer nonzero cells than rows*cols already proves rank >= 2.
inline bool cut_is_product(const CorrespondingState& cs, std::uint64_t subset) {
    std::map<std::uint64_t, int> rows;
    std::map<std::uint64_t, int> cols;
    std::size_t cells = 0;
    for (const auto& [mask, c] : cs.terms) {
        if (c.is_zero()) continue;
        rows[mask & subset] = 0;
        cols[mask & ~subset] = 0;
        ++cells;
    }
    if (rows.size() <= 1 || cols.size() <= 1) return true;
    if (cells != rows.size() * cols.size()) return false;
    return exact_cut_rank(cs, subset) <= 1;
}

// Nonempty proper subsets of n qubits, one per cut, in subset-size-then-lex
// order; at size n/2 only subsets containing qubit 0 are kept. Calls f until
// it returns false.
template <class F>
void for_each_cut(std::size_t n, F&& f) {
    if (n < 2) return;
    for (std::size_t k = 1; 2 * k <= n; ++k) {
        // Lexicographic k-combinations of {0..n-1}.
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            const bool half = 2 * k == n;
            if (!half || idx[0] == 0) {
                std::uint64_t mask = 0;
                for (auto i : idx) mask |= std::uint64_t{1} << i;
                if (!f(mask)) return;
            }
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
}

}  // namespace detail

struct EntanglementVerdict {
    bool fully_entangled = false;
    // Groups on one side of the first separable cut, when not entangled.
    std::optional<std::vector<std::size_t>> witness;
    std::size_t cuts_checked = 0;
};

inline constexpr std::size_t kDefaultMaxGroups = 20;

// Exact full-entanglement test through the corresponding state: every one of
// the 2^(n-1)-1 cuts must have local rank > 1.
//
// A single group has no cuts between groups; it is entangled unless its only
// symbol is |0..0> or |1..1>, which are product states.
inline EntanglementVerdict is_fully_entangled(const SymbolicState& state, std::size_t max_groups = kDefaultMaxGroups) {
    const std::size_t n = state.group_count();
    if (n > max_groups) {
        throw ResourceError("entanglement check over " + std::to_string(n) + " groups exceeds cap " +
                            std::to_string(max_groups));
    }
    EntanglementVerdict verdict;
    if (n == 1) {
        const auto col = state.column(0);
        const bool constant = std::all_of(col.begin(), col.end(), [&](Symbol s) { return s == col.front(); });
        verdict.fully_entangled = !constant || col.front() == Symbol::w;
        if (!verdict.fully_entangled) verdict.witness = std::vector<std::size_t>{0};
        return verdict;
    }
    const CorrespondingState cs = concentrate(state);
    verdict.fully_entangled = true;
    detail::for_each_cut(n, [&](std::uint64_t subset) {
        ++verdict.cuts_checked;
        if (detail::cut_is_product(cs, subset)) {
            verdict.fully_entangled = false;
            std::vector<std::size_t> groups;
            for (std::size_t i = 0; i < n; ++i)
                if (subset >> i & 1U) groups.push_back(i);
            verdict.witness = std::move(groups);
            return false;
        }
        return true;
    });
    return verdict;
}

struct SupportVerdict {
    bool possible = false;
    std::optional<std::size_t> constant_position;  // first group whose column is constant
};

// Support-only test: full entanglement is achievable for generic coefficients
// iff no group column is constant.
inline SupportVerdict could_be_fully_entangled(const SymbolicState& state) {
    for (std::size_t g = 0; g < state.group_count(); ++g) {
        bool has_zero = false;
        bool has_excited = false;
        for (const auto& t : state.terms()) {
            (t.symbols[g] == Symbol::zero ? has_zero : has_excited) = true;
        }
        if (!(has_zero && has_excited)) return {false, g};
    }
    return {true, std::nullopt};
}

struct CoefficientAssignment {
    std::vector<GaussianRational> coefficients;  // in term order
    SymbolicState state;
    std::size_t draws = 0;
};

// Rejection sampling over small positive rationals. Only finitely many values
// of any one coefficient make some cut separable, so a draw almost never fails.
inline CoefficientAssignment find_entangling_coefficients(const SymbolicState& state, std::uint64_t seed,
                                                          std::size_t budget = 1000,
                                                          std::size_t max_groups = kDefaultMaxGroups) {
    if (!could_be_fully_entangled(state).possible) {
        throw ContractError("support has a constant group column; no coefficients entangle it");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 16);
    std::uniform_int_distribution<int> den(1, 16);
    for (std::size_t draw = 1; draw <= budget; ++draw) {
        std::vector<GaussianRational> coeffs;
        coeffs.reserve(state.term_count());
        for (std::size_t i = 0; i < state.term_count(); ++i) {
            coeffs.emplace_back(Rational(num(rng), den(rng)));
        }
        SymbolicState candidate = with_coefficients(state, coeffs);
        if (is_fully_entangled(candidate, max_groups).fully_entangled) {
            return {std::move(coeffs), std::move(candidate), draw};
        }
    }
    throw ResourceError("no entangling coefficients found within " + std::to_string(budget) + " draws");
}

}  // namespace ghzw
