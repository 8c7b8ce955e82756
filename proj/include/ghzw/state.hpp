#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/gaussian_rational.hpp"

namespace ghzw {

// Which rank-2 basis spans a group: {|0..0>, |1..1>} or {|0..0>, |W>}.
enum class BasisKind { ghz, w };

inline char to_char(BasisKind k) { return k == BasisKind::ghz ? 'G' : 'W'; }

// Per-group factor of a term. One is only legal in a GHZ group, W only in a
// W group. Declaration order is the lexicographic term order.
enum class Symbol : unsigned char { zero = 0, one = 1, w = 2 };

inline char to_char(Symbol s) {
    switch (s) {
        case Symbol::zero: return '0';
        case Symbol::one: return '1';
        case Symbol::w: return 'W';
    }
    return '?';
}

inline bool symbol_legal(Symbol s, BasisKind k) {
    if (s == Symbol::zero) return true;
    return k == BasisKind::ghz ? s == Symbol::one : s == Symbol::w;
}

// The "excited" symbol of a group kind: |1..1> for GHZ, |W> for W.
inline Symbol excited(BasisKind k) { return k == BasisKind::ghz ? Symbol::one : Symbol::w; }

struct GroupSpec {
    std::size_t index = 0;
    int size = 2;
    BasisKind kind = BasisKind::ghz;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

using SymbolVector = std::vector<Symbol>;

struct Term {
    SymbolVector symbols;
    GaussianRational coeff{1};

    friend bool operator==(const Term&, const Term&) = default;
};

// A GHZ-W-type state: groups of qubits, each spanned by a GHZ-type or W-type
// basis, and a weighted sum of products of per-group basis vectors.
//
// Construction validates structure (sizes, symbol legality, term shape). It
// does not merge duplicates; see normalize_terms.
class SymbolicState {
public:
    SymbolicState() = default;

    SymbolicState(std::vector<GroupSpec> groups, std::vector<Term> terms)
        : groups_(std::move(groups)), terms_(std::move(terms)) {
        validate();
    }

    // Convenience: groups given as (kind, size) pairs, indexed in order.
    static SymbolicState from_kinds(const std::vector<std::pair<BasisKind, int>>& kinds,
                                    std::vector<Term> terms) {
        std::vector<GroupSpec> groups;
        groups.reserve(kinds.size());
        for (std::size_t i = 0; i < kinds.size(); ++i) groups.push_back({i, kinds[i].second, kinds[i].first});
        return SymbolicState(std::move(groups), std::move(terms));
    }

    const std::vector<GroupSpec>& groups() const noexcept { return groups_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t group_count() const noexcept { return groups_.size(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    int total_qubits() const {
        return std::accumulate(groups_.begin(), groups_.end(), 0,
                               [](int acc, const GroupSpec& g) { return acc + g.size; });
    }

    std::size_t count_kind(BasisKind k) const {
        return static_cast<std::size_t>(
            std::count_if(groups_.begin(), groups_.end(), [k](const GroupSpec& g) { return g.kind == k; }));
    }
    bool all_kind(BasisKind k) const { return count_kind(k) == groups_.size(); }

    // Symbols of one group across all terms, in term order.
    std::vector<Symbol> column(std::size_t group) const {
        std::vector<Symbol> col;
        col.reserve(terms_.size());
        for (const auto& t : terms_) col.push_back(t.symbols.at(group));
        return col;
    }

    friend bool operator==(const SymbolicState&, const SymbolicState&) = default;

private:
    void validate() const {
        if (terms_.empty()) throw DomainError("state has no terms");
        for (std::size_t i = 0; i < groups_.size(); ++i) {
            if (groups_[i].index != i) throw ContractError("group indices must be 0..n-1 without gaps");
            if (groups_[i].size < 2) {
                throw DomainError("group " + std::to_string(i) + " has size " +
                                  std::to_string(groups_[i].size) + " < 2");
            }
        }
        for (const auto& t : terms_) {
            if (t.symbols.size() != groups_.size()) throw ContractError("term length differs from group count");
            for (std::size_t i = 0; i < groups_.size(); ++i) {
                if (!symbol_legal(t.symbols[i], groups_[i].kind)) {
                    throw ContractError(std::string("symbol '") + to_char(t.symbols[i]) +
                                        "' is illegal for a " + to_char(groups_[i].kind) + " group");
                }
            }
        }
    }

    std::vector<GroupSpec> groups_;
    std::vector<Term> terms_;
};

// Merges identical symbol vectors, drops zero coefficients and sorts terms
// lexicographically. Throws DomainError when every term cancels.
inline SymbolicState normalize_terms(const SymbolicState& state) {
    std::map<SymbolVector, GaussianRational> merged;
    for (const auto& t : state.terms()) merged[t.symbols] += t.coeff;
    std::vector<Term> terms;
    terms.reserve(merged.size());
    for (auto& [symbols, coeff] : merged) {
        if (!coeff.is_zero()) terms.push_back({symbols, coeff});
    }
    if (terms.empty()) throw DomainError("null state: all terms cancel");
    return SymbolicState(state.groups(), std::move(terms));
}

inline bool is_normalized(const SymbolicState& state) {
    const auto& terms = state.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff.is_zero()) return false;
        if (i > 0 && !(terms[i - 1].symbols < terms[i].symbols)) return false;
    }
    return true;
}

// Same support, every coefficient replaced.
inline SymbolicState with_coefficients(const SymbolicState& state, const std::vector<GaussianRational>& coeffs) {
    if (coeffs.size() != state.term_count()) throw ContractError("coefficient count differs from term count");
    std::vector<Term> terms = state.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i].coeff = coeffs[i];
    return SymbolicState(state.groups(), std::move(terms));
}

// Multiplies every coefficient by a common nonzero factor.
inline SymbolicState scaled(const SymbolicState& state, const GaussianRational& factor) {
    if (factor.is_zero()) throw ContractError("global scale must be nonzero");
    std::vector<Term> terms = state.terms();
    for (auto& t : terms) t.coeff *= factor;
    return SymbolicState(state.groups(), std::move(terms));
}

inline std::string symbols_to_string(const SymbolVector& symbols) {
    std::string s;
    s.reserve(symbols.size());
    for (auto sym : symbols) s.push_back(to_char(sym));
    return s;
}

}  // namespace ghzw
