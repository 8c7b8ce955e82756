#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

enum class MergeCriterion { ghz, w };

inline const char* to_string(MergeCriterion c) { return c == MergeCriterion::ghz ? "GHZ" : "W"; }

struct MergeStep {
    std::size_t i = 0;  // surviving group (lower index)
    std::size_t j = 0;  // absorbed group, index before removal
    MergeCriterion criterion = MergeCriterion::ghz;
    std::optional<GaussianRational> k;  // W criterion only
    bool complemented = false;          // GHZ criterion with column j complemented
};

struct MergeReport {
    std::vector<MergeStep> steps;
    SymbolicState final_state;
    // For each final group, the original qubit indices it holds, in order.
    std::vector<std::vector<int>> qubit_map;
};

inline bool ghz_mergeable(const SymbolicState& state, std::size_t i, std::size_t j) {
    const auto& groups = state.groups();
    if (i == j || i >= groups.size() || j >= groups.size()) throw ContractError("invalid group pair");
    if (groups[i].kind != BasisKind::ghz || groups[j].kind != BasisKind::ghz) {
        throw ContractError("ghz_mergeable needs two GHZ groups");
    }
    bool equal = true;
    bool complement = true;
    for (const auto& t : state.terms()) {
        const bool a = t.symbols[i] == Symbol::one;
        const bool b = t.symbols[j] == Symbol::one;
        equal = equal && a == b;
        complement = complement && a != b;
    }
    return equal || complement;
}

namespace detail {

using Residual = std::map<SymbolVector, GaussianRational>;

// Term list attached to the pair (si, sj), keyed by the remaining columns.
inline Residual residual(const SymbolicState& state, std::size_t i, std::size_t j, Symbol si, Symbol sj) {
    Residual r;
    for (const auto& t : state.terms()) {
        if (t.symbols[i] != si || t.symbols[j] != sj) continue;
        SymbolVector rest;
        for (std::size_t g = 0; g < t.symbols.size(); ++g)
            if (g != i && g != j) rest.push_back(t.symbols[g]);
        r[rest] += t.coeff;
    }
    return r;
}

}  // namespace detail

// Returns k with psi(0,W) = k psi(W,0) when the pair merges into one W group.
inline std::optional<GaussianRational> w_mergeable(const SymbolicState& state, std::size_t i, std::size_t j) {
    const auto& groups = state.groups();
    if (i == j || i >= groups.size() || j >= groups.size()) throw ContractError("invalid group pair");
    if (groups[i].kind != BasisKind::w || groups[j].kind != BasisKind::w) {
        throw ContractError("w_mergeable needs two W groups");
    }
    for (const auto& t : state.terms())
        if (t.symbols[i] == Symbol::w && t.symbols[j] == Symbol::w) return std::nullopt;
    const auto w0 = detail::residual(state, i, j, Symbol::w, Symbol::zero);
    const auto zw = detail::residual(state, i, j, Symbol::zero, Symbol::w);
    if (w0.empty() || zw.empty() || w0.size() != zw.size()) return std::nullopt;
    std::optional<GaussianRational> k;
    for (const auto& [rest, c] : w0) {
        auto it = zw.find(rest);
        if (it == zw.end()) return std::nullopt;
        const GaussianRational ratio = it->second / c;
        if (!k) {
            k = ratio;
        } else if (*k != ratio) {
            return std::nullopt;
        }
    }
    return k;
}

inline bool is_simplest(const SymbolicState& state) {
    const auto& groups = state.groups();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            if (groups[i].kind != groups[j].kind) continue;
            if (groups[i].kind == BasisKind::ghz ? ghz_mergeable(state, i, j) : w_mergeable(state, i, j).has_value()) {
                return false;
            }
        }
    }
    return true;
}

namespace detail {

// Merges group j into group i (i < j); group i grows to N_i + N_j.
inline SymbolicState merge_pair(const SymbolicState& state, MergeStep& step) {
    const std::size_t i = step.i;
    const std::size_t j = step.j;
    std::vector<GroupSpec> groups;
    for (std::size_t g = 0; g < state.group_count(); ++g) {
        if (g == j) continue;
        GroupSpec spec = state.groups()[g];
        if (g == i) spec.size += state.groups()[j].size;
        spec.index = groups.size();
        groups.push_back(spec);
    }
    std::vector<Term> terms;
    for (const auto& t : state.terms()) {
        Term out{{}, t.coeff};
        if (step.criterion == MergeCriterion::w) {
            // W_i 0_j terms are absorbed; the W-scale k on group i makes the
            // pair k(W_i 0_j + 0_i W_j) = k W_{ij}.
            if (t.symbols[i] == Symbol::w) continue;
        }
        for (std::size_t g = 0; g < t.symbols.size(); ++g) {
            if (g == j) continue;
            if (g == i && step.criterion == MergeCriterion::w) {
                out.symbols.push_back(t.symbols[j] == Symbol::w ? Symbol::w : Symbol::zero);
            } else {
                out.symbols.push_back(t.symbols[g]);
            }
        }
        terms.push_back(std::move(out));
    }
    return normalize_terms(SymbolicState(std::move(groups), std::move(terms)));
}

inline std::vector<std::vector<int>> initial_qubit_map(const SymbolicState& state) {
    std::vector<std::vector<int>> map;
    int q = 0;
    for (const auto& g : state.groups()) {
        std::vector<int> qubits;
        for (int k = 0; k < g.size; ++k) qubits.push_back(q++);
        map.push_back(std::move(qubits));
    }
    return map;
}

inline std::optional<MergeStep> try_pair(const SymbolicState& state, std::size_t i, std::size_t j) {
    const auto& gi = state.groups()[i];
    const auto& gj = state.groups()[j];
    if (gi.kind != gj.kind) return std::nullopt;
    if (gi.kind == BasisKind::ghz) {
        if (!ghz_mergeable(state, i, j)) return std::nullopt;
        const auto& t0 = state.terms().front();
        return MergeStep{i, j, MergeCriterion::ghz, std::nullopt, t0.symbols[i] != t0.symbols[j]};
    }
    auto k = w_mergeable(state, i, j);
    if (!k) return std::nullopt;
    return MergeStep{i, j, MergeCriterion::w, *k, false};
}

template <class Pick>
MergeReport simplify_with(const SymbolicState& input, Pick&& pick) {
    MergeReport report{{}, normalize_terms(input), initial_qubit_map(input)};
    for (;;) {
        std::vector<MergeStep> eligible;
        const auto& st = report.final_state;
        for (std::size_t i = 0; i < st.group_count(); ++i)
            for (std::size_t j = i + 1; j < st.group_count(); ++j)
                if (auto step = try_pair(st, i, j)) eligible.push_back(*step);
        if (eligible.empty()) break;
        MergeStep step = eligible[pick(eligible.size())];
        report.final_state = merge_pair(st, step);
        auto& map = report.qubit_map;
        map[step.i].insert(map[step.i].end(), map[step.j].begin(), map[step.j].end());
        map.erase(map.begin() + static_cast<std::ptrdiff_t>(step.j));
        report.steps.push_back(std::move(step));
    }
    return report;
}

}  // namespace detail

// Fixpoint merging, lowest-index eligible pair first.
inline MergeReport simplify(const SymbolicState& state) {
    return detail::simplify_with(state, [](std::size_t) { return std::size_t{0}; });
}

// Same fixpoint with a seeded random choice among eligible pairs; used to
// probe merge-order confluence.
inline MergeReport simplify_random_order(const SymbolicState& state, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return detail::simplify_with(state, [&](std::size_t count) {
        return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
    });
}

}  // namespace ghzw
