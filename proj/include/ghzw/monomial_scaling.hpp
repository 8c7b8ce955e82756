#pragma once

#include <cstddef>
#include <vector>

#include "ghzw/exact_linalg.hpp"
#include "ghzw/gaussian_rational.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

// Result of rescaling term coefficients by per-group scalars plus one global
// scalar. Group g's scalar multiplies every term whose symbol in g is excited.
struct ScalingResult {
    SymbolicState state;
    std::vector<GaussianRational> group_scalars;
    GaussianRational global{1};
    std::vector<std::size_t> fixed_terms;     // indices (in the result) set to 1
    std::vector<std::size_t> residual_terms;  // indices whose coefficients stay essential
};

// Greedy over terms in order: a term joins the fixed set when the exponent
// matrix of the fixed set, rows [1 | excited bits], keeps an integer right
// inverse. The scalars are then integer monomials in the coefficients, so the
// result stays in Q(i).
inline ScalingResult scale_to_unit_coefficients(const SymbolicState& state) {
    const std::size_t n = state.group_count();
    const auto& terms = state.terms();
    auto exponent_row = [&](const Term& t) {
        std::vector<long long> row(n + 1, 0);
        row[0] = 1;
        for (std::size_t g = 0; g < n; ++g) row[g + 1] = t.symbols[g] == Symbol::zero ? 0 : 1;
        return row;
    };

    IntMatrix accepted_rows;
    std::vector<std::size_t> accepted;
    IntMatrix inverse;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        IntMatrix trial = accepted_rows;
        trial.push_back(exponent_row(terms[i]));
        if (auto x = integer_right_inverse(trial)) {
            accepted_rows = std::move(trial);
            accepted.push_back(i);
            inverse = std::move(*x);
        }
    }

    // log s = -X log c over the accepted terms.
    std::vector<GaussianRational> scalars(n + 1, GaussianRational(1));
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t k = 0; k < accepted.size(); ++k) {
            const long long e = inverse[j][k];
            if (e != 0) scalars[j] *= terms[accepted[k]].coeff.pow(-e);
        }
    }

    std::vector<Term> out = terms;
    for (auto& t : out) {
        t.coeff *= scalars[0];
        for (std::size_t g = 0; g < n; ++g)
            if (t.symbols[g] != Symbol::zero) t.coeff *= scalars[g + 1];
    }

    ScalingResult result{SymbolicState(state.groups(), std::move(out)), {}, scalars[0], accepted, {}};
    result.group_scalars.assign(scalars.begin() + 1, scalars.end());
    for (std::size_t i = 0, a = 0; i < terms.size(); ++i) {
        if (a < accepted.size() && accepted[a] == i) {
            ++a;
        } else {
            result.residual_terms.push_back(i);
        }
    }
    return result;
}

}  // namespace ghzw
