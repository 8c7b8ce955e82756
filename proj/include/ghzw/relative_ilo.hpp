#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/gaussian_rational.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

// 2x2 matrix on one qubit, row-major: {m00, m01, m10, m11}; column k is the
// image of |k>.
using QubitOperator = std::array<GaussianRational, 4>;

// Local operators that keep {|0..0>, |1..1>} as a set. Identity-like is
// diag(1, a_i) on each qubit; swap-like is [[0, b_i], [1, 0]], which sends
// |0..0> to |1..1> and |1..1> to (prod b_i)|0..0>.
struct GhzRelativeIlo {
    enum class Kind { identity_like, swap_like };

    Kind kind = Kind::identity_like;
    std::vector<GaussianRational> scalars;  // one per qubit of the group

    GhzRelativeIlo(Kind k, std::vector<GaussianRational> s) : kind(k), scalars(std::move(s)) {
        if (scalars.empty()) throw ContractError("relative ILO needs at least one qubit");
        for (const auto& x : scalars)
            if (x.is_zero()) throw ContractError("relative ILO scalar must be nonzero");
    }

    GaussianRational product() const {
        GaussianRational p(1);
        for (const auto& x : scalars) p *= x;
        return p;
    }

    std::vector<QubitOperator> qubit_operators() const {
        std::vector<QubitOperator> ops;
        for (const auto& x : scalars) {
            if (kind == Kind::identity_like) {
                ops.push_back({GaussianRational(1), GaussianRational(0), GaussianRational(0), x});
            } else {
                ops.push_back({GaussianRational(0), x, GaussianRational(1), GaussianRational(0)});
            }
        }
        return ops;
    }

    // Action on one GHZ group of a symbolic state.
    SymbolicState apply(const SymbolicState& state, std::size_t group) const {
        const auto& g = state.groups().at(group);
        if (g.kind != BasisKind::ghz) throw ContractError("GHZ relative ILO applied to a W group");
        if (static_cast<int>(scalars.size()) != g.size) throw ContractError("scalar count differs from group size");
        const GaussianRational prod = product();
        std::vector<Term> terms = state.terms();
        for (auto& t : terms) {
            Symbol& s = t.symbols[group];
            if (kind == Kind::identity_like) {
                if (s == Symbol::one) t.coeff *= prod;
            } else if (s == Symbol::one) {
                s = Symbol::zero;
                t.coeff *= prod;
            } else {
                s = Symbol::one;
            }
        }
        return normalize_terms(SymbolicState(state.groups(), std::move(terms)));
    }
};

// Local operators that keep the span of {|0..0>, |W>}: [[1, b_i], [0, x]] on
// each qubit. Net effect on the group: |W> -> x|W> + (sum b_i)|0..0>.
struct WRelativeIlo {
    std::vector<GaussianRational> shifts;  // b_i, one per qubit
    GaussianRational scale{1};

    WRelativeIlo(std::vector<GaussianRational> b, GaussianRational x) : shifts(std::move(b)), scale(std::move(x)) {
        if (shifts.empty()) throw ContractError("relative ILO needs at least one qubit");
        if (scale.is_zero()) throw ContractError("W relative ILO scale must be nonzero");
    }

    GaussianRational shift() const {
        GaussianRational s(0);
        for (const auto& b : shifts) s += b;
        return s;
    }

    std::vector<QubitOperator> qubit_operators() const {
        std::vector<QubitOperator> ops;
        for (const auto& b : shifts) ops.push_back({GaussianRational(1), b, GaussianRational(0), scale});
        return ops;
    }

    SymbolicState apply(const SymbolicState& state, std::size_t group) const {
        const auto& g = state.groups().at(group);
        if (g.kind != BasisKind::w) throw ContractError("W relative ILO applied to a GHZ group");
        if (static_cast<int>(shifts.size()) != g.size) throw ContractError("shift count differs from group size");
        return apply_w_shift(state, group, shift(), scale);
    }

    // Group-level form: only the aggregate shift matters.
    static SymbolicState apply_w_shift(const SymbolicState& state, std::size_t group, const GaussianRational& alpha,
                                       const GaussianRational& x) {
        if (x.is_zero()) throw ContractError("W relative ILO scale must be nonzero");
        if (state.groups().at(group).kind != BasisKind::w) throw ContractError("W shift applied to a GHZ group");
        std::vector<Term> terms;
        terms.reserve(state.term_count() * 2);
        for (const auto& t : state.terms()) {
            if (t.symbols[group] != Symbol::w) {
                terms.push_back(t);
                continue;
            }
            terms.push_back({t.symbols, t.coeff * x});
            if (!alpha.is_zero()) {
                Term shifted{t.symbols, t.coeff * alpha};
                shifted.symbols[group] = Symbol::zero;
                terms.push_back(std::move(shifted));
            }
        }
        return normalize_terms(SymbolicState(state.groups(), std::move(terms)));
    }
};

}  // namespace ghzw
