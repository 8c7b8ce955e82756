#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ghzw/canonical.hpp"
#include "ghzw/correspondence.hpp"
#include "ghzw/error.hpp"
#include "ghzw/exact_linalg.hpp"
#include "ghzw/monomial_scaling.hpp"
#include "ghzw/relative_ilo.hpp"
#include "ghzw/simplest_form.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

struct WHighestLayer {
    std::size_t p = 0;  // number of highest terms
    std::size_t q = 0;  // W symbols per highest term
    TermMatrix layer;   // p x n, 1 = W
};

inline std::size_t w_count(const Term& t) {
    return static_cast<std::size_t>(std::count(t.symbols.begin(), t.symbols.end(), Symbol::w));
}

inline WHighestLayer highest_layer(const SymbolicState& state) {
    if (!state.all_kind(BasisKind::w)) throw ContractError("highest_layer needs an all-W state");
    if (state.group_count() > 32) throw ResourceError("more than 32 groups");
    std::size_t q = 0;
    for (const auto& t : state.terms()) q = std::max(q, w_count(t));
    if (q == 0) throw DomainError("state has no W symbol");
    WHighestLayer out;
    out.q = q;
    out.layer.cols = state.group_count();
    for (const auto& g : state.groups()) out.layer.sizes.push_back(g.size);
    for (const auto& t : state.terms()) {
        if (w_count(t) != q) continue;
        std::uint32_t key = 0;
        for (auto s : t.symbols) key = key << 1U | static_cast<std::uint32_t>(s == Symbol::w);
        out.layer.rows.push_back(key);
    }
    out.p = out.layer.rows.size();
    return out;
}

// 2^n - n - 1: subsets of the n groups with at least two members.
inline BigInt count_w_main_classes(int n) {
    if (n < 2) throw DomainError("count_w_main_classes needs n >= 2");
    BigInt two_n = 1;
    two_n <<= n;
    return two_n - n - 1;
}

// Inequivalent p-row layers of weight-q rows over n columns.
inline std::vector<CanonicalForm> enumerate_w_layers(int n, int q, int p, const CanonicalLimits& limits = {},
                                                     std::size_t max_candidates = 2'000'000) {
    if (n < 1 || q < 1 || q > n || p < 1) throw DomainError("enumerate_w_layers needs 1 <= q <= n and p >= 1");
    if (static_cast<std::size_t>(n) > limits.max_cols) throw ResourceError("n exceeds column cap");
    if (static_cast<std::size_t>(p) > limits.max_rows) throw ResourceError("p exceeds row cap");
    std::vector<std::uint32_t> rows;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
        if (__builtin_popcount(mask) == q) rows.push_back(mask);
    const std::size_t k = rows.size();
    if (static_cast<std::size_t>(p) > k) return {};
    BigInt combos = 1;
    for (int i = 1; i <= p; ++i) combos = combos * static_cast<long long>(k - static_cast<std::size_t>(p) + i) / i;
    if (combos > max_candidates) throw ResourceError("enumeration needs " + combos.str() + " candidates");
    std::map<std::vector<std::uint32_t>, CanonicalForm> found;
    std::vector<std::size_t> pick(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    for (;;) {
        TermMatrix m;
        m.cols = static_cast<std::size_t>(n);
        for (auto i : pick) m.rows.push_back(rows[i]);
        CanonicalForm form = canonicalize_w_layer(m, false, limits);
        found.try_emplace(form.matrix.rows, std::move(form));
        std::size_t pos = pick.size();
        while (pos > 0 && pick[pos - 1] == k - pick.size() + pos - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = pick[i - 1] + 1;
    }
    std::vector<CanonicalForm> out;
    for (auto& [key, form] : found) out.push_back(std::move(form));
    return out;
}

struct WElimination {
    SymbolicState state;
    std::vector<GaussianRational> shifts;        // aggregate shift per group
    std::vector<GaussianRational> group_scales;  // W scale per group
    GaussianRational global{1};
    std::vector<std::size_t> residual_terms;     // indices into state.terms()
    bool pinned = false;                         // all-W term present
};

namespace detail {

inline std::uint32_t w_mask(const Term& t) {
    std::uint32_t m = 0;
    for (std::size_t g = 0; g < t.symbols.size(); ++g)
        if (t.symbols[g] == Symbol::w) m |= std::uint32_t{1} << g;
    return m;
}

}  // namespace detail

// Applies the recorded shifts and scales to the input; the result must equal
// the elimination's state exactly.
inline SymbolicState replay(const SymbolicState& input, const WElimination& e) {
    SymbolicState s = normalize_terms(input);
    for (std::size_t g = 0; g < s.group_count(); ++g) s = WRelativeIlo::apply_w_shift(s, g, e.shifts[g], 1);
    for (std::size_t g = 0; g < s.group_count(); ++g) s = WRelativeIlo::apply_w_shift(s, g, 0, e.group_scales[g]);
    return scaled(s, e.global);
}

// Per-group shifts |W> -> |W> + a_g|0..0> remove lower terms layer by layer,
// from one below the highest W count down to |0..0>, lexicographically within
// a layer. A target coefficient is zeroed when its equation is affine in the
// still-free shifts and consistent with those already accepted. Group scales
// and a global factor then set as many remaining coefficients to 1 as they can.
//
// With the all-W term present the top layer pins every shift, so no freedom is
// left below it.
inline WElimination eliminate_lower_terms(const SymbolicState& input, std::size_t max_groups = 16) {
    if (!input.all_kind(BasisKind::w)) throw ContractError("eliminate_lower_terms needs an all-W state");
    const std::size_t n = input.group_count();
    if (n > max_groups) throw ResourceError("too many groups for elimination");
    const SymbolicState state = normalize_terms(input);

    std::map<std::uint32_t, GaussianRational> coeff;
    std::size_t q = 0;
    for (const auto& t : state.terms()) {
        coeff[detail::w_mask(t)] = t.coeff;
        q = std::max(q, w_count(t));
    }
    const std::uint32_t full = n == 0 ? 0 : ((std::uint32_t{1} << n) - 1);

    std::vector<std::optional<GaussianRational>> alpha(n);
    for (std::size_t layer = q; layer-- > 0;) {
        std::vector<std::uint32_t> targets;
        for (std::uint32_t t = 0; t <= full; ++t)
            if (static_cast<std::size_t>(__builtin_popcount(t)) == layer) targets.push_back(t);
        // Lexicographic on symbol vectors: group 0 is the most significant
        // position and 0 < W.
        auto lex_key = [n](std::uint32_t m) {
            std::uint32_t k = 0;
            for (std::size_t g = 0; g < n; ++g) k = k << 1U | ((m >> g) & 1U);
            return k;
        };
        std::sort(targets.begin(), targets.end(), [&](std::uint32_t a, std::uint32_t b) { return lex_key(a) < lex_key(b); });

        AffineSystem system(n);
        std::vector<bool> used(n, false);
        for (auto target : targets) {
            // c'_T = sum over present S containing T of c_S * prod_{g in S\T} a_g.
            std::map<std::uint32_t, GaussianRational> poly;  // free-variable monomial -> coefficient
            for (const auto& [s, c] : coeff) {
                if ((s & target) != target) continue;
                GaussianRational value = c;
                std::uint32_t free_mask = 0;
                const std::uint32_t rest = s & ~target;
                for (std::size_t g = 0; g < n; ++g) {
                    if (!(rest >> g & 1U)) continue;
                    if (alpha[g]) {
                        value *= *alpha[g];
                    } else {
                        free_mask |= std::uint32_t{1} << g;
                    }
                }
                if (!value.is_zero()) poly[free_mask] += value;
            }
            bool linear = true;
            std::vector<GaussianRational> row(n);
            GaussianRational constant;
            for (const auto& [m, c] : poly) {
                if (c.is_zero()) continue;
                const int deg = __builtin_popcount(m);
                if (deg == 0) {
                    constant = c;
                } else if (deg == 1) {
                    row[static_cast<std::size_t>(__builtin_ctz(m))] = c;
                } else {
                    linear = false;
                }
            }
            if (!linear) continue;
            auto verdict = system.offer(row, constant);
            if (verdict == AffineSystem::Offer::inconsistent) continue;
            for (std::size_t g = 0; g < n; ++g)
                if (!row[g].is_zero()) used[g] = true;
        }
        const auto solution = system.solve();
        for (std::size_t g = 0; g < n; ++g) {
            if (alpha[g] || !used[g]) continue;
            alpha[g] = system.is_pivot(g) ? solution[g] : GaussianRational(0);
        }
    }

    WElimination out;
    out.pinned = coeff.count(full) > 0 && q == n;
    SymbolicState shifted = state;
    for (std::size_t g = 0; g < n; ++g) {
        out.shifts.push_back(alpha[g].value_or(GaussianRational(0)));
        shifted = WRelativeIlo::apply_w_shift(shifted, g, out.shifts.back(), 1);
    }
    auto scaled_result = scale_to_unit_coefficients(shifted);
    out.state = std::move(scaled_result.state);
    out.group_scales = std::move(scaled_result.group_scalars);
    out.global = std::move(scaled_result.global);
    out.residual_terms = std::move(scaled_result.residual_terms);
    return out;
}

// A state whose terms carry named coefficient slots, e.g. a_0, b_2.
struct ComposedState {
    SymbolicState state;
    std::vector<std::string> slots;  // one per term, aligned with state.terms()
};

namespace detail {

inline std::string bracket_name(std::size_t i) {
    std::string s;
    do {
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    } while (i-- > 0);
    return s;
}

}  // namespace detail

// Direct sum: every GHZ-part term paired with every W-part term. Slot names
// are the GHZ term's bracket letter followed by the W term's index; the
// default value of a slot is the product of the two coefficients.
inline ComposedState compose(const SymbolicState& ghz_part, const SymbolicState& w_part) {
    if (!ghz_part.all_kind(BasisKind::ghz)) throw ContractError("compose: first part must be all GHZ");
    if (!w_part.all_kind(BasisKind::w)) throw ContractError("compose: second part must be all W");
    std::vector<GroupSpec> groups;
    for (const auto& g : ghz_part.groups()) groups.push_back({groups.size(), g.size, g.kind});
    for (const auto& g : w_part.groups()) groups.push_back({groups.size(), g.size, g.kind});
    std::vector<std::pair<Term, std::string>> named;
    for (std::size_t a = 0; a < ghz_part.term_count(); ++a) {
        for (std::size_t b = 0; b < w_part.term_count(); ++b) {
            const auto& tg = ghz_part.terms()[a];
            const auto& tw = w_part.terms()[b];
            Term t{tg.symbols, tg.coeff * tw.coeff};
            t.symbols.insert(t.symbols.end(), tw.symbols.begin(), tw.symbols.end());
            named.emplace_back(std::move(t), detail::bracket_name(a) + "_" + std::to_string(b));
        }
    }
    std::sort(named.begin(), named.end(), [](const auto& x, const auto& y) { return x.first.symbols < y.first.symbols; });
    ComposedState out;
    std::vector<Term> terms;
    for (auto& [t, name] : named) {
        terms.push_back(std::move(t));
        out.slots.push_back(std::move(name));
    }
    out.state = SymbolicState(std::move(groups), std::move(terms));
    return out;
}

struct MixedLabel {
    std::vector<int> counts;          // highest-term count per nonzero GHZ bracket
    std::optional<int> zero_bracket;  // same count for the |0..0> GHZ bracket, if present
    std::size_t q = 0;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(counts[i]);
        }
        return s + ")";
    }

    friend bool operator==(const MixedLabel&, const MixedLabel&) = default;
};

inline constexpr std::size_t kMaxMixedGhzGroups = 7;

// Brackets are the distinct GHZ sub-rows. The label lists, for each bracket
// with a nonzero GHZ row, how many terms have the global maximum W count, and
// takes the lexicographically largest such tuple over the GHZ part's column
// automorphisms (permutations and complements preserving the set of GHZ rows
// and fixing the zero row).
inline MixedLabel classify_mixed_main(const SymbolicState& state) {
    std::vector<std::size_t> gcols;
    std::vector<std::size_t> wcols;
    for (const auto& g : state.groups()) (g.kind == BasisKind::ghz ? gcols : wcols).push_back(g.index);
    if (gcols.empty() || wcols.empty()) throw ContractError("classify_mixed_main needs GHZ and W groups");
    if (gcols.size() > kMaxMixedGhzGroups) throw ResourceError("too many GHZ groups for automorphism search");
    const std::size_t k = gcols.size();

    MixedLabel label;
    for (const auto& t : state.terms()) {
        std::size_t c = 0;
        for (auto g : wcols) c += t.symbols[g] == Symbol::w;
        label.q = std::max(label.q, c);
    }
    std::map<std::uint32_t, int> count;  // GHZ row -> highest-term count
    for (const auto& t : state.terms()) {
        std::uint32_t row = 0;
        for (auto g : gcols) row = row << 1U | static_cast<std::uint32_t>(t.symbols[g] == Symbol::one);
        std::size_t c = 0;
        for (auto g : wcols) c += t.symbols[g] == Symbol::w;
        count[row] += c == label.q ? 1 : 0;
    }
    std::vector<std::uint32_t> rows;
    for (const auto& [row, c] : count)
        if (row != 0) rows.push_back(row);
    if (auto it = count.find(0); it != count.end()) label.zero_bracket = it->second;
    const bool has_zero = label.zero_bracket.has_value();
    const std::set<std::uint32_t> row_set(rows.begin(), rows.end());

    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    std::vector<int> best;
    do {
        const std::uint32_t flip_limit = has_zero ? 1U : (1U << k);
        for (std::uint32_t flips = 0; flips < flip_limit; ++flips) {
            // Image of each row under the column map.
            std::vector<std::uint32_t> image;
            bool ok = true;
            for (auto r : rows) {
                std::uint32_t out = 0;
                for (std::size_t c = 0; c < k; ++c) {
                    const std::size_t src = perm[c];
                    const bool bit = ((r >> (k - 1 - src)) & 1U) != ((flips >> src) & 1U);
                    out = out << 1U | static_cast<std::uint32_t>(bit);
                }
                if (!row_set.count(out)) {
                    ok = false;
                    break;
                }
                image.push_back(out);
            }
            if (!ok) continue;
            // Tuple indexed by target row order: bracket image[i] receives count of rows[i].
            std::map<std::uint32_t, int> moved;
            for (std::size_t i = 0; i < rows.size(); ++i) moved[image[i]] = count[rows[i]];
            std::vector<int> tuple;
            for (auto r : rows) tuple.push_back(moved[r]);
            if (tuple > best) best = std::move(tuple);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    label.counts = std::move(best);
    return label;
}

struct MixedEnumeration {
    std::map<std::string, std::size_t> simplest;      // label -> configurations
    std::map<std::string, std::size_t> non_simplest;  // entangled but mergeable
    std::size_t not_entangled = 0;
};

// Tries every nonempty choice of W-part terms in every GHZ bracket, with
// seeded generic coefficients, and tallies labels of the configurations that
// are fully entangled, split by whether they are in simplest form.
inline MixedEnumeration enumerate_mixed_main_classes(const SymbolicState& ghz_part, const SymbolicState& w_part,
                                                     std::uint64_t seed, std::size_t max_configurations = 100'000) {
    const std::size_t brackets = ghz_part.term_count();
    const std::size_t choices = (std::size_t{1} << w_part.term_count()) - 1;
    double total = 1;
    for (std::size_t i = 0; i < brackets; ++i) total *= static_cast<double>(choices);
    if (total > static_cast<double>(max_configurations)) throw ResourceError("too many bracket configurations");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 97);
    std::uniform_int_distribution<int> den(1, 89);
    MixedEnumeration out;
    std::vector<std::size_t> choice(brackets, 1);
    for (;;) {
        std::vector<GroupSpec> groups;
        for (const auto& g : ghz_part.groups()) groups.push_back({groups.size(), g.size, g.kind});
        for (const auto& g : w_part.groups()) groups.push_back({groups.size(), g.size, g.kind});
        std::vector<Term> terms;
        for (std::size_t a = 0; a < brackets; ++a) {
            for (std::size_t b = 0; b < w_part.term_count(); ++b) {
                if (!(choice[a] >> b & 1U)) continue;
                Term t{ghz_part.terms()[a].symbols, GaussianRational(Rational(num(rng), den(rng)))};
                const auto& ws = w_part.terms()[b].symbols;
                t.symbols.insert(t.symbols.end(), ws.begin(), ws.end());
                terms.push_back(std::move(t));
            }
        }
        SymbolicState st = normalize_terms(SymbolicState(std::move(groups), std::move(terms)));
        if (!is_fully_entangled(st).fully_entangled) {
            ++out.not_entangled;
        } else {
            const std::string label = classify_mixed_main(st).to_string();
            ++(is_simplest(st) ? out.simplest : out.non_simplest)[label];
        }
        std::size_t pos = 0;
        while (pos < brackets && choice[pos] == choices) choice[pos++] = 1;
        if (pos == brackets) break;
        ++choice[pos];
    }
    return out;
}

}  // namespace ghzw
