// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "corpus.hpp"
#include "ghzw/ghzw.hpp"

using namespace ghzw;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GaussianRational nonzero_gaussian(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> v(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (;;) {
        const int re = v(rng);
        const int im = v(rng);
        if (re != 0 || im != 0) return GaussianRational(Rational(re, den(rng)), Rational(im, den(rng)));
    }
}

SymbolicState swap_two_groups(const SymbolicState& s) {
    std::vector<GroupSpec> groups{s.groups()[1], s.groups()[0]};
    groups[0].index = 0;
    groups[1].index = 1;
    std::vector<Term> terms;
    for (const auto& t : s.terms()) terms.push_back({{t.symbols[1], t.symbols[0]}, t.coeff});
    return normalize_terms(SymbolicState(groups, terms));
}

// Random GHZ-W-type state with total qubits <= max_qubits.
SymbolicState random_ghzw_state(std::mt19937_64& rng, int max_qubits) {
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> groups_d(1, 5);
    std::uniform_int_distribution<int> size_d(2, 4);
    std::uniform_int_distribution<int> terms_d(1, 6);
    for (;;) {
        const int n = groups_d(rng);
        std::vector<std::pair<BasisKind, int>> kinds;
        int total = 0;
        for (int g = 0; g < n; ++g) {
            const int size = size_d(rng);
            if (total + size > max_qubits) break;
            total += size;
            kinds.push_back({coin(rng) ? BasisKind::ghz : BasisKind::w, size});
        }
        if (kinds.empty()) continue;
        std::vector<Term> terms;
        for (int t = terms_d(rng); t > 0; --t) {
            Term term;
            for (auto [k, s] : kinds) term.symbols.push_back(coin(rng) ? excited(k) : Symbol::zero);
            term.coeff = nonzero_gaussian(rng);
            terms.push_back(std::move(term));
        }
        try {
            return normalize_terms(SymbolicState::from_kinds(kinds, terms));
        } catch (const DomainError&) {
        }
    }
}

SymbolicState ghz_n(int n) {
    return SymbolicState::from_kinds({{BasisKind::ghz, n}}, {Term{{Symbol::zero}}, Term{{Symbol::one}}});
}

SymbolicState w_n(int n) { return SymbolicState::from_kinds({{BasisKind::w, n}}, {Term{{Symbol::w}}}); }

TermMatrix perturb(const TermMatrix& m, std::mt19937_64& rng) {
    std::vector<std::size_t> perm(m.cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(0.5);
    TermMatrix out;
    out.cols = m.cols;
    out.rows.assign(m.rows.size(), 0);
    for (std::size_t c = 0; c < m.sizes.size(); ++c) out.sizes.push_back(m.sizes[perm[c]]);
    for (std::size_t c = 0; c < m.cols; ++c) {
        const bool flip = coin(rng);
        for (std::size_t r = 0; r < m.rows.size(); ++r) out.set(r, c, m.bit(r, perm[c]) != flip);
    }
    std::shuffle(out.rows.begin(), out.rows.end(), rng);
    return out;
}

Outcome criterion1() {
    std::mt19937_64 rng(1);
    const auto base = ghzw::testing::load("eq21.state");
    double worst = 0;
    int failures = 0;
    auto check = [&](const GaussianRational& a, const GaussianRational& b, const GaussianRational& c, bool expect) {
        const auto t0 = Clock::now();
        const bool got = is_fully_entangled(with_coefficients(base, {a, b, c})).fully_entangled;
        worst = std::max(worst, seconds_since(t0));
        failures += got != expect;
    };
    for (int i = 0; i < 50; ++i) {
        const auto a = nonzero_gaussian(rng);
        const auto b = nonzero_gaussian(rng);
        const auto c = nonzero_gaussian(rng);
        check(a, b, c, true);
        check(0, b, c, false);
        check(a, 0, c, false);
        check(a, b, 0, false);
    }
    Outcome o;
    o.pass = failures == 0 && worst < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "200 exact checks, %d wrong, slowest %.4f s", failures, worst);
    o.detail = buf;
    return o;
}

Outcome criterion2() {
    std::mt19937_64 rng(2);
    int agree = 0;
    int entangled = 0;
    for (int i = 0; i < 200; ++i) {
        const auto s = random_ghzw_state(rng, 14);
        const bool exact = is_fully_entangled(s).fully_entangled;
        const bool dense = dense_fully_entangled(expand(s, 14));
        agree += exact == dense;
        entangled += exact;
    }
    return {agree == 200, std::to_string(agree) + "/200 agree (" + std::to_string(entangled) + " fully entangled)"};
}

Outcome criterion3() {
    int wrong = 0;
    int checked = 0;
    for (int n = 3; n <= 10; ++n) {
        const auto g = expand(ghz_n(n));
        const auto w = expand(w_n(n));
        wrong += theorem1_classify(g) != Theorem1Class::ghz;
        wrong += theorem1_classify(w) != Theorem1Class::w;
        checked += 2;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            wrong += theorem1_classify(apply_random_ilo(g, 1000 * n + seed, IloKind::general)) != Theorem1Class::ghz;
            wrong += theorem1_classify(apply_random_ilo(w, 1000 * n + seed, IloKind::general)) != Theorem1Class::w;
            checked += 2;
        }
    }
    const bool eq19 = theorem1_classify(expand(ghzw::testing::load("eq19.state"))) == Theorem1Class::neither;
    return {wrong == 0 && eq19, std::to_string(checked - wrong) + "/" + std::to_string(checked) +
                                    " GHZ/W verdicts right; eq19 -> " + (eq19 ? "neither" : "WRONG")};
}

Outcome criterion4() {
    std::mt19937_64 rng(4);
    const auto eq29 = ghzw::testing::load("eq29.state");
    const auto eq31 = ghzw::testing::load("eq31.state");
    int good = 0;
    for (int i = 0; i < 20; ++i) {
        const auto a = nonzero_gaussian(rng);
        const auto b = nonzero_gaussian(rng);
        const auto r = simplify(with_coefficients(eq29, {1, b, a}));
        if (r.final_state.group_count() != 2) continue;
        good += swap_two_groups(eliminate_lower_terms(r.final_state).state) == eq31;
    }
    bool fixed = true;
    for (const char* name : {"eq25.state", "eq33.state"}) {
        const auto s = ghzw::testing::load(name);
        const auto r = simplify(s);
        fixed = fixed && r.steps.empty() && r.final_state == s;
    }
    return {good == 20 && fixed, std::to_string(good) + "/20 random (alpha,beta) reduce to 2 groups matching eq31; eq25, eq33 " +
                                     (fixed ? "fixed" : "NOT fixed")};
}

Outcome criterion5() {
    SkeletonOptions opts;
    opts.ghz_only = true;
    opts.allow_single_group = false;
    std::set<std::string> six;
    for (const auto& s : enumerate_skeletons(6, opts)) six.insert(s.to_string());
    const bool six_ok = six == std::set<std::string>{"G:4+2 | W:-", "G:3+3 | W:-", "G:2+2+2 | W:-"} &&
                        enumerate_skeletons(6, opts).size() == 3;
    std::vector<BigInt> ways(31, 0);
    ways[0] = 1;
    for (int part = 2; part <= 30; ++part)
        for (int s = part; s <= 30; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
    bool c_ok = true;
    for (int m = 0; m <= 30; ++m) c_ok = c_ok && count_parts_ge2(m) == ways[static_cast<std::size_t>(m)];
    bool l_ok = true;
    for (int n = 4; n <= 14; ++n) l_ok = l_ok && count_main_partitions(n) == static_cast<long long>(enumerate_skeletons(n).size());
    return {six_ok && c_ok && l_ok, std::string("six-qubit skeletons ") + (six_ok ? "ok" : "WRONG") +
                                        ", count_parts_ge2 m<=30 " + (c_ok ? "ok" : "WRONG") + ", L(N) 4..14 " +
                                        (l_ok ? "ok" : "WRONG") + " (L(4)=" + count_main_partitions(4).str() + ")"};
}

Outcome criterion6() {
    const auto classes = enumerate_ghz_classes(2, 2, 4);
    const auto psi1 = canonicalize_ghz(support_matrix(ghzw::testing::load("psi1.state")));
    const auto psi2 = canonicalize_ghz(support_matrix(ghzw::testing::load("psi2.state")));
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& c : classes) got.insert(c.form.matrix.rows);
    const bool two = classes.size() == 2 && got.count(psi1.matrix.rows) && got.count(psi2.matrix.rows);
    const bool qinf = q_inf(2, 4) == 2;
    const std::size_t sizes = assign_sizes(psi1, {2, 3, 4, 5}).size();

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> cols(2, 7);
    std::uniform_int_distribution<int> rows(2, 9);
    int stable = 0;
    for (int i = 0; i < 1000; ++i) {
        TermMatrix m;
        if (i % 4 == 0) {
            m = support_matrix(ghzw::testing::load(i % 8 == 0 ? "psi1.state" : "eq54.state"));
        } else {
            m.cols = static_cast<std::size_t>(cols(rng));
            std::uniform_int_distribution<std::uint32_t> key(0, (1U << m.cols) - 1);
            for (int r = rows(rng); r > 0; --r) m.rows.push_back(key(rng));
        }
        stable += canonicalize_ghz(perturb(m, rng)) == canonicalize_ghz(m);
    }
    return {two && qinf && sizes == 12 && stable == 1000,
            std::to_string(classes.size()) + " classes for (2,2,4)" + (two ? " matching psi1, psi2" : " MISMATCH") +
                "; q_inf(2,4)=" + std::to_string(q_inf(2, 4)) + "; assign_sizes=" + std::to_string(sizes) +
                "; invariance " + std::to_string(stable) + "/1000"};
}

Outcome criterion7() {
    const auto a = canonicalize_w_layer(highest_layer(ghzw::testing::load("eq79a.state")).layer);
    const auto b = canonicalize_w_layer(highest_layer(ghzw::testing::load("eq79b.state")).layer);
    const bool l79 = !(a == b);
    const std::vector<std::vector<std::string>> three{
        {"1100", "1010", "1001"}, {"1100", "1010", "0101"}, {"1100", "0110", "1010"}};
    std::set<std::vector<std::uint32_t>> forms;
    for (const auto& rows : three) forms.insert(canonicalize_w_layer(TermMatrix::from_strings(rows)).matrix.rows);
    const bool l83 = forms.size() == 3;
    const bool e78 = eliminate_lower_terms(ghzw::testing::load("eq77.state")).state == ghzw::testing::load("eq78.state");
    const bool e85 = eliminate_lower_terms(ghzw::testing::load("eq83c.state")).state == ghzw::testing::load("eq85.state");
    bool count = true;
    for (int n = 2; n <= 20; ++n) {
        long long brute = 0;
        for (std::uint32_t s = 0; s < (1U << n); ++s) brute += __builtin_popcount(s) >= 2;
        count = count && count_w_main_classes(n) == brute;
    }
    auto yn = [](bool v) { return v ? "ok" : "WRONG"; };
    return {l79 && l83 && e78 && e85 && count, std::string("eq79 layers distinct ") + yn(l79) + ", three layers distinct " +
                                                    yn(l83) + ", eq77->eq78 " + yn(e78) + ", eq83c->eq85 " + yn(e85) +
                                                    ", 2^n-n-1 n<=20 " + yn(count)};
}

Outcome criterion8() {
    const auto r = enumerate_mixed_main_classes(ghzw::testing::load("omega12_ghz3.state"),
                                                ghzw::testing::load("omega21_w2.state"), 8);
    std::set<std::string> labels;
    for (const auto& [label, count] : r.simplest) labels.insert(label);
    const std::set<std::string> expected{"(2,2,2)", "(2,2,1)", "(2,2,0)", "(2,1,1)", "(2,1,0)",
                                         "(2,0,0)", "(1,1,1)", "(1,1,0)", "(1,0,0)"};
    const bool zero_rejected = !labels.count("(0,0,0)") && r.non_simplest.count("(0,0,0)");
    std::string got;
    for (const auto& l : labels) got += l;
    return {labels == expected && zero_rejected,
            std::to_string(labels.size()) + " simplest labels " + got + "; (0,0,0) " +
                (zero_rejected ? "non-simplest" : "NOT rejected")};
}

Outcome criterion9(Clock::time_point start) {
    int fp_bad = 0;
    int fp_total = 0;
    for (const char* name : {"eq19.state", "eq21.state", "eq25.state", "eq31.state", "eq78.state", "eq85.state",
                             "psi1.state", "psi2.state", "omega12_ghz3.state", "eq87.state"}) {
        const auto s = ghzw::testing::load(name);
        const auto d = expand(s);
        const auto base = rank_fingerprint(d, 1e-9);
        std::vector<int> spans;
        for (const auto& g : s.groups()) spans.push_back(g.size);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            IloKind kind = IloKind::general;
            if (seed % 2 == 1 && s.all_kind(BasisKind::ghz)) kind = IloKind::relative_ghz;
            if (seed % 2 == 1 && s.all_kind(BasisKind::w)) kind = IloKind::relative_w;
            fp_bad += rank_fingerprint(apply_random_ilo(d, seed, kind, spans), 1e-9) != base;
            ++fp_total;
        }
    }
    std::mt19937_64 rng(9);
    int round_trip = 0;
    int idempotent = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_ghzw_state(rng, 30);
        const auto fmt = i % 2 ? StateFormat::json : StateFormat::text;
        round_trip += parse_state(serialize_state(s, fmt)) == s;
        std::vector<Term> doubled = s.terms();
        doubled.insert(doubled.end(), s.terms().begin(), s.terms().end());
        std::shuffle(doubled.begin(), doubled.end(), rng);
        const auto once = normalize_terms(SymbolicState(s.groups(), doubled));
        idempotent += normalize_terms(once) == once;
    }
    const double elapsed = seconds_since(start);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "fingerprints %d/%d invariant; round-trip %d/1000; idempotent %d/1000; acceptance run %.1f s",
                  fp_total - fp_bad, fp_total, round_trip, idempotent, elapsed);
    return {fp_bad == 0 && round_trip == 1000 && idempotent == 1000 && elapsed < 300.0, buf};
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"entanglement detection", criterion1},
        {"exact vs dense verdicts", criterion2},
        {"GHZ / W / neither characterization", criterion3},
        {"simplest form", criterion4},
        {"partitions", criterion5},
        {"GHZ classes", criterion6},
        {"W classes", criterion7},
        {"mixed classification", criterion8},
        {"property suites", [start] { return criterion9(start); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
