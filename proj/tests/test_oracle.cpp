#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ghzw/correspondence.hpp"
#include "ghzw/oracle.hpp"

using namespace ghzw;

namespace {

SymbolicState ghz(int n) {
    return SymbolicState::from_kinds({{BasisKind::ghz, n}}, {Term{{Symbol::zero}}, Term{{Symbol::one}}});
}

SymbolicState w(int n) { return SymbolicState::from_kinds({{BasisKind::w, n}}, {Term{{Symbol::w}}}); }

}  // namespace

TEST(Oracle, ExpandOrdersQubitsMostSignificantFirst) {
    const auto d = expand(ghzw::testing::load("eq19.state"));
    EXPECT_EQ(d.qubits, 5);
    // |000>|01> is index 1, |000>|10> is index 2, |111>|00> is index 28.
    EXPECT_EQ(d.amplitudes[1], Complex(1, 0));
    EXPECT_EQ(d.amplitudes[2], Complex(1, 0));
    EXPECT_EQ(d.amplitudes[28], Complex(1, 0));
    EXPECT_EQ(d.exact->size(), 3U);
}

TEST(Oracle, ExpansionCap) {
    EXPECT_THROW(expand(ghzw::testing::load("eq33.state"), 10), ResourceError);
    EXPECT_NO_THROW(expand(ghzw::testing::load("eq33.state")));
}

TEST(Oracle, TwoQubitRangeTypes) {
    const auto g = expand(ghz(3));
    const auto v = expand(w(3));
    EXPECT_EQ(two_qubit_range_type(g, 0, 1).type, RangeType::ghz_like);
    EXPECT_EQ(two_qubit_range_type(v, 0, 2).type, RangeType::w_like);
    EXPECT_TRUE(two_qubit_range_type(v, 0, 2).exact);
    const auto gf = apply_random_ilo(g, 3, IloKind::identity);
    EXPECT_FALSE(gf.exact);
    EXPECT_EQ(two_qubit_range_type(gf, 1, 2).type, RangeType::ghz_like);
    EXPECT_EQ(two_qubit_range_type(apply_random_ilo(v, 3, IloKind::identity), 1, 2).type, RangeType::w_like);
    EXPECT_THROW(two_qubit_range_type(g, 1, 1), ContractError);
}

TEST(Oracle, ClassifiesGhzAndWUnderRandomIlos) {
    for (int n = 3; n <= 10; ++n) {
        const auto g = expand(ghz(n));
        const auto v = expand(w(n));
        EXPECT_EQ(theorem1_classify(g), Theorem1Class::ghz) << n;
        EXPECT_EQ(theorem1_classify(v), Theorem1Class::w) << n;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            EXPECT_EQ(theorem1_classify(apply_random_ilo(g, seed, IloKind::general)), Theorem1Class::ghz)
                << n << " " << seed;
            EXPECT_EQ(theorem1_classify(apply_random_ilo(v, seed, IloKind::general)), Theorem1Class::w)
                << n << " " << seed;
        }
    }
    EXPECT_EQ(theorem1_classify(expand(ghzw::testing::load("eq19.state"))), Theorem1Class::neither);
    EXPECT_EQ(theorem1_classify(expand(ghz(2))), Theorem1Class::neither);
}

TEST(Oracle, FingerprintInvariantUnderIlos) {
    for (const char* name : {"eq19.state", "eq25.state", "eq31.state", "eq78.state", "psi1.state", "omega12_ghz3.state"}) {
        const auto s = ghzw::testing::load(name);
        const auto d = expand(s);
        const auto base = rank_fingerprint(d);
        std::vector<int> spans;
        for (const auto& g : s.groups()) spans.push_back(g.size);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            IloKind kind = IloKind::general;
            if (seed % 2 == 0 && s.all_kind(BasisKind::w)) kind = IloKind::relative_w;
            if (seed % 2 == 0 && s.all_kind(BasisKind::ghz)) kind = IloKind::relative_ghz;
            ASSERT_EQ(rank_fingerprint(apply_random_ilo(d, seed, kind, spans)), base) << name << " " << seed;
        }
    }
}

TEST(Oracle, RelativeIlosKeepGroupBasis) {
    const auto s = ghzw::testing::load("psi1.state");
    std::vector<int> spans(4, 2);
    const auto d = apply_random_ilo(expand(s), 5, IloKind::relative_ghz, spans);
    // Support stays on products of |00> and |11> per group.
    for (std::size_t i = 0; i < d.amplitudes.size(); ++i) {
        if (std::abs(d.amplitudes[i]) < 1e-12) continue;
        for (int g = 0; g < 4; ++g) {
            const auto pair = (i >> (6 - 2 * g)) & 3U;
            EXPECT_TRUE(pair == 0 || pair == 3);
        }
    }
    EXPECT_NEAR(d.norm(), 1.0, 1e-12);
    EXPECT_THROW(apply_random_ilo(expand(s), 1, IloKind::relative_ghz, {2, 2}), ContractError);
}

TEST(Oracle, PermuteQubits) {
    const auto d = expand(ghzw::testing::load("eq19.state"));
    const auto p = permute_qubits(d, {4, 3, 2, 1, 0});
    // |00010> reversed is |01000>.
    EXPECT_EQ(p.amplitudes[8], Complex(1, 0));
    EXPECT_EQ(rank_fingerprint(permute_qubits(p, {4, 3, 2, 1, 0})), rank_fingerprint(d));
}

TEST(Oracle, AgreesWithExactVerdictOnCorpus) {
    for (const char* name : {"eq19.state", "eq21.state", "eq25.state", "eq29.state", "eq31.state", "eq45.state",
                             "eq55.state", "eq77.state", "eq79a.state", "eq79b.state", "eq83c.state", "eq87.state",
                             "psi1.state", "psi2.state", "product_ghz_pairs.state"}) {
        const auto s = ghzw::testing::load(name);
        EXPECT_EQ(dense_fully_entangled(expand(s)), is_fully_entangled(s).fully_entangled) << name;
    }
}
