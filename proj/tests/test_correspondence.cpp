#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ghzw/correspondence.hpp"
#include "ghzw/oracle.hpp"

using namespace ghzw;

namespace {

SymbolicState eq21(const GaussianRational& a, const GaussianRational& b, const GaussianRational& c) {
    return with_coefficients(ghzw::testing::load("eq21.state"), {a, b, c});
}

}  // namespace

TEST(Correspondence, ConcentratesGroupsToQubits) {
    const auto cs = concentrate(ghzw::testing::load("eq19.state"));
    EXPECT_EQ(cs.qubits, 2U);
    ASSERT_EQ(cs.terms.size(), 2U);
    EXPECT_EQ(cs.bits(cs.terms[0].first), "01");
    EXPECT_EQ(cs.bits(cs.terms[1].first), "10");
}

TEST(Correspondence, CutRanks) {
    const auto cs = concentrate(ghzw::testing::load("product_ghz_pairs.state"));
    EXPECT_EQ(exact_cut_rank(cs, 0b01), 1U);
    const auto bell = concentrate(ghzw::testing::load("eq19.state"));
    EXPECT_EQ(exact_cut_rank(bell, 0b01), 2U);
}

TEST(Correspondence, KnownStates) {
    EXPECT_TRUE(is_fully_entangled(ghzw::testing::load("eq19.state")).fully_entangled);
    EXPECT_TRUE(is_fully_entangled(ghzw::testing::load("eq21.state")).fully_entangled);
    EXPECT_TRUE(is_fully_entangled(ghzw::testing::load("eq55.state")).fully_entangled);
    EXPECT_TRUE(is_fully_entangled(ghzw::testing::load("ghz4.state")).fully_entangled);
    EXPECT_TRUE(is_fully_entangled(ghzw::testing::load("w4.state")).fully_entangled);
    const auto v = is_fully_entangled(ghzw::testing::load("product_ghz_pairs.state"));
    EXPECT_FALSE(v.fully_entangled);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(*v.witness, std::vector<std::size_t>{0});
}

TEST(Correspondence, SingleGroupProductStates) {
    const auto zero = SymbolicState::from_kinds({{BasisKind::ghz, 3}}, {Term{{Symbol::zero}}});
    const auto one = SymbolicState::from_kinds({{BasisKind::ghz, 3}}, {Term{{Symbol::one}}});
    EXPECT_FALSE(is_fully_entangled(zero).fully_entangled);
    EXPECT_FALSE(is_fully_entangled(one).fully_entangled);
}

TEST(Correspondence, Eq21CoefficientSweep) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> v(-9, 9);
    auto draw = [&] {
        int re = 0;
        int im = 0;
        while (re == 0 && im == 0) {
            re = v(rng);
            im = v(rng);
        }
        return GaussianRational(Rational(re, 1 + (v(rng) & 3)), Rational(im));
    };
    for (int i = 0; i < 50; ++i) {
        const auto a = draw();
        const auto b = draw();
        const auto c = draw();
        EXPECT_TRUE(is_fully_entangled(eq21(a, b, c)).fully_entangled);
        EXPECT_FALSE(is_fully_entangled(eq21(0, b, c)).fully_entangled);
        EXPECT_FALSE(is_fully_entangled(eq21(a, 0, c)).fully_entangled);
        EXPECT_FALSE(is_fully_entangled(eq21(a, b, 0)).fully_entangled);
    }
}

TEST(Correspondence, SupportScreenAndCoefficientSearch) {
    const auto bad = ghzw::testing::load("product_ghz_pairs.state");
    EXPECT_TRUE(could_be_fully_entangled(bad).possible);
    const auto assignment = find_entangling_coefficients(bad, 3);
    EXPECT_TRUE(is_fully_entangled(assignment.state).fully_entangled);

    const auto constant = SymbolicState::from_kinds({{BasisKind::ghz, 2}, {BasisKind::ghz, 2}},
                                                    {Term{{Symbol::zero, Symbol::one}}, Term{{Symbol::one, Symbol::one}}});
    const auto verdict = could_be_fully_entangled(constant);
    EXPECT_FALSE(verdict.possible);
    EXPECT_EQ(verdict.constant_position, 1U);
    EXPECT_THROW(find_entangling_coefficients(constant, 1), ContractError);
}

TEST(Correspondence, GroupCap) {
    std::vector<std::pair<BasisKind, int>> kinds(21, {BasisKind::ghz, 2});
    Term a{SymbolVector(21, Symbol::zero)};
    Term b{SymbolVector(21, Symbol::one)};
    EXPECT_THROW(is_fully_entangled(SymbolicState::from_kinds(kinds, {a, b})), ResourceError);
}

TEST(Correspondence, AgreesWithDenseOracle) {
    std::mt19937_64 rng(99);
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> groups_d(2, 4);
    std::uniform_int_distribution<int> terms_d(1, 5);
    std::uniform_int_distribution<int> coeff_d(-3, 3);
    int disagreements = 0;
    for (int trial = 0; trial < 80; ++trial) {
        const int n = groups_d(rng);
        std::vector<std::pair<BasisKind, int>> kinds;
        for (int g = 0; g < n; ++g) kinds.push_back({coin(rng) ? BasisKind::ghz : BasisKind::w, n == 4 ? 2 : 3});
        std::vector<Term> terms;
        for (int t = terms_d(rng); t > 0; --t) {
            Term term;
            for (auto [k, s] : kinds) term.symbols.push_back(coin(rng) ? excited(k) : Symbol::zero);
            int c = coeff_d(rng);
            term.coeff = GaussianRational(c == 0 ? 1 : c);
            terms.push_back(term);
        }
        SymbolicState s;
        try {
            s = normalize_terms(SymbolicState::from_kinds(kinds, terms));
        } catch (const DomainError&) {
            continue;
        }
        if (is_fully_entangled(s).fully_entangled != dense_fully_entangled(expand(s))) ++disagreements;
    }
    EXPECT_EQ(disagreements, 0);
}
