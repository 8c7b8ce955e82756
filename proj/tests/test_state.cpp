#include <random>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "ghzw/gaussian_rational.hpp"
#include "ghzw/state.hpp"
#include "ghzw/state_io.hpp"

using namespace ghzw;

namespace {

SymbolicState random_state(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> groups_d(1, 6);
    std::uniform_int_distribution<int> size_d(2, 9);
    std::uniform_int_distribution<int> terms_d(1, 8);
    std::uniform_int_distribution<int> num_d(-40, 40);
    std::uniform_int_distribution<int> den_d(1, 12);
    std::bernoulli_distribution coin(0.5);
    std::vector<GroupSpec> groups;
    const int n = groups_d(rng);
    for (int i = 0; i < n; ++i) {
        groups.push_back({static_cast<std::size_t>(i), size_d(rng), coin(rng) ? BasisKind::ghz : BasisKind::w});
    }
    std::vector<Term> terms;
    const int t = terms_d(rng);
    for (int i = 0; i < t; ++i) {
        Term term;
        for (const auto& g : groups) term.symbols.push_back(coin(rng) ? excited(g.kind) : Symbol::zero);
        int re = num_d(rng);
        if (re == 0) re = 1;
        term.coeff = GaussianRational(Rational(re, den_d(rng)), coin(rng) ? Rational(num_d(rng), den_d(rng)) : Rational(0));
        terms.push_back(std::move(term));
    }
    try {
        return normalize_terms(SymbolicState(groups, terms));
    } catch (const DomainError&) {
        return normalize_terms(SymbolicState(groups, {terms.front()}));
    }
}

}  // namespace

TEST(GaussianRational, ParseAndPrint) {
    EXPECT_EQ(GaussianRational::parse("3/4")->to_string(), "3/4");
    EXPECT_EQ(GaussianRational::parse("-1/2+3i")->to_string(), "-1/2+3i");
    EXPECT_EQ(GaussianRational::parse("2-5/7i")->to_string(), "2-5/7i");
    EXPECT_EQ(GaussianRational::parse("+7")->to_string(), "7");
    EXPECT_FALSE(GaussianRational::parse("2/4"));
    EXPECT_FALSE(GaussianRational::parse("3/1"));
    EXPECT_FALSE(GaussianRational::parse("1/0"));
    EXPECT_FALSE(GaussianRational::parse("i"));
    EXPECT_FALSE(GaussianRational::parse("1+-2i"));
    EXPECT_FALSE(GaussianRational::parse(""));
}

TEST(GaussianRational, FieldArithmetic) {
    const GaussianRational a(Rational(1, 2), Rational(3));
    const GaussianRational b(Rational(-2), Rational(1, 3));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a * a.inverse(), GaussianRational(1));
    EXPECT_EQ(a.pow(3) * a.pow(-3), GaussianRational(1));
    EXPECT_EQ(GaussianRational(0, 1) * GaussianRational(0, 1), GaussianRational(-1));
    EXPECT_THROW(GaussianRational(0).inverse(), DomainError);
}

TEST(StateModel, ParsesGroupedGhz) {
    const auto s = parse_state("groups: G:2 G:2\nterm: 1 0 0\nterm: 1 1 1");
    ASSERT_EQ(s.group_count(), 2U);
    ASSERT_EQ(s.term_count(), 2U);
    EXPECT_EQ(symbols_to_string(s.terms()[0].symbols), "00");
    EXPECT_EQ(symbols_to_string(s.terms()[1].symbols), "11");
}

TEST(StateModel, ParsesTwoGroupWState) {
    const auto s = parse_state("groups: W:2 W:3\nterm: 1 W W\nterm: 1 0 0");
    EXPECT_EQ(s.groups()[1].size, 3);
    EXPECT_EQ(symbols_to_string(s.terms()[0].symbols), "00");
    EXPECT_EQ(symbols_to_string(s.terms()[1].symbols), "WW");
}

TEST(StateModel, RejectsBadDocuments) {
    EXPECT_THROW(parse_state("groups: G:1 G:2\nterm: 1 0 0"), ParseError);
    EXPECT_THROW(parse_state("groups: G:2\nterm: 1 W"), ParseError);
    EXPECT_THROW(parse_state("groups: W:2\nterm: 1 1"), ParseError);
    EXPECT_THROW(parse_state("groups: G:2"), ParseError);
    EXPECT_THROW(parse_state("term: 1 0"), ParseError);
    EXPECT_THROW(parse_state("groups: G:2\nterm: 2/4 0"), ParseError);
    try {
        parse_state("groups: G:2 W:2\nterm: 1 0 1\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2U);
        EXPECT_EQ(e.column(), 11U);
    }
}

TEST(StateModel, ValidationErrors) {
    EXPECT_THROW(SymbolicState::from_kinds({{BasisKind::ghz, 1}}, {Term{{Symbol::zero}}}), DomainError);
    EXPECT_THROW(SymbolicState::from_kinds({{BasisKind::ghz, 2}}, {}), DomainError);
    EXPECT_THROW(SymbolicState::from_kinds({{BasisKind::ghz, 2}}, {Term{{Symbol::w}}}), ContractError);
    EXPECT_THROW(SymbolicState({{1, 2, BasisKind::ghz}}, {Term{{Symbol::zero}}}), ContractError);
}

TEST(StateModel, NormalizeMergesAndSorts) {
    const auto s = SymbolicState::from_kinds(
        {{BasisKind::ghz, 2}, {BasisKind::ghz, 2}},
        {Term{{Symbol::one, Symbol::one}, 4}, Term{{Symbol::zero, Symbol::zero}, 2}, Term{{Symbol::zero, Symbol::zero}, 3}});
    const auto n = normalize_terms(s);
    ASSERT_EQ(n.term_count(), 2U);
    EXPECT_EQ(n.terms()[0].coeff, GaussianRational(5));
    EXPECT_EQ(symbols_to_string(n.terms()[1].symbols), "11");
    EXPECT_TRUE(is_normalized(n));
    EXPECT_FALSE(is_normalized(s));
}

TEST(StateModel, NullStateRejected) {
    const auto s = SymbolicState::from_kinds({{BasisKind::ghz, 2}, {BasisKind::ghz, 2}},
                                             {Term{{Symbol::zero, Symbol::one}, 1}, Term{{Symbol::zero, Symbol::one}, -1}});
    EXPECT_THROW(normalize_terms(s), DomainError);
}

TEST(StateModel, CorpusRoundTrips) {
    for (const char* name : {"eq78.state", "eq33.state", "eq21.state", "eq88_222.state"}) {
        const auto s = ghzw::testing::load(name);
        EXPECT_EQ(parse_state(serialize_state(s)), s) << name;
        EXPECT_EQ(parse_state(serialize_state(s, StateFormat::json)), s) << name;
    }
}

TEST(StateModel, JsonSymbolArrays) {
    const auto s = parse_state(R"({"groups":[{"kind":"G","size":2},{"kind":"W","size":3}],
        "terms":[{"coeff":"1","symbols":["0","0"]},{"coeff":"1/2-1i","symbols":"1W"}]})");
    EXPECT_EQ(s.terms()[1].coeff.to_string(), "1/2-1i");
    EXPECT_THROW(parse_state(R"({"groups":[{"kind":"X","size":2}],"terms":[]})"), ParseError);
    EXPECT_THROW(parse_state("{not json"), ParseError);
}

TEST(StateProperties, RandomRoundTrip1000) {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_state(rng);
        ASSERT_EQ(parse_state(serialize_state(s)), s) << serialize_state(s);
        ASSERT_EQ(parse_state(serialize_state(s, StateFormat::json)), s);
    }
}

TEST(StateProperties, NormalizeIdempotentAndSumPreserving) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_state(rng);
        std::vector<Term> doubled = s.terms();
        for (const auto& t : s.terms()) doubled.push_back({t.symbols, t.coeff * GaussianRational(Rational(1, 3))});
        std::shuffle(doubled.begin(), doubled.end(), rng);
        const auto once = normalize_terms(SymbolicState(s.groups(), doubled));
        EXPECT_EQ(normalize_terms(once), once);
        ASSERT_EQ(once.term_count(), s.term_count());
        for (std::size_t k = 0; k < s.term_count(); ++k) {
            EXPECT_EQ(once.terms()[k].coeff, s.terms()[k].coeff * GaussianRational(Rational(4, 3)));
        }
        for (const auto& t : once.terms())
            for (std::size_t g = 0; g < once.group_count(); ++g)
                EXPECT_TRUE(symbol_legal(t.symbols[g], once.groups()[g].kind));
    }
}
