#include "fixtures.hpp"
#include "oracles.hpp"

#include <hprod/permutation.hpp>
#include <hprod/random.hpp>

#include <gtest/gtest.h>

using namespace hprod;

namespace {

std::vector<std::vector<Vertex>> one_based(const CycleDecomposition & d)
{
    auto cycles = d.cycles;
    for (auto & c : cycles)
        for (auto & v : c)
            ++v;
    return cycles;
}

std::vector<Permutation> factors_of(const Family & gamma, const HAssignment & h, std::size_t m)
{
    std::vector<Permutation> result;
    for (Vertex i = 0; i < m; ++i)
        result.push_back(from_one_regular(gamma.member(h.at({i, (i + 1) % m}))));
    return result;
}

} // namespace

TEST(OneRegular, CycleBecomesItsPermutation)
{
    EXPECT_EQ(format_cycles(from_one_regular(oriented_cycle(6))), "(1 2 3 4 5 6)");
    Digraph loops(4, Loops::allow);
    for (Vertex v = 0; v < 4; ++v)
        loops.add_arc({v, v});
    EXPECT_EQ(from_one_regular(loops), Permutation::identity(4));
}

TEST(OneRegular, RoundTrip)
{
    random::Rng rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random::permutation(rng, random::between(rng, 1, 10));
        EXPECT_EQ(from_one_regular(to_one_regular(p)), p);
        EXPECT_TRUE(to_one_regular(p).is_one_regular());
    }
}

TEST(OneRegular, RejectsOtherDigraphs)
{
    try {
        from_one_regular(Digraph(3, {{0, 1}, {1, 2}}));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::regularity);
    }
}

TEST(Compose, RightFactorActsFirst)
{
    const auto outer = parse_cycles("(1 3 5 4 2 6)");
    const auto inner = parse_cycles("(1 2 3 4 5 6)");
    // 1 -> 2 under inner, 2 -> 6 under outer
    EXPECT_EQ(compose(outer, inner)(0), 5u);
    EXPECT_EQ(compose(outer, Permutation::identity(6)), outer);
}

TEST(Compose, DegreeMismatch)
{
    try {
        compose(Permutation::identity(3), Permutation::identity(4));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::size_mismatch);
    }
}

TEST(ProductPh, ExampleDecompositions)
{
    const auto gamma = fixture::six_family();
    const auto ph = product_ph(factors_of(gamma, fixture::six_h(), 4));
    EXPECT_EQ(one_based(cycle_decomposition(ph)), (std::vector<std::vector<Vertex>>{{1, 4, 2, 6}, {3, 5}}));
    EXPECT_EQ(format_cycles(ph), "(1 4 2 6)(3 5)");
    const auto php = product_ph(factors_of(gamma, fixture::six_h_alt(), 4));
    EXPECT_EQ(one_based(cycle_decomposition(php)), (std::vector<std::vector<Vertex>>{{1}, {2, 3, 4, 5, 6}}));
    EXPECT_EQ(format_cycles(php), "(1)(2 3 4 5 6)");
}

TEST(ProductPh, MatchesPointwiseChain)
{
    random::Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = random::between(rng, 1, 8), m = random::between(rng, 1, 6);
        std::vector<Permutation> factors;
        std::vector<oracle::Perm> plain;
        for (std::size_t i = 0; i < m; ++i) {
            factors.push_back(random::permutation(rng, n));
            plain.push_back(factors.back().images());
        }
        EXPECT_EQ(product_ph(factors).images(), oracle::chain(plain));
    }
}

TEST(ProductPh, ReversalsGivePower)
{
    random::Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = random::between(rng, 2, 7), m = random::between(rng, 2, 7);
        const auto sigma = random::permutation(rng, n);
        const std::size_t r = random::below(rng, m + 1);
        std::vector<Permutation> factors(m, sigma);
        for (std::size_t i = 0; i < m; ++i)
            factors[i] = i < r ? inverse(sigma) : sigma;
        EXPECT_EQ(product_ph(factors), power(sigma, static_cast<std::int64_t>(m) - 2 * static_cast<std::int64_t>(r)));
    }
}

TEST(CycleDecomposition, IdentityAndCanonicalOrder)
{
    EXPECT_EQ(cycle_decomposition(Permutation::identity(5)).lengths(), (Multiset{1, 1, 1, 1, 1}));
    const auto d = cycle_decomposition(parse_cycles("(5 3)(6 2 4 1)"));
    EXPECT_EQ(one_based(d), (std::vector<std::vector<Vertex>>{{1, 6, 2, 4}, {3, 5}}));
}

TEST(PredictComponents, ExamplesAndIdentity)
{
    EXPECT_EQ(predict_components(4, parse_cycles("(1 4 2 6)(3 5)")), (Multiset{8, 16}));
    EXPECT_EQ(predict_components(4, parse_cycles("(1)(2 3 4 5 6)")), (Multiset{4, 20}));
    EXPECT_EQ(predict_components(5, Permutation::identity(3)), (Multiset{5, 5, 5}));
}

TEST(Power, Basics)
{
    const auto p = parse_cycles("(1 2 3 4 5 6)");
    EXPECT_EQ(power(p, 0), Permutation::identity(6));
    EXPECT_EQ(cycle_decomposition(power(p, 3)).lengths(), (Multiset{2, 2, 2}));
    EXPECT_EQ(compose(power(p, -1), p), Permutation::identity(6));
    EXPECT_EQ(power(p, 7), p);
}

TEST(ParseCycles, FixedPointsOptionalOnInput)
{
    EXPECT_EQ(format_cycles(parse_cycles("(2 3)", 4)), "(1)(2 3)(4)");
    EXPECT_EQ(parse_cycles(format_cycles(parse_cycles("(1 5 4 6 3 2)"))), parse_cycles("(1 5 4 6 3 2)"));
}

TEST(ParseCycles, Errors)
{
    for (const char * bad : {"(1 2", "1 2)", "(1 (2))", "()", "(0 1)", "(1 2)(2 3)", "(a)"}) {
        try {
            parse_cycles(bad);
            ADD_FAILURE() << bad;
        }
        catch (const Error & e) {
            EXPECT_EQ(e.code(), ErrorCode::parse) << bad;
        }
    }
    EXPECT_THROW(parse_cycles("(1 5)", 3), Error);
}
