#include "fixtures.hpp"

#include <hprod/rainbow.hpp>

#include <gtest/gtest.h>

using namespace hprod;

TEST(BuildMh, FourVertexFamilyIsEulerianThreeRegular)
{
    const auto mh = build_mh(3, fixture::four_family(), fixture::four_h());
    EXPECT_TRUE(is_eulerian(mh.base));
    for (auto d : mh.base.out_degrees())
        EXPECT_EQ(d, 3u);
    for (auto d : mh.base.in_degrees())
        EXPECT_EQ(d, 3u);
    EXPECT_EQ(mh.arcs.size(), 12u);
}

TEST(BuildMh, ConstantAssignmentRepeatsTheMember)
{
    Family gamma(5);
    const auto f = fixture::cycle_member("(1 3)(2 5 4)", 5);
    gamma.add("F", f);
    const std::size_t m = 4;
    const auto mh = build_mh(m, gamma, HAssignment::constant(oriented_cycle(m), "F"));
    for (const auto & [arc, mult] : f.arcs()) {
        EXPECT_EQ(mh.base.multiplicity(arc), m);
        EXPECT_EQ(mh.copies(arc.tail, arc.head), m);
    }
    EXPECT_EQ(mh.base.arcs().size(), f.arcs().size());
}

TEST(BuildMh, RequiresTheFullCycle)
{
    HAssignment h;
    h.assign({0, 1}, "A");
    EXPECT_THROW(build_mh(3, fixture::four_family(), h), Error);
}

TEST(RainbowCircuits, FourVertexFamilySingleCircuit)
{
    const auto mh = build_mh(3, fixture::four_family(), fixture::four_h());
    const auto circuits = find_rainbow_circuits(mh, ColorSequence::natural(3));
    ASSERT_EQ(circuits.size(), 1u);
    EXPECT_EQ(circuits.front().length(), 12u);
    EXPECT_TRUE(circuits_partition_arcs(mh, circuits));
    EXPECT_TRUE(is_rainbow_eulerian(mh, ColorSequence::natural(3)));
    for (std::size_t t = 0; t < 12; ++t)
        EXPECT_EQ(circuits.front().colors[t], t % 3);
}

TEST(RainbowCircuits, ExampleTwoCircuits)
{
    const auto mh = build_mh(4, fixture::six_family(), fixture::six_h());
    const auto circuits = find_rainbow_circuits(mh, ColorSequence::natural(4));
    EXPECT_EQ(circuit_lengths(circuits), (Multiset{8, 16}));
    // vertices visited in the first colour's slots: 4 and 2
    Multiset starts;
    for (const auto & c : circuits)
        starts.push_back(c.length() / 4);
    std::sort(starts.begin(), starts.end());
    EXPECT_EQ(starts, (Multiset{2, 4}));
    EXPECT_FALSE(is_rainbow_eulerian(mh, ColorSequence::natural(4)));
    EXPECT_TRUE(circuits_partition_arcs(mh, circuits));
}

TEST(RainbowCircuits, IdentityFamily)
{
    Family gamma(4);
    Digraph loops(4, Loops::allow);
    for (Vertex v = 0; v < 4; ++v)
        loops.add_arc({v, v});
    gamma.add("I", loops);
    const auto mh = build_mh(5, gamma, HAssignment::constant(oriented_cycle(5), "I"));
    EXPECT_EQ(circuit_lengths(find_rainbow_circuits(mh, ColorSequence::natural(5))), (Multiset{5, 5, 5, 5}));
}

TEST(RainbowCircuits, CoprimeReversalIsEulerian)
{
    // m = 3, one reversed arc, n = 5: m - 2r = 1 generates Z_5
    Family gamma(5);
    gamma.add("C+", oriented_cycle(5));
    gamma.add("C-", oriented_cycle(5, Direction::backward));
    const auto mh = build_mh(3, gamma, fixture::on_cycle({"C-", "C+", "C+"}));
    EXPECT_TRUE(is_rainbow_eulerian(mh, ColorSequence::natural(3)));
}

TEST(RainbowCircuits, OtherColourSequences)
{
    const auto mh = build_mh(4, fixture::six_family(), fixture::six_h());
    const auto circuits = find_rainbow_circuits(mh, ColorSequence({2, 3, 0, 1}));
    EXPECT_EQ(circuit_lengths(circuits), (Multiset{8, 16}));
    EXPECT_TRUE(circuits_partition_arcs(mh, circuits));
}

TEST(ColorSequence, Validation)
{
    EXPECT_THROW(ColorSequence({0, 0, 1}), Error);
    EXPECT_THROW(ColorSequence({0, 3, 1}), Error);
    EXPECT_THROW(ColorSequence({0}), Error);
}

TEST(RainbowCircuits, NonRegularColourRejected)
{
    Family gamma(3);
    gamma.add("P", Digraph(3, {{0, 1}, {1, 2}}));
    const auto mh = build_mh(2, gamma, HAssignment::constant(oriented_cycle(2), "P"));
    try {
        find_rainbow_circuits(mh, ColorSequence::natural(2));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::regularity);
    }
}
