#include <hprod/digraph.hpp>
#include <hprod/permutation.hpp>
#include <hprod/random.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace hprod;

namespace {

Partition canonical(Partition p)
{
    for (auto & cls : p)
        std::sort(cls.begin(), cls.end());
    std::sort(p.begin(), p.end());
    return p;
}

} // namespace

TEST(OrientedCycle, ForwardAndBackwardArcs)
{
    const auto f = oriented_cycle(3, Direction::forward);
    EXPECT_EQ(f, Digraph(3, {{0, 1}, {1, 2}, {2, 0}}));
    const auto b = oriented_cycle(3, Direction::backward);
    EXPECT_EQ(b, Digraph(3, {{1, 0}, {2, 1}, {0, 2}}));
}

TEST(OrientedCycle, ReverseOfForwardIsBackward)
{
    EXPECT_EQ(reverse(oriented_cycle(5, Direction::forward)), oriented_cycle(5, Direction::backward));
    EXPECT_EQ(reverse(oriented_cycle(4)), oriented_cycle(4, Direction::backward));
}

TEST(OrientedCycle, RejectsShortCycles)
{
    try {
        oriented_cycle(1);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::invalid_order);
    }
}

TEST(Reverse, SingleArcAndMultiplicity)
{
    Digraph d(2);
    d.add_arc({0, 1}, 3);
    const auto r = reverse(d);
    EXPECT_EQ(r.multiplicity({1, 0}), 3u);
    EXPECT_EQ(r.multiplicity({0, 1}), 0u);
}

TEST(Reverse, IsAnInvolution)
{
    random::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random::between(rng, 1, 7);
        Digraph d(n, Loops::allow);
        for (int k = 0; k < 12; ++k)
            d.add_arc({random::below(rng, n), random::below(rng, n)}, random::between(rng, 1, 3));
        EXPECT_EQ(reverse(reverse(d)), d);
    }
}

TEST(Underlying, CyclesOfBothOrientations)
{
    Graph c5(5);
    for (Vertex i = 0; i < 5; ++i)
        c5.add_edge(i, (i + 1) % 5);
    EXPECT_EQ(underlying(oriented_cycle(5)), c5);
    EXPECT_EQ(underlying(oriented_cycle(5, Direction::backward)), c5);
}

TEST(Underlying, TwoCycleCollapsesAndLoopsAreRejected)
{
    EXPECT_EQ(underlying(oriented_cycle(2)).size(), 1u);
    Digraph d(2, Loops::allow);
    d.add_arc({1, 1});
    EXPECT_THROW(underlying(d), Error);
}

TEST(Underlying, SymmetricUnderReversal)
{
    random::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random::between(rng, 2, 7);
        Digraph d(n);
        for (int k = 0; k < 10; ++k) {
            Vertex a = random::below(rng, n), b = random::below(rng, n);
            if (a != b)
                d.add_arc({a, b});
        }
        EXPECT_EQ(underlying(d), underlying(reverse(d)));
    }
}

TEST(Components, WeakComponentsOfDisjointCycles)
{
    const auto d = disjoint_union(oriented_cycle(3), oriented_cycle(4));
    EXPECT_EQ(class_sizes(weak_components(d)), (Multiset{3, 4}));
    EXPECT_EQ(weak_components(Digraph(1)).size(), 1u);
}

TEST(Components, StrongComponents)
{
    EXPECT_EQ(class_sizes(strong_components(oriented_cycle(6))), (Multiset{6}));
    EXPECT_EQ(class_sizes(strong_components(Digraph(3, {{0, 1}, {1, 2}}))), (Multiset{1, 1, 1}));
}

TEST(Components, WeakComponentsNeverSplitStrongOnes)
{
    random::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random::between(rng, 1, 9);
        Digraph d(n);
        for (int k = 0; k < 9; ++k) {
            Vertex a = random::below(rng, n), b = random::below(rng, n);
            if (a != b)
                d.add_arc({a, b});
        }
        const auto weak = weak_components(d);
        std::vector<std::size_t> weak_of(n);
        for (std::size_t c = 0; c < weak.size(); ++c)
            for (Vertex v : weak[c])
                weak_of[v] = c;
        for (const auto & cls : strong_components(d))
            for (Vertex v : cls)
                EXPECT_EQ(weak_of[v], weak_of[cls.front()]);
    }
}

TEST(CycleLengthMultiset, UnionsAndIdentity)
{
    EXPECT_EQ(cycle_length_multiset(disjoint_union(oriented_cycle(4), oriented_cycle(20))), (Multiset{4, 20}));
    EXPECT_EQ(cycle_length_multiset(disjoint_union(oriented_cycle(16), oriented_cycle(8))), (Multiset{8, 16}));
    Digraph loops(5, Loops::allow);
    for (Vertex v = 0; v < 5; ++v)
        loops.add_arc({v, v});
    EXPECT_EQ(cycle_length_multiset(loops), (Multiset{1, 1, 1, 1, 1}));
}

TEST(CycleLengthMultiset, RejectsNonRegular)
{
    try {
        cycle_length_multiset(Digraph(3, {{0, 1}, {1, 2}}));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::regularity);
    }
}

TEST(CycleLengthMultiset, SumsToOrderAndStrongEqualsWeak)
{
    random::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = random::between(rng, 1, 12);
        const auto d = to_one_regular(random::permutation(rng, n));
        const auto lengths = cycle_length_multiset(d);
        EXPECT_EQ(std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}), n);
        EXPECT_EQ(canonical(strong_components(d)), canonical(weak_components(d)));
    }
}

TEST(Eulerian, Examples)
{
    EXPECT_TRUE(is_eulerian(oriented_cycle(7)));
    EXPECT_FALSE(is_eulerian(disjoint_union(oriented_cycle(3), oriented_cycle(3))));
    EXPECT_TRUE(is_eulerian(Digraph(1)));
    EXPECT_FALSE(is_eulerian(Digraph(3, {{0, 1}, {1, 2}})));
}
