#include "fixtures.hpp"
#include "oracles.hpp"

#include <hprod/product.hpp>
#include <hprod/random.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <set>

using namespace hprod;

TEST(Product, ExampleComponentMultisets)
{
    const auto gamma = fixture::six_family();
    const auto host = oriented_cycle(4);
    EXPECT_EQ(cycle_length_multiset(otimes_h(host, gamma, fixture::six_h()).digraph), (Multiset{8, 16}));
    EXPECT_EQ(cycle_length_multiset(otimes_h(host, gamma, fixture::six_h_alt()).digraph), (Multiset{4, 20}));
}

TEST(Product, EqualImageMultisetsDifferentProducts)
{
    // h and h' use the same members the same number of times
    const auto gamma = fixture::six_family();
    std::multiset<std::string> a, b;
    for (const auto & [arc, name] : fixture::six_h().entries())
        a.insert(name);
    for (const auto & [arc, name] : fixture::six_h_alt().entries())
        b.insert(name);
    EXPECT_EQ(a, b);
    EXPECT_NE(cycle_length_multiset(otimes_h(oriented_cycle(4), gamma, fixture::six_h()).digraph),
              cycle_length_multiset(otimes_h(oriented_cycle(4), gamma, fixture::six_h_alt()).digraph));
}

TEST(Product, FourVertexFamilySingleComponent)
{
    const auto p = otimes_h(oriented_cycle(3), fixture::four_family(), fixture::four_h());
    EXPECT_EQ(class_sizes(strong_components(p.digraph)), (Multiset{12}));
}

TEST(Product, CycleTimesCycle)
{
    EXPECT_EQ(cycle_length_multiset(otimes(oriented_cycle(3), oriented_cycle(3)).digraph), (Multiset{3, 3, 3}));
    EXPECT_EQ(cycle_length_multiset(otimes(oriented_cycle(2), oriented_cycle(3)).digraph), (Multiset{6}));
    EXPECT_EQ(class_sizes(strong_components(otimes(oriented_cycle(4), oriented_cycle(6)).digraph)), (Multiset{12, 12}));
}

TEST(Product, ReverseOfArcTimesCycle)
{
    const Digraph k2_plus(2, {{0, 1}});
    for (std::size_t m = 2; m <= 6; ++m)
        EXPECT_EQ(reverse(otimes(k2_plus, oriented_cycle(m)).digraph),
                  otimes(reverse(k2_plus), oriented_cycle(m, Direction::backward)).digraph);
}

TEST(Product, VertexFlattening)
{
    const auto p = otimes(oriented_cycle(3), oriented_cycle(5));
    for (Vertex v = 0; v < p.digraph.order(); ++v)
        EXPECT_EQ(p.flatten(p.split(v)), v);
    EXPECT_EQ(p.flatten({2, 4}), 14u);
}

TEST(Product, OrderAndSize)
{
    random::Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random::cycle_instance(rng, 6, 6);
        const auto p = otimes_h(inst.host, inst.gamma, inst.h);
        EXPECT_EQ(p.digraph.order(), inst.host.order() * inst.gamma.carrier_order());
        std::size_t size = 0;
        for (const auto & [arc, name] : inst.h.entries())
            size += inst.gamma.member(name).size();
        EXPECT_EQ(p.digraph.size(), size);
    }
}

TEST(Product, MatchesPairScan)
{
    random::Rng rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        // arbitrary (not 1-regular) members and an arbitrary loop-free host
        const std::size_t p = random::between(rng, 1, 5), n = random::between(rng, 1, 4);
        Digraph host(p);
        for (int k = 0; k < 6; ++k) {
            Vertex a = random::below(rng, p), b = random::below(rng, p);
            if (a != b && !host.has_arc({a, b}))
                host.add_arc({a, b});
        }
        Family gamma(n);
        for (int i = 0; i < 3; ++i) {
            Digraph d(n, Loops::allow);
            for (int k = 0; k < 4; ++k)
                d.add_arc({random::below(rng, n), random::below(rng, n)});
            gamma.add("M" + std::to_string(i), d);
        }
        HAssignment h;
        for (const auto & [arc, mult] : host.arcs())
            h.assign(arc, "M" + std::to_string(random::below(rng, 3)));
        const auto product = otimes_h(host, gamma, h);
        EXPECT_EQ(adjacency_matrix(product.digraph), oracle::product_matrix(host, gamma, h));
        EXPECT_TRUE(adjacency_product_check(host, gamma, h));
    }
}

TEST(Product, ConstantAssignmentIsKronecker)
{
    random::Rng rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t p = random::between(rng, 2, 5), n = random::between(rng, 1, 4);
        Digraph host(p), factor(n, Loops::allow);
        for (int k = 0; k < 6; ++k) {
            Vertex a = random::below(rng, p), b = random::below(rng, p);
            if (a != b && !host.has_arc({a, b}))
                host.add_arc({a, b});
            factor.add_arc({random::below(rng, n), random::below(rng, n)});
        }
        const auto m = adjacency_matrix(factor);
        // multiplicities of the factor survive in the product
        EXPECT_EQ(adjacency_matrix(otimes(host, factor).digraph), kronecker(adjacency_matrix(host), m));
    }
}

TEST(Product, BlockCheckDetectsCorruption)
{
    const auto gamma = fixture::six_family();
    const auto host = oriented_cycle(4);
    auto wrong = otimes_h(host, gamma, fixture::six_h_alt()).digraph;
    EXPECT_FALSE(matches_block_construction(wrong, host, gamma, fixture::six_h()));
    EXPECT_TRUE(matches_block_construction(otimes_h(host, gamma, fixture::six_h()).digraph, host, gamma,
                                           fixture::six_h()));
}

TEST(Product, DisconnectedHostIsUnionOfProducts)
{
    random::Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random::cycle_instance(rng, 5, 4);
        auto b = random::cycle_instance(rng, 5, 4);
        if (b.gamma.carrier_order() != a.gamma.carrier_order())
            continue;
        // host = a.host + b.host, with b's members renamed into a's family
        Family gamma = a.gamma;
        for (const auto & [name, d] : b.gamma.members())
            gamma.add("b" + name, d);
        const Digraph host = disjoint_union(a.host, b.host);
        HAssignment h = a.h;
        for (const auto & [arc, name] : b.h.entries())
            h.assign({arc.tail + a.host.order(), arc.head + a.host.order()}, "b" + name);
        Family gb(b.gamma.carrier_order());
        for (const auto & [name, d] : b.gamma.members())
            gb.add(name, d);
        const auto whole = otimes_h(host, gamma, h).digraph;
        const auto parts = disjoint_union(otimes_h(a.host, a.gamma, a.h).digraph, otimes_h(b.host, gb, b.h).digraph);
        EXPECT_EQ(whole, parts);
    }
}

TEST(Product, ForestTimesOneRegularIsCopies)
{
    random::Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto forest = random::oriented_forest(rng, random::between(rng, 1, 3), 5);
        const std::size_t n = random::between(rng, 1, 5);
        Family gamma(n);
        gamma.add("S0", to_one_regular(random::permutation(rng, n)));
        gamma.add("S1", to_one_regular(random::permutation(rng, n)));
        HAssignment h;
        for (const auto & [arc, mult] : forest.arcs())
            h.assign(arc, random::below(rng, 2) ? "S0" : "S1");
        const auto product = otimes_h(forest, gamma, h).digraph;
        auto expected = class_sizes(weak_components(forest));
        Multiset copies;
        for (auto s : expected)
            copies.insert(copies.end(), n, s);
        std::sort(copies.begin(), copies.end());
        EXPECT_EQ(class_sizes(weak_components(product)), copies);
        // every copy has the forest's degree sequence, so sorted degrees repeat n times
        Multiset deg_forest, deg_product;
        for (auto d : underlying(forest).degrees())
            deg_forest.insert(deg_forest.end(), n, d);
        for (auto d : underlying(product).degrees())
            deg_product.push_back(d);
        std::sort(deg_forest.begin(), deg_forest.end());
        std::sort(deg_product.begin(), deg_product.end());
        EXPECT_EQ(deg_product, deg_forest);
    }
}

TEST(Validation, MissingArcsListedTogether)
{
    HAssignment h;
    h.assign({0, 1}, "F1");
    try {
        otimes_h(oriented_cycle(4), fixture::six_family(), h);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::partial_assignment);
        const std::string what = e.what();
        EXPECT_NE(what.find("(2, 3)"), std::string::npos);
        EXPECT_NE(what.find("(3, 4)"), std::string::npos);
        EXPECT_NE(what.find("(4, 1)"), std::string::npos);
    }
}

TEST(Validation, UnknownMemberAndExtraArc)
{
    auto h = fixture::six_h();
    h.assign({0, 1}, "nope");
    EXPECT_THROW(otimes_h(oriented_cycle(4), fixture::six_family(), h), Error);
    auto extra = fixture::six_h();
    extra.assign({0, 2}, "F1");
    try {
        otimes_h(oriented_cycle(4), fixture::six_family(), extra);
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::partial_assignment);
    }
}

TEST(Validation, SizeMismatchInFamily)
{
    Family gamma(3);
    try {
        gamma.add("X", oriented_cycle(4));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::size_mismatch);
    }
}

TEST(StarExtension, StrongOrientationUnchanged)
{
    const auto gamma = fixture::six_family();
    const auto star = star_extension(oriented_cycle(4), gamma, fixture::six_h());
    EXPECT_EQ(star.cycle_order, (std::vector<Vertex>{0, 1, 2, 3}));
    EXPECT_EQ(star.assignment, fixture::six_h());
}

TEST(StarExtension, FullyReversedUsesReverses)
{
    Family gamma(5);
    gamma.add("F", oriented_cycle(5));
    const auto host = oriented_cycle(4, Direction::backward);
    const auto star = star_extension(host, gamma, HAssignment::constant(host, "F"));
    for (const auto & [arc, name] : star.assignment.entries())
        EXPECT_EQ(name, "F^-");
}

TEST(StarExtension, UnderlyingGraphsAgreeExactly)
{
    random::Rng rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = random::between(rng, 3, 6), n = random::between(rng, 1, 5);
        Digraph host(m);
        for (Vertex i = 0; i < m; ++i)
            host.add_arc(random::below(rng, 2) ? Arc{i, (i + 1) % m} : Arc{(i + 1) % m, i});
        Family gamma(n);
        gamma.add("F", to_one_regular(random::permutation(rng, n)));
        gamma.add("G", to_one_regular(random::permutation(rng, n)));
        HAssignment h;
        for (const auto & [arc, mult] : host.arcs())
            h.assign(arc, random::below(rng, 2) ? "F" : "G");
        const auto star = star_extension(host, gamma, h);
        const auto original = underlying(otimes_h(host, gamma, h).digraph);
        const auto strong = underlying(otimes_h(star.strong_cycle, star.family, star.assignment).digraph);
        Graph relabeled(strong.order());
        for (const auto & e : strong.edges())
            relabeled.add_edge(star.cycle_order[e.u / n] * n + e.u % n, star.cycle_order[e.v / n] * n + e.v % n);
        EXPECT_EQ(relabeled, original);
    }
}

TEST(StarExtension, AlternatingOrientation)
{
    Family gamma(3);
    gamma.add("F", oriented_cycle(3));
    const Digraph host(4, {{0, 1}, {2, 1}, {2, 3}, {0, 3}});
    const auto h = HAssignment::constant(host, "F");
    const auto star = star_extension(host, gamma, h);
    EXPECT_EQ(class_sizes(components(underlying(otimes_h(host, gamma, h).digraph))),
              class_sizes(components(underlying(otimes_h(star.strong_cycle, star.family, star.assignment).digraph))));
}

TEST(StarExtension, RejectsNonCycles)
{
    Family gamma(2);
    gamma.add("F", oriented_cycle(2));
    const Digraph path(3, {{0, 1}, {1, 2}});
    try {
        star_extension(path, gamma, HAssignment::constant(path, "F"));
        FAIL();
    }
    catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::shape);
    }
}

TEST(Family, WithReversesChecksExistingNames)
{
    Family gamma(3);
    gamma.add("F", oriented_cycle(3));
    gamma.add("F^-", oriented_cycle(3));
    EXPECT_THROW(gamma.with_reverses(), Error);
    EXPECT_EQ(reversed_name("F"), "F^-");
    EXPECT_EQ(reversed_name("F^-"), "F");
}
