#include "oracles.hpp"

#include <hprod/permutation.hpp>
#include <hprod/product.hpp>
#include <hprod/rainbow.hpp>
#include <hprod/random.hpp>
#include <hprod/unicyclic.hpp>

#include <gtest/gtest.h>

#include <algorithm>

using namespace hprod;

namespace {

Permutation ph_of(const random::CycleInstance & inst)
{
    std::vector<Permutation> factors;
    for (Vertex i = 0; i < inst.m; ++i)
        factors.push_back(from_one_regular(inst.gamma.member(inst.h.at({i, (i + 1) % inst.m}))));
    return product_ph(factors);
}

Multiset sorted(Multiset s)
{
    std::sort(s.begin(), s.end());
    return s;
}

} // namespace

TEST(CycleProducts, FourWayAgreement)
{
    random::Rng rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random::cycle_instance(rng, 6, 7);
        const auto product = otimes_h(inst.host, inst.gamma, inst.h).digraph;
        const auto actual = sorted(cycle_length_multiset(product));
        EXPECT_EQ(sorted(predict_components(inst.m, ph_of(inst))), actual);
        EXPECT_EQ(sorted(oracle::cycle_lengths(oracle::product_matrix(inst.host, inst.gamma, inst.h))), actual);
        const auto mh = build_mh(inst.m, inst.gamma, inst.h);
        EXPECT_EQ(sorted(circuit_lengths(find_rainbow_circuits(mh, ColorSequence::natural(inst.m)))), actual);
    }
}

TEST(CycleProducts, EulerianIffSingleCycle)
{
    random::Rng rng(102);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random::cycle_instance(rng, 5, 6);
        const std::size_t n = inst.gamma.carrier_order();
        const bool single = cycle_decomposition(ph_of(inst)).cycles.size() == 1;
        const auto mh = build_mh(inst.m, inst.gamma, inst.h);
        EXPECT_EQ(is_rainbow_eulerian(mh, ColorSequence::natural(inst.m)), single);
        const auto strong = oracle::strong_sizes(oracle::product_matrix(inst.host, inst.gamma, inst.h));
        EXPECT_EQ(strong.size() == 1, single);
        EXPECT_EQ(strong.size(), cycle_decomposition(ph_of(inst)).cycles.size());
        EXPECT_LE(strong.size(), n);
    }
}

TEST(CycleProducts, CircuitsPartitionArcsForEverySequence)
{
    random::Rng rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random::cycle_instance(rng, 5, 6);
        const auto mh = build_mh(inst.m, inst.gamma, inst.h);
        const auto base = sorted(circuit_lengths(find_rainbow_circuits(mh, ColorSequence::natural(inst.m))));
        std::vector<std::size_t> order(inst.m);
        for (std::size_t i = 0; i < inst.m; ++i)
            order[i] = i;
        const std::size_t shift = random::below(rng, inst.m);
        std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(shift), order.end());
        const auto circuits = find_rainbow_circuits(mh, ColorSequence(order));
        EXPECT_TRUE(circuits_partition_arcs(mh, circuits));
        EXPECT_EQ(sorted(circuit_lengths(circuits)), base);
    }
}

TEST(CycleProducts, ReversalCountDecides)
{
    random::Rng rng(104);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = random::between(rng, 2, 7), n = random::between(rng, 2, 9);
        Family gamma = plus_minus_family(n);
        HAssignment h;
        long long r = 0;
        for (Vertex i = 0; i < m; ++i) {
            const bool minus = random::below(rng, 2);
            r += minus;
            h.assign({i, (i + 1) % m}, minus ? "C-" : "C+");
        }
        const std::size_t k = oracle::additive_order(static_cast<long long>(m) - 2 * r, n);
        const auto lengths = sorted(cycle_length_multiset(otimes_h(oriented_cycle(m), gamma, h).digraph));
        EXPECT_EQ(lengths, Multiset(n / k, m * k));
    }
}

TEST(Forests, ProductIsNCopies)
{
    random::Rng rng(105);
    for (int trial = 0; trial < 50; ++trial) {
        const auto forest = random::oriented_forest(rng, random::between(rng, 1, 3), 5);
        const std::size_t n = random::between(rng, 1, 5);
        Family gamma(n);
        for (int i = 0; i < 3; ++i)
            gamma.add("F" + std::to_string(i + 1), to_one_regular(random::permutation(rng, n)));
        HAssignment h;
        for (const auto & [arc, mult] : forest.arcs())
            h.assign(arc, "F" + std::to_string(random::below(rng, 3) + 1));
        const Graph product = underlying(otimes_h(forest, gamma, h).digraph);
        const Graph host = underlying(forest);
        EXPECT_EQ(product.size(), n * host.size());
        Multiset expected;
        for (std::size_t c = 0; c < n; ++c)
            for (auto s : class_sizes(components(host)))
                expected.push_back(s);
        EXPECT_EQ(sorted(class_sizes(components(product))), sorted(expected));
    }
}

TEST(Unicyclic, GeneralFactorsMatchProduct)
{
    random::Rng rng(106);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<UnicyclicForm> forms;
        for (std::size_t c = random::between(rng, 1, 2); c > 0; --c)
            forms.push_back(random::unicyclic_form(rng, 3, 5, 3));
        const std::size_t n = random::between(rng, 2, 4);
        Family gamma(n);
        for (int i = 0; i < 3; ++i)
            gamma.add("F" + std::to_string(i + 1), to_one_regular(random::permutation(rng, n)));
        const auto d = orient(forms);
        HAssignment h;
        std::vector<std::vector<std::string>> names;
        for (const auto & cycle : d.cycle_arcs) {
            names.emplace_back();
            for (const auto & a : cycle) {
                names.back().push_back("F" + std::to_string(random::below(rng, 3) + 1));
                h.assign(a, names.back().back());
            }
        }
        for (const auto & a : d.tree_arcs)
            h.assign(a, "F" + std::to_string(random::below(rng, 3) + 1));
        EXPECT_EQ(structure_key(predict_by_factors(forms, gamma, names)), structure_key(product_structure(d.digraph, gamma, h)));
    }
}
