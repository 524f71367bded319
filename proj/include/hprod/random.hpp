#pragma once

// Seeded instance generators. Draws use rng() % bound directly so that a
// seed gives the same instances with every standard library.

#include <hprod/digraph.hpp>
#include <hprod/permutation.hpp>
#include <hprod/product.hpp>
#include <hprod/unicyclic.hpp>

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace hprod::random {

using Rng = std::mt19937_64;

inline std::size_t below(Rng & rng, std::size_t bound) { return bound ? static_cast<std::size_t>(rng() % bound) : 0; }

inline std::size_t between(Rng & rng, std::size_t lo, std::size_t hi) { return lo + below(rng, hi - lo + 1); }

inline Permutation permutation(Rng & rng, std::size_t n)
{
    std::vector<Vertex> images(n);
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t i = n; i > 1; --i)
        std::swap(images[i - 1], images[below(rng, i)]);
    return Permutation(std::move(images));
}

/// A cycle host C_m^+ with a family of 1-regular members and an assignment
/// onto its arcs.
struct CycleInstance {
    std::size_t m = 0;
    Digraph host;
    Family gamma;
    HAssignment h;
};

inline CycleInstance cycle_instance(Rng & rng, std::size_t max_m, std::size_t max_n, std::size_t max_members = 4)
{
    CycleInstance inst;
    inst.m = between(rng, 2, max_m);
    const std::size_t n = between(rng, 1, max_n);
    inst.host = oriented_cycle(inst.m);
    inst.gamma = Family(n);
    const std::size_t members = between(rng, 1, max_members);
    for (std::size_t i = 0; i < members; ++i)
        inst.gamma.add("F" + std::to_string(i + 1), to_one_regular(permutation(rng, n)));
    for (Vertex i = 0; i < inst.m; ++i)
        inst.h.assign({i, (i + 1) % inst.m}, inst.gamma.members()[below(rng, members)].first);
    return inst;
}

/// Random tree with the given order rooted at 0 (each vertex attaches to an earlier one).
inline RootedTree tree(Rng & rng, std::size_t order)
{
    Graph g(order);
    for (Vertex v = 1; v < order; ++v)
        g.add_edge(below(rng, v), v);
    return RootedTree(std::move(g), 0);
}

inline UnicyclicForm unicyclic_form(Rng & rng, std::size_t min_cycle, std::size_t max_cycle, std::size_t max_tree)
{
    UnicyclicForm form;
    const std::size_t m = between(rng, min_cycle, max_cycle);
    for (std::size_t i = 0; i < m; ++i)
        form.trees.push_back(tree(rng, between(rng, 1, max_tree)));
    return form;
}

/// Oriented forest: each tree vertex gets a random orientation of its parent edge.
inline Digraph oriented_forest(Rng & rng, std::size_t trees, std::size_t max_tree)
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::size_t order = 0;
    for (std::size_t t = 0; t < trees; ++t) {
        const std::size_t size = between(rng, 1, max_tree);
        for (Vertex v = 1; v < size; ++v)
            edges.emplace_back(order + below(rng, v), order + v);
        order += size;
    }
    Digraph d(order);
    for (auto [a, b] : edges)
        d.add_arc(below(rng, 2) ? Arc{a, b} : Arc{b, a});
    return d;
}

} // namespace hprod::random
