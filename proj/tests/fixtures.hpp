#pragma once

#include <hprod/digraph.hpp>
#include <hprod/permutation.hpp>
#include <hprod/product.hpp>
#include <hprod/unicyclic.hpp>

#include <string>
#include <vector>

namespace fixture {

using namespace hprod;

inline Digraph cycle_member(const std::string & cycles, std::size_t n)
{
    return to_one_regular(parse_cycles(cycles, n));
}

/// Six-vertex members F1, F2, F3 and the reverse of F1, read off the
/// printed cycle forms.
inline Family six_family()
{
    Family gamma(6);
    gamma.add("F1", cycle_member("(1 2 3 4 5 6)", 6));
    gamma.add("F2", cycle_member("(1 3 5 4 2 6)", 6));
    gamma.add("F1^-", cycle_member("(1 6 5 4 3 2)", 6));
    gamma.add("F3", cycle_member("(1 5 4 6 3 2)", 6));
    return gamma;
}

inline HAssignment on_cycle(const std::vector<std::string> & names)
{
    HAssignment h;
    const std::size_t m = names.size();
    for (Vertex i = 0; i < m; ++i)
        h.assign({i, (i + 1) % m}, names[i]);
    return h;
}

inline HAssignment six_h() { return on_cycle({"F1", "F2", "F1^-", "F3"}); }
inline HAssignment six_h_alt() { return on_cycle({"F1", "F3", "F1^-", "F2"}); }

/// Four vertices, three members; their composition around C_3^+ is a 4-cycle.
inline Family four_family()
{
    Family gamma(4);
    gamma.add("A", cycle_member("(1 2)(3 4)", 4));
    gamma.add("B", cycle_member("(1 3)(2 4)", 4));
    gamma.add("C", cycle_member("(1 2 4 3)", 4));
    return gamma;
}

inline HAssignment four_h() { return on_cycle({"A", "B", "C"}); }

inline UnicyclicForm trivial_cycle(std::size_t m)
{
    UnicyclicForm f;
    f.trees.assign(m, RootedTree());
    return f;
}

/// (P_1(w_1), P_2(w_2), P_3(w_3))^3 with w_2 an end of P_2 and w_3 the centre of P_3.
inline UnicyclicForm periodic_paths()
{
    UnicyclicForm f;
    for (int k = 0; k < 3; ++k) {
        f.trees.push_back(RootedTree());
        f.trees.push_back(RootedTree::path(2, 0));
        f.trees.push_back(RootedTree::path(3, 1));
    }
    return f;
}

/// (P_1, P_2, P_2): a triangle with pendant edges at two of its vertices.
inline UnicyclicForm p1_p2_p2()
{
    return UnicyclicForm{{RootedTree(), RootedTree::path(2, 0), RootedTree::path(2, 0)}};
}

} // namespace fixture
