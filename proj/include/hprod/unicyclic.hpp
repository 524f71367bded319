#pragma once

// Graphs whose components each contain exactly one cycle, written as cyclic
// tuples of rooted trees (T_1(w_1), ..., T_m(w_m)), and what the product with
// {C_n^+, C_n^-} (or any 1-regular family) does to them.

#include <hprod/digraph.hpp>
#include <hprod/permutation.hpp>
#include <hprod/product.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hprod {

class RootedTree {
public:
    /// The trivial tree P_1.
    RootedTree() : tree_(1), root_(0) {}

    RootedTree(Graph tree, Vertex root) : tree_(std::move(tree)), root_(root)
    {
        if (tree_.order() == 0 || root_ >= tree_.order())
            throw Error(ErrorCode::shape, "a rooted tree needs at least one vertex and a valid root");
        if (tree_.size() + 1 != tree_.order() || components(tree_).size() != 1)
            throw Error(ErrorCode::shape, "graph is not a tree");
    }

    /// P_s rooted at the given 0-based position along the path.
    static RootedTree path(std::size_t s, Vertex root)
    {
        Graph g(s);
        for (Vertex i = 0; i + 1 < s; ++i)
            g.add_edge(i, i + 1);
        return RootedTree(std::move(g), root);
    }

    /// Nested-parenthesis encoding, root first: "()" is P_1, "(()())" is P_3
    /// rooted at its centre.
    static RootedTree parse(std::string_view text)
    {
        std::vector<std::pair<Vertex, Vertex>> edges;
        std::vector<Vertex> open;
        std::size_t count = 0;
        bool closed_root = false;
        for (char c : text) {
            if (c == ' ' || c == '\t')
                continue;
            if (closed_root)
                throw Error(ErrorCode::parse, "trailing characters after root in \"" + std::string(text) + "\"");
            if (c == '(') {
                Vertex v = count++;
                if (!open.empty())
                    edges.emplace_back(open.back(), v);
                open.push_back(v);
            }
            else if (c == ')') {
                if (open.empty())
                    throw Error(ErrorCode::parse, "unbalanced ')' in \"" + std::string(text) + "\"");
                open.pop_back();
                closed_root = open.empty();
            }
            else
                throw Error(ErrorCode::parse, std::string("unexpected '") + c + "' in tree \"" + std::string(text) + "\"");
        }
        if (!closed_root)
            throw Error(ErrorCode::parse, "unbalanced tree encoding \"" + std::string(text) + "\"");
        Graph g(count);
        for (const auto & [a, b] : edges)
            g.add_edge(a, b);
        return RootedTree(std::move(g), 0);
    }

    const Graph & graph() const noexcept { return tree_; }
    Vertex root() const noexcept { return root_; }
    std::size_t order() const noexcept { return tree_.order(); }

    /// Canonical code: children's codes sorted. Equal codes iff isomorphic as rooted trees.
    std::string encode() const
    {
        const auto nbrs = tree_.neighbours();
        // iterative post-order from the root
        std::vector<Vertex> parent(order(), root_), order_seen;
        std::vector<Vertex> stack{root_};
        std::vector<bool> seen(order(), false);
        seen[root_] = true;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            order_seen.push_back(v);
            for (Vertex w : nbrs[v])
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push_back(w);
                }
        }
        std::vector<std::vector<std::string>> child_codes(order());
        std::vector<std::string> code(order());
        for (auto it = order_seen.rbegin(); it != order_seen.rend(); ++it) {
            Vertex v = *it;
            auto & kids = child_codes[v];
            std::sort(kids.begin(), kids.end());
            code[v] = "(";
            for (const auto & k : kids)
                code[v] += k;
            code[v] += ")";
            if (v != root_)
                child_codes[parent[v]].push_back(std::move(code[v]));
        }
        return code[root_];
    }

    friend bool operator==(const RootedTree & a, const RootedTree & b) { return a.encode() == b.encode(); }

private:
    Graph tree_;
    Vertex root_;
};

/// Cyclic tuple of rooted trees; the roots, in tuple order, form the cycle.
/// Tuples shorter than 3 only occur as periodic bases.
struct UnicyclicForm {
    std::vector<RootedTree> trees;

    std::size_t cycle_length() const noexcept { return trees.size(); }

    std::size_t order() const
    {
        std::size_t total = 0;
        for (const auto & t : trees)
            total += t.order();
        return total;
    }

    std::vector<std::string> codes() const
    {
        std::vector<std::string> result;
        for (const auto & t : trees)
            result.push_back(t.encode());
        return result;
    }
};

/// (base)^multiplicity: the base tuple repeated multiplicity times.
struct PeriodicForm {
    UnicyclicForm base;
    std::size_t multiplicity = 1;

    UnicyclicForm expand() const
    {
        UnicyclicForm result;
        for (std::size_t i = 0; i < multiplicity; ++i)
            result.trees.insert(result.trees.end(), base.trees.begin(), base.trees.end());
        return result;
    }
};

/// Lexicographically least code sequence over all rotations and reflections.
inline std::vector<std::string> dihedral_key(const UnicyclicForm & form)
{
    const auto codes = form.codes();
    const std::size_t m = codes.size();
    std::vector<std::string> best;
    for (int reflect = 0; reflect < 2; ++reflect)
        for (std::size_t shift = 0; shift < m; ++shift) {
            std::vector<std::string> candidate(m);
            for (std::size_t i = 0; i < m; ++i)
                candidate[i] = reflect ? codes[(shift + m - i) % m] : codes[(shift + i) % m];
            if (best.empty() || candidate < best)
                best = std::move(candidate);
        }
    return best;
}

inline bool equivalent(const UnicyclicForm & a, const UnicyclicForm & b) { return dihedral_key(a) == dihedral_key(b); }

using FormKey = std::vector<std::vector<std::string>>;

/// Order-independent key of a disjoint union of forms.
inline FormKey structure_key(const std::vector<UnicyclicForm> & forms)
{
    FormKey key;
    for (const auto & f : forms)
        key.push_back(dihedral_key(f));
    std::sort(key.begin(), key.end());
    return key;
}

inline FormKey structure_key(const std::vector<PeriodicForm> & forms)
{
    std::vector<UnicyclicForm> expanded;
    for (const auto & f : forms)
        expanded.push_back(f.expand());
    return structure_key(expanded);
}

/// Graph of a form plus where each tree's root sits.
struct AssembledForm {
    Graph graph;
    std::vector<Vertex> cycle; // roots in tuple order
    std::vector<Vertex> offsets; // first vertex of each tree
};

inline AssembledForm assemble_layout(const std::vector<UnicyclicForm> & forms)
{
    std::size_t total = 0;
    for (const auto & f : forms) {
        if (f.cycle_length() < 3)
            throw Error(ErrorCode::shape, "a unicyclic form needs a cycle of length at least 3, got " +
                                              std::to_string(f.cycle_length()));
        total += f.order();
    }
    AssembledForm result{Graph(total), {}, {}};
    Vertex offset = 0;
    for (const auto & f : forms) {
        std::vector<Vertex> roots;
        for (const auto & t : f.trees) {
            result.offsets.push_back(offset);
            for (const auto & e : t.graph().edges())
                result.graph.add_edge(offset + e.u, offset + e.v);
            roots.push_back(offset + t.root());
            result.cycle.push_back(offset + t.root());
            offset += t.order();
        }
        for (std::size_t j = 0; j < roots.size(); ++j)
            result.graph.add_edge(roots[j], roots[(j + 1) % roots.size()]);
    }
    return result;
}

inline Graph assemble(const UnicyclicForm & form) { return assemble_layout({form}).graph; }

inline Graph assemble(const std::vector<UnicyclicForm> & forms) { return assemble_layout(forms).graph; }

namespace detail {

/// Cycle vertices of a unicyclic component found by repeatedly stripping leaves.
inline std::vector<bool> cycle_membership(const Graph & g)
{
    const auto nbrs = g.neighbours();
    auto degree = g.degrees();
    std::vector<bool> removed(g.order(), false);
    std::vector<Vertex> leaves;
    for (Vertex v = 0; v < g.order(); ++v)
        if (degree[v] <= 1)
            leaves.push_back(v);
    while (!leaves.empty()) {
        Vertex v = leaves.back();
        leaves.pop_back();
        if (removed[v])
            continue;
        removed[v] = true;
        for (Vertex w : nbrs[v])
            if (!removed[w] && --degree[w] == 1)
                leaves.push_back(w);
    }
    std::vector<bool> on_cycle(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        on_cycle[v] = !removed[v];
    return on_cycle;
}

struct ComponentCycle {
    std::vector<Vertex> cycle; // traversal order from the minimum cycle vertex
    std::vector<Vertex> vertices;
};

inline std::vector<ComponentCycle> unicyclic_components(const Graph & g)
{
    const auto nbrs = g.neighbours();
    const auto on_cycle = cycle_membership(g);
    std::vector<ComponentCycle> result;
    for (const auto & comp : components(g)) {
        std::size_t edge_count = 0;
        for (Vertex v : comp)
            edge_count += nbrs[v].size();
        edge_count /= 2;
        if (edge_count != comp.size())
            throw Error(ErrorCode::not_unicyclic, "component containing vertex " + std::to_string(comp.front() + 1) +
                                                      " has " + std::to_string(comp.size()) + " vertices and " +
                                                      std::to_string(edge_count) + " edges");
        ComponentCycle cc;
        cc.vertices = comp;
        Vertex start = *std::find_if(comp.begin(), comp.end(), [&](Vertex v) { return on_cycle[v]; });
        std::vector<Vertex> cyc_nbrs;
        for (Vertex w : nbrs[start])
            if (on_cycle[w])
                cyc_nbrs.push_back(w);
        if (cyc_nbrs.size() != 2)
            throw Error(ErrorCode::not_unicyclic, "component containing vertex " + std::to_string(comp.front() + 1) +
                                                      " has no simple cycle");
        cc.cycle.push_back(start);
        Vertex prev = start, cur = cyc_nbrs.front();
        while (cur != start) {
            cc.cycle.push_back(cur);
            Vertex next = start;
            for (Vertex w : nbrs[cur])
                if (on_cycle[w] && w != prev) {
                    next = w;
                    break;
                }
            prev = cur;
            cur = next;
        }
        result.push_back(std::move(cc));
    }
    return result;
}

} // namespace detail

/// Per component (ordered by minimum vertex) its cycle and the rooted trees
/// hanging from each cycle vertex.
inline std::vector<UnicyclicForm> recognize(const Graph & g)
{
    const auto nbrs = g.neighbours();
    const auto comps = detail::unicyclic_components(g);
    std::vector<bool> on_cycle(g.order(), false);
    for (const auto & cc : comps)
        for (Vertex v : cc.cycle)
            on_cycle[v] = true;

    std::vector<UnicyclicForm> result;
    for (const auto & cc : comps) {
        UnicyclicForm form;
        for (Vertex root : cc.cycle) {
            std::map<Vertex, Vertex> local{{root, 0}};
            std::vector<std::pair<Vertex, Vertex>> edges;
            std::deque<Vertex> queue{root};
            while (!queue.empty()) {
                Vertex v = queue.front();
                queue.pop_front();
                for (Vertex w : nbrs[v]) {
                    if (on_cycle[w] || local.contains(w))
                        continue;
                    Vertex id = local.size();
                    local.emplace(w, id);
                    edges.emplace_back(local.at(v), id);
                    queue.push_back(w);
                }
            }
            Graph tree(local.size());
            for (const auto & [a, b] : edges)
                tree.add_edge(a, b);
            form.trees.emplace_back(std::move(tree), 0);
        }
        result.push_back(std::move(form));
    }
    return result;
}

/// Largest k dividing the tuple length such that the tuple is k-periodic.
inline PeriodicForm detect_period(const UnicyclicForm & form)
{
    const auto codes = form.codes();
    const std::size_t m = codes.size();
    for (std::size_t d = 1; d <= m; ++d) {
        if (m % d != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = d; i < m && periodic; ++i)
            periodic = codes[i] == codes[i % d];
        if (periodic) {
            UnicyclicForm base;
            base.trees.assign(form.trees.begin(), form.trees.begin() + static_cast<std::ptrdiff_t>(d));
            return {std::move(base), m / d};
        }
    }
    return {form, 1};
}

/// A digraph whose underlying graph is a union of unicyclic components, with
/// each cycle strongly oriented.
struct OrientedUnicyclic {
    Digraph digraph;
    std::vector<std::vector<Arc>> cycle_arcs; // per component, in cycle order
    std::vector<Arc> tree_arcs;
};

/// Cycles oriented along the tuple order, tree arcs pointing away from the cycle.
/// Vertex numbering matches assemble().
inline OrientedUnicyclic orient(const std::vector<UnicyclicForm> & forms)
{
    const auto layout = assemble_layout(forms);
    const auto nbrs = layout.graph.neighbours();
    OrientedUnicyclic result{Digraph(layout.graph.order()), {}, {}};
    std::vector<bool> on_cycle(layout.graph.order(), false);
    for (Vertex v : layout.cycle)
        on_cycle[v] = true;
    std::size_t pos = 0;
    for (const auto & f : forms) {
        std::vector<Arc> arcs;
        const std::size_t m = f.cycle_length();
        for (std::size_t j = 0; j < m; ++j) {
            Arc a{layout.cycle[pos + j], layout.cycle[pos + (j + 1) % m]};
            result.digraph.add_arc(a);
            arcs.push_back(a);
        }
        result.cycle_arcs.push_back(std::move(arcs));
        pos += m;
    }
    std::vector<bool> seen = on_cycle;
    for (Vertex root : layout.cycle) {
        std::deque<Vertex> queue{root};
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : nbrs[v])
                if (!seen[w]) {
                    seen[w] = true;
                    Arc a{v, w};
                    result.digraph.add_arc(a);
                    result.tree_arcs.push_back(a);
                    queue.push_back(w);
                }
        }
    }
    return result;
}

inline OrientedUnicyclic orient(const UnicyclicForm & form) { return orient(std::vector<UnicyclicForm>{form}); }

/// Recovers cycle and tree arcs of an existing digraph whose cycles are
/// strongly oriented (as every product with a 1-regular family leaves them).
inline OrientedUnicyclic analyze_unicyclic(const Digraph & d)
{
    const Graph g = underlying(d);
    if (g.size() != d.arcs().size())
        throw Error(ErrorCode::not_simple, "digraph has opposite arcs between the same pair of vertices");
    const auto comps = detail::unicyclic_components(g);
    OrientedUnicyclic result{d, {}, {}};
    std::set<Arc> cycle_set;
    for (const auto & cc : comps) {
        std::vector<Arc> arcs;
        const std::size_t m = cc.cycle.size();
        const bool forward = d.has_arc({cc.cycle[0], cc.cycle[1]});
        for (std::size_t j = 0; j < m; ++j) {
            Vertex a = cc.cycle[j], b = cc.cycle[(j + 1) % m];
            Arc arc = forward ? Arc{a, b} : Arc{b, a};
            if (!d.has_arc(arc))
                throw Error(ErrorCode::shape, "cycle through vertex " + std::to_string(cc.cycle[0] + 1) +
                                                  " is not strongly oriented");
            arcs.push_back(arc);
            cycle_set.insert(arc);
        }
        if (!forward)
            std::reverse(arcs.begin(), arcs.end());
        result.cycle_arcs.push_back(std::move(arcs));
    }
    for (const auto & [arc, mult] : d.arcs())
        if (!cycle_set.contains(arc))
            result.tree_arcs.push_back(arc);
    return result;
}

inline std::size_t gcd_size(std::size_t a, std::size_t b) { return std::gcd(a, b); }

/// Order of the subgroup of Z_n generated by g (g taken mod n, may be negative).
inline std::size_t cyclic_order(std::int64_t g, std::size_t n)
{
    const auto nn = static_cast<std::int64_t>(n);
    const auto residue = static_cast<std::size_t>(((g % nn) + nn) % nn);
    return n / std::gcd(residue, n);
}

/// Component structure of und(D (x)_h {C_n^+, C_n^-}) when h reverses exactly
/// r_i arcs of cycle i: n/k_i copies of form_i^{k_i}, k_i = |<m_i - 2 r_i>| in Z_n.
inline std::vector<PeriodicForm> predict_by_reversals(const std::vector<UnicyclicForm> & forms, std::size_t n,
                                               const std::vector<std::size_t> & r)
{
    if (r.size() != forms.size())
        throw Error(ErrorCode::size_mismatch, "need one reversal count per component");
    if (n < 2)
        throw Error(ErrorCode::invalid_order, "n must be at least 2");
    std::vector<PeriodicForm> result;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const std::size_t m = forms[i].cycle_length();
        if (r[i] > m)
            throw Error(ErrorCode::precondition, "component " + std::to_string(i + 1) + " reverses " +
                                                     std::to_string(r[i]) + " arcs of a cycle of length " +
                                                     std::to_string(m));
        const std::size_t k = cyclic_order(static_cast<std::int64_t>(m) - 2 * static_cast<std::int64_t>(r[i]), n);
        for (std::size_t c = 0; c < n / k; ++c)
            result.push_back({forms[i], k});
    }
    return result;
}

/// For each component i and each cycle sigma of P_{h_i}, one copy of form_i^{|sigma|}.
/// factor_names[i] lists the members assigned to cycle i's arcs in cycle order.
inline std::vector<PeriodicForm> predict_by_factors(const std::vector<UnicyclicForm> & forms, const Family & gamma,
                                               const std::vector<std::vector<std::string>> & factor_names)
{
    if (factor_names.size() != forms.size())
        throw Error(ErrorCode::size_mismatch, "need one factor sequence per component");
    std::vector<PeriodicForm> result;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (factor_names[i].size() != forms[i].cycle_length())
            throw Error(ErrorCode::size_mismatch, "component " + std::to_string(i + 1) + " has a cycle of length " +
                                                      std::to_string(forms[i].cycle_length()) + " but " +
                                                      std::to_string(factor_names[i].size()) + " factors");
        std::vector<Permutation> factors;
        for (const auto & name : factor_names[i])
            factors.push_back(from_one_regular(gamma.member(name)));
        for (const auto & cycle : cycle_decomposition(product_ph(factors)).cycles)
            result.push_back({forms[i], cycle.size()});
    }
    return result;
}

/// {C_n^+, C_n^-} under the names used by the constructions below.
inline Family plus_minus_family(std::size_t n)
{
    Family gamma(n);
    gamma.add("C+", oriented_cycle(n, Direction::forward));
    gamma.add("C-", oriented_cycle(n, Direction::backward));
    return gamma;
}

/// Assignment reversing the first r[i] arcs of cycle i; every other arc gets
/// the forward member.
inline HAssignment reversal_assignment(const OrientedUnicyclic & d, const std::vector<std::size_t> & r,
                                       const std::string & plus = "C+", const std::string & minus = "C-")
{
    if (r.size() != d.cycle_arcs.size())
        throw Error(ErrorCode::size_mismatch, "need one reversal count per cycle");
    HAssignment h;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] > d.cycle_arcs[i].size())
            throw Error(ErrorCode::precondition, "cannot reverse " + std::to_string(r[i]) + " arcs of a cycle of length " +
                                                     std::to_string(d.cycle_arcs[i].size()));
        for (std::size_t j = 0; j < d.cycle_arcs[i].size(); ++j)
            h.assign(d.cycle_arcs[i][j], j < r[i] ? minus : plus);
    }
    for (const auto & a : d.tree_arcs)
        h.assign(a, plus);
    return h;
}

/// Brute force: recognize the underlying graph of the actual product.
inline std::vector<UnicyclicForm> product_structure(const Digraph & d, const Family & gamma, const HAssignment & h)
{
    return recognize(underlying(otimes_h(d, gamma, h).digraph));
}

enum class ConditionForm { strict, relaxed };

/// Step counts and split counts reproducing sum_i a_i G^{n^{s+i}} by repeated
/// products with {C_n^+, C_n^-}.
struct DecompositionPlan {
    std::size_t l = 0, m = 0, n = 0, s = 0;
    std::vector<std::size_t> a_seq;
    std::vector<std::size_t> r_values; // r_i for i = 1..l+s+1: growth count on a cycle of length m n^{i-1}
    std::vector<std::size_t> r_prime_values; // r'_i: split count on the same cycle
    std::vector<std::vector<std::size_t>> j_values; // j_values[u-1][k-1] = j_k^u
};

/// Reversal count that turns a cycle of length L into one cycle of length nL.
inline std::size_t growth_reversals(std::size_t length) { return length % 2 ? (length - 1) / 2 : (length - 2) / 2; }

/// Reversal count that turns a cycle of length L into n copies of itself.
inline std::size_t split_reversals(std::size_t length, std::size_t n)
{
    return length % 2 ? (length + n) / 2 : length / 2;
}

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t e)
{
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (result > UINT64_MAX / base)
            throw Error(ErrorCode::precondition, "plan parameters overflow 64-bit arithmetic");
        result *= base;
    }
    return result;
}

/// Undo the last of u split/grow rounds. state has u+1 entries.
inline bool solve_rounds(const std::vector<std::size_t> & state, std::size_t n,
                         std::vector<std::vector<std::size_t>> & rows)
{
    const std::size_t u = state.size() - 1;
    if (u == 0)
        return state.front() == n;
    if (state[0] % n != 0)
        return false;
    std::vector<std::size_t> j(u + 1, 0); // j[k] = j_k^u, k = 1..u
    j[1] = state[0] / n;

    // choose j_2..j_u (largest first), then recurse on the previous state
    auto choose = [&](auto && self, std::size_t k) -> bool {
        if (k > u) {
            std::vector<std::size_t> prev(u);
            for (std::size_t t = 1; t <= u; ++t) {
                std::size_t grown = state[t] - (t < u ? n * j[t + 1] : 0);
                prev[t - 1] = grown + j[t];
            }
            rows.emplace_back(j.begin() + 1, j.end());
            if (solve_rounds(prev, n, rows))
                return true;
            rows.pop_back();
            return false;
        }
        for (std::size_t v = state[k - 1] / n + 1; v-- > 0;) {
            j[k] = v;
            if (self(self, k + 1))
                return true;
        }
        return false;
    };
    return choose(choose, 2);
}

} // namespace detail

/// Checks the feasibility conditions on a_seq in the chosen form; returns the
/// first violated one, or nothing.
inline std::optional<std::string> plan_condition_violation(std::size_t l, std::size_t n,
                                                           const std::vector<std::size_t> & a_seq,
                                                           ConditionForm form = ConditionForm::strict)
{
    if (a_seq.size() != l + 1)
        return "a-sequence must have l+1 = " + std::to_string(l + 1) + " entries";
    if (l == 0)
        return a_seq[0] == n ? std::nullopt : std::optional<std::string>("l = 0 requires a_0 = n");
    // sum a_i / n^{l-i} = n  <=>  sum a_i n^i = n^{l+1}
    std::uint64_t weighted = 0;
    for (std::size_t i = 0; i <= l; ++i)
        weighted += a_seq[i] * detail::checked_pow(n, i);
    if (weighted != detail::checked_pow(n, l + 1))
        return "sum of a_i / n^(l-i) is not n";
    for (std::size_t k = 0; k < l; ++k) {
        std::uint64_t prefix = 0;
        for (std::size_t i = 0; i <= k; ++i)
            prefix += a_seq[i] * detail::checked_pow(n, i);
        const std::size_t denominator_exp = form == ConditionForm::strict ? k + 1 : k;
        if (prefix % detail::checked_pow(n, denominator_exp) != 0)
            return "prefix condition fails at k = " + std::to_string(k);
    }
    return std::nullopt;
}

inline DecompositionPlan plan_decomposition(std::size_t l, std::size_t m, std::size_t n, std::size_t s,
                                    const std::vector<std::size_t> & a_seq,
                                    ConditionForm form = ConditionForm::strict)
{
    if (n < 3 || n % 2 == 0)
        throw Error(ErrorCode::precondition, "n must be odd and at least 3, got " + std::to_string(n));
    if (m < 1)
        throw Error(ErrorCode::precondition, "m must be at least 1");
    if (m % 2 == 1 && m < n)
        throw Error(ErrorCode::precondition, "odd m must be at least n (m = " + std::to_string(m) +
                                                 ", n = " + std::to_string(n) + ")");
    if (auto why = plan_condition_violation(l, n, a_seq, form))
        throw Error(ErrorCode::infeasible, *why);

    DecompositionPlan plan{l, m, n, s, a_seq, {}, {}, {}};
    for (std::size_t i = 1; i <= l + s + 1; ++i) {
        const std::size_t length = m * detail::checked_pow(n, i - 1);
        plan.r_values.push_back(growth_reversals(length));
        plan.r_prime_values.push_back(split_reversals(length, n));
    }
    std::vector<std::vector<std::size_t>> rows;
    if (!detail::solve_rounds(a_seq, n, rows))
        throw Error(ErrorCode::infeasible, "no nonnegative solution of the split-count system");
    std::reverse(rows.begin(), rows.end());
    plan.j_values = std::move(rows);
    return plan;
}

/// Evaluates the closed-form counts a_0..a_l from the j values.
inline std::vector<std::int64_t> counts_from_j(std::size_t l, std::size_t n,
                                               const std::vector<std::vector<std::size_t>> & j_values)
{
    auto j = [&](std::size_t t, std::size_t u) { return static_cast<std::int64_t>(j_values.at(u - 1).at(t - 1)); };
    const auto nn = static_cast<std::int64_t>(n);
    std::vector<std::int64_t> a(l + 1, 0);
    std::int64_t diagonal = 0;
    for (std::size_t k = 1; k <= l; ++k)
        diagonal += j(k, k);
    a[l] = nn - diagonal;
    for (std::size_t k = 1; k <= l; ++k) {
        std::int64_t v = 0;
        for (std::size_t t = 1; t <= k; ++t)
            v += nn * j(t, l - k + t);
        for (std::size_t t = 1; t + 1 <= k; ++t)
            v -= j(t, l - k + t + 1);
        a[k - 1] = v;
    }
    return a;
}

/// Per-cycle reversal counts for product step `step` (1-based, up to
/// l+s+1) of the plan, given the current digraph's cycles.
inline std::vector<std::size_t> plan_step_reversals(const DecompositionPlan & plan, std::size_t step,
                                                    const OrientedUnicyclic & current)
{
    if (step == 0 || step > plan.l + plan.s + 1)
        throw Error(ErrorCode::precondition, "plan has no step " + std::to_string(step));
    if (step <= plan.s + 1) {
        if (current.cycle_arcs.size() != 1)
            throw Error(ErrorCode::construction_bug, "expected a single component before step " + std::to_string(step));
        return {step <= plan.s ? plan.r_values[step - 1] : plan.r_prime_values[plan.s]};
    }
    const std::size_t round = step - plan.s - 1;
    std::vector<std::size_t> split_left = plan.j_values.at(round - 1);
    std::vector<std::size_t> reversals;
    const std::size_t smallest = plan.m * detail::checked_pow(plan.n, plan.s);
    for (const auto & cycle : current.cycle_arcs) {
        const std::size_t length = cycle.size();
        std::size_t type = 0;
        for (std::size_t base = smallest; base < length; base *= plan.n)
            ++type;
        if (type >= split_left.size())
            throw Error(ErrorCode::construction_bug, "unexpected cycle length " + std::to_string(length));
        if (split_left[type] > 0) {
            --split_left[type];
            reversals.push_back(split_reversals(length, plan.n));
        }
        else
            reversals.push_back(growth_reversals(length));
    }
    if (std::any_of(split_left.begin(), split_left.end(), [](std::size_t v) { return v > 0; }))
        throw Error(ErrorCode::construction_bug, "not enough components to split in round " + std::to_string(round));
    return reversals;
}

struct PlanExecution {
    Family gamma;
    std::vector<Digraph> digraphs; // D_1 .. D_{l+s+2}
    std::vector<HAssignment> assignments; // h_1 .. h_{l+s+1}
};

/// Runs the plan through actual products starting from G with its cycle
/// strongly oriented. gamma must hold an n-cycle "C+" and its reverse "C-".
inline PlanExecution execute_plan(const UnicyclicForm & g, const DecompositionPlan & plan, const Family & gamma)
{
    if (g.cycle_length() != plan.m)
        throw Error(ErrorCode::size_mismatch, "form has cycle length " + std::to_string(g.cycle_length()) +
                                                  ", plan expects " + std::to_string(plan.m));
    PlanExecution run{gamma, {orient(g).digraph}, {}};
    for (std::size_t step = 1; step <= plan.l + plan.s + 1; ++step) {
        const auto structure = analyze_unicyclic(run.digraphs.back());
        HAssignment h = reversal_assignment(structure, plan_step_reversals(plan, step, structure));
        run.digraphs.push_back(otimes_h(run.digraphs.back(), run.gamma, h).digraph);
        run.assignments.push_back(std::move(h));
    }
    return run;
}

inline PlanExecution execute_plan(const UnicyclicForm & g, const DecompositionPlan & plan)
{
    return execute_plan(g, plan, plus_minus_family(plan.n));
}

/// sum_i a_i copies of G^{n^{s+i}}.
inline std::vector<PeriodicForm> plan_target(const UnicyclicForm & g, const DecompositionPlan & plan)
{
    std::vector<PeriodicForm> result;
    for (std::size_t i = 0; i <= plan.l; ++i)
        for (std::size_t c = 0; c < plan.a_seq[i]; ++c)
            result.push_back({g, static_cast<std::size_t>(detail::checked_pow(plan.n, plan.s + i))});
    return result;
}

} // namespace hprod
