#pragma once

// Value-typed digraphs (arc multisets) and simple undirected graphs, plus the
// structural queries the product machinery is built on.

#include <hprod/error.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hprod {

/// Dense 0-based vertex index. Text I/O renders it 1-based.
using Vertex = std::size_t;

/// Sorted (ascending) multiset of sizes or lengths.
using Multiset = std::vector<std::size_t>;

/// Classes sorted internally; classes ordered by their minimum vertex.
using Partition = std::vector<std::vector<Vertex>>;

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    auto operator<=>(const Arc &) const = default;
};

/// Unordered pair, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    auto operator<=>(const Edge &) const = default;
};

enum class Loops { forbid, allow };

class Digraph {
public:
    Digraph() = default;

    explicit Digraph(std::size_t order, Loops loops = Loops::forbid) : order_(order), loops_(loops) {}

    Digraph(std::size_t order, std::initializer_list<Arc> arcs, Loops loops = Loops::forbid)
        : order_(order), loops_(loops)
    {
        for (const auto & arc : arcs)
            add_arc(arc);
    }

    void add_arc(Arc arc, std::size_t multiplicity = 1)
    {
        if (arc.tail >= order_ || arc.head >= order_)
            throw Error(ErrorCode::invalid_order, "arc (" + std::to_string(arc.tail + 1) + ", " +
                                                      std::to_string(arc.head + 1) + ") outside a digraph of order " +
                                                      std::to_string(order_));
        if (arc.tail == arc.head && loops_ == Loops::forbid)
            throw Error(ErrorCode::not_simple, "loop at vertex " + std::to_string(arc.tail + 1) +
                                                   " in a digraph that does not allow loops");
        if (multiplicity == 0)
            return;
        arcs_[arc] += multiplicity;
    }

    std::size_t order() const noexcept { return order_; }
    Loops loops() const noexcept { return loops_; }

    /// Distinct arcs with their multiplicities, ordered by (tail, head).
    const std::map<Arc, std::size_t> & arcs() const noexcept { return arcs_; }

    std::size_t multiplicity(Arc arc) const
    {
        auto it = arcs_.find(arc);
        return it == arcs_.end() ? 0 : it->second;
    }

    bool has_arc(Arc arc) const { return arcs_.contains(arc); }

    /// Number of arcs counted with multiplicity.
    std::size_t size() const
    {
        std::size_t total = 0;
        for (const auto & [arc, mult] : arcs_)
            total += mult;
        return total;
    }

    bool has_loops() const
    {
        return std::any_of(arcs_.begin(), arcs_.end(), [](const auto & e) { return e.first.tail == e.first.head; });
    }

    bool is_multiplicity_free() const
    {
        return std::all_of(arcs_.begin(), arcs_.end(), [](const auto & e) { return e.second == 1; });
    }

    std::vector<std::size_t> out_degrees() const
    {
        std::vector<std::size_t> result(order_, 0);
        for (const auto & [arc, mult] : arcs_)
            result[arc.tail] += mult;
        return result;
    }

    std::vector<std::size_t> in_degrees() const
    {
        std::vector<std::size_t> result(order_, 0);
        for (const auto & [arc, mult] : arcs_)
            result[arc.head] += mult;
        return result;
    }

    /// Distinct out-neighbours per vertex, ascending.
    std::vector<std::vector<Vertex>> successors() const
    {
        std::vector<std::vector<Vertex>> result(order_);
        for (const auto & [arc, mult] : arcs_)
            result[arc.tail].push_back(arc.head);
        return result;
    }

    /// Indegree and outdegree both exactly one at every vertex, counting multiplicity.
    bool is_one_regular() const
    {
        auto out = out_degrees();
        auto in = in_degrees();
        return std::all_of(out.begin(), out.end(), [](std::size_t d) { return d == 1; }) &&
               std::all_of(in.begin(), in.end(), [](std::size_t d) { return d == 1; });
    }

    friend bool operator==(const Digraph & a, const Digraph & b)
    {
        return a.order_ == b.order_ && a.arcs_ == b.arcs_;
    }

private:
    std::size_t order_ = 0;
    Loops loops_ = Loops::forbid;
    std::map<Arc, std::size_t> arcs_;
};

/// Simple graph: no loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t order) : order_(order) {}

    Graph(std::size_t order, std::initializer_list<Edge> edges) : order_(order)
    {
        for (const auto & e : edges)
            add_edge(e.u, e.v);
    }

    /// Returns false when the edge was already present.
    bool add_edge(Vertex a, Vertex b)
    {
        if (a >= order_ || b >= order_)
            throw Error(ErrorCode::invalid_order, "edge {" + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                                                      "} outside a graph of order " + std::to_string(order_));
        if (a == b)
            throw Error(ErrorCode::not_simple, "loop at vertex " + std::to_string(a + 1));
        return edges_.insert(Edge(a, b)).second;
    }

    std::size_t order() const noexcept { return order_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::set<Edge> & edges() const noexcept { return edges_; }
    bool has_edge(Vertex a, Vertex b) const { return a != b && edges_.contains(Edge(a, b)); }

    std::vector<std::vector<Vertex>> neighbours() const
    {
        std::vector<std::vector<Vertex>> result(order_);
        for (const auto & e : edges_) {
            result[e.u].push_back(e.v);
            result[e.v].push_back(e.u);
        }
        for (auto & list : result)
            std::sort(list.begin(), list.end());
        return result;
    }

    std::vector<std::size_t> degrees() const
    {
        std::vector<std::size_t> result(order_, 0);
        for (const auto & e : edges_) {
            ++result[e.u];
            ++result[e.v];
        }
        return result;
    }

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    std::size_t order_ = 0;
    std::set<Edge> edges_;
};

enum class Direction { forward, backward };

/// C_m^+ (arcs i -> i+1 mod m) or C_m^- (the reverse).
inline Digraph oriented_cycle(std::size_t m, Direction direction = Direction::forward)
{
    if (m < 2)
        throw Error(ErrorCode::invalid_order, "an oriented cycle needs at least 2 vertices, got " + std::to_string(m));
    Digraph result(m);
    for (Vertex i = 0; i < m; ++i) {
        Vertex j = (i + 1) % m;
        result.add_arc(direction == Direction::forward ? Arc{i, j} : Arc{j, i});
    }
    return result;
}

inline Digraph reverse(const Digraph & d)
{
    Digraph result(d.order(), d.loops());
    for (const auto & [arc, mult] : d.arcs())
        result.add_arc({arc.head, arc.tail}, mult);
    return result;
}

/// und(D). A directed 2-cycle collapses to one edge; loops are rejected.
inline Graph underlying(const Digraph & d)
{
    Graph result(d.order());
    for (const auto & [arc, mult] : d.arcs()) {
        if (arc.tail == arc.head)
            throw Error(ErrorCode::not_simple, "loop at vertex " + std::to_string(arc.tail + 1) +
                                                   " has no underlying simple graph");
        result.add_edge(arc.tail, arc.head);
    }
    return result;
}

/// Vertex-disjoint union; the second operand's vertices are shifted by a.order().
inline Digraph disjoint_union(const Digraph & a, const Digraph & b)
{
    Loops loops = (a.loops() == Loops::allow || b.loops() == Loops::allow) ? Loops::allow : Loops::forbid;
    Digraph result(a.order() + b.order(), loops);
    for (const auto & [arc, mult] : a.arcs())
        result.add_arc(arc, mult);
    for (const auto & [arc, mult] : b.arcs())
        result.add_arc({arc.tail + a.order(), arc.head + a.order()}, mult);
    return result;
}

namespace detail {

inline std::size_t find_root(std::vector<std::size_t> & parent, std::size_t x)
{
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

inline Partition classes_from_labels(const std::vector<std::size_t> & label)
{
    std::map<std::size_t, std::vector<Vertex>> groups;
    for (Vertex v = 0; v < label.size(); ++v)
        groups[label[v]].push_back(v);
    Partition result;
    result.reserve(groups.size());
    for (auto & [key, members] : groups)
        result.push_back(std::move(members));
    std::sort(result.begin(), result.end(), [](const auto & x, const auto & y) { return x.front() < y.front(); });
    return result;
}

inline Partition components_of_pairs(std::size_t order, const std::vector<std::pair<Vertex, Vertex>> & pairs)
{
    std::vector<std::size_t> parent(order);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto & [a, b] : pairs) {
        auto ra = find_root(parent, a);
        auto rb = find_root(parent, b);
        if (ra != rb)
            parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<std::size_t> label(order);
    for (Vertex v = 0; v < order; ++v)
        label[v] = find_root(parent, v);
    return classes_from_labels(label);
}

} // namespace detail

inline Partition weak_components(const Digraph & d)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto & [arc, mult] : d.arcs())
        pairs.emplace_back(arc.tail, arc.head);
    return detail::components_of_pairs(d.order(), pairs);
}

inline Partition components(const Graph & g)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto & e : g.edges())
        pairs.emplace_back(e.u, e.v);
    return detail::components_of_pairs(g.order(), pairs);
}

/// Tarjan's algorithm, iterative.
inline Partition strong_components(const Digraph & d)
{
    const std::size_t n = d.order();
    const auto succ = d.successors();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);

    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::vector<std::pair<Vertex, std::size_t>> call; // vertex, next successor position
    std::size_t counter = 0, comp_count = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto & [v, pos] = call.back();
            if (pos < succ[v].size()) {
                Vertex w = succ[v][pos++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                }
                else if (on_stack[w])
                    low[v] = std::min(low[v], index[w]);
                continue;
            }
            Vertex done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == index[done]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = comp_count;
                } while (w != done);
                ++comp_count;
            }
        }
    }
    return detail::classes_from_labels(comp);
}

inline Multiset class_sizes(const Partition & p)
{
    Multiset result;
    result.reserve(p.size());
    for (const auto & cls : p)
        result.push_back(cls.size());
    std::sort(result.begin(), result.end());
    return result;
}

/// Lengths of the disjoint directed cycles of a 1-regular digraph.
inline Multiset cycle_length_multiset(const Digraph & d)
{
    if (!d.is_one_regular())
        throw Error(ErrorCode::regularity, "cycle lengths need a 1-regular digraph");
    std::vector<Vertex> next(d.order());
    for (const auto & [arc, mult] : d.arcs())
        next[arc.tail] = arc.head;
    std::vector<bool> seen(d.order(), false);
    Multiset result;
    for (Vertex v = 0; v < d.order(); ++v) {
        if (seen[v])
            continue;
        std::size_t length = 0;
        for (Vertex w = v; !seen[w]; w = next[w]) {
            seen[w] = true;
            ++length;
        }
        result.push_back(length);
    }
    std::sort(result.begin(), result.end());
    return result;
}

/// Weakly connected with indegree = outdegree everywhere. One vertex and no
/// arcs counts as eulerian (the empty circuit).
inline bool is_eulerian(const Digraph & d)
{
    if (d.order() == 0)
        return false;
    if (weak_components(d).size() != 1)
        return false;
    return d.in_degrees() == d.out_degrees();
}

} // namespace hprod
