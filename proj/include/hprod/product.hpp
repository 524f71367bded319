#pragma once

// The generalized product D (x)_h Gamma: ((a,x),(b,y)) is an arc iff (a,b) is
// an arc of the host D and (x,y) is an arc of the member h(a,b).

#include <hprod/digraph.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hprod {

/// Name of the reversed member: "F" <-> "F^-".
inline std::string reversed_name(std::string_view name)
{
    constexpr std::string_view suffix = "^-";
    if (name.size() >= suffix.size() && name.substr(name.size() - suffix.size()) == suffix)
        return std::string(name.substr(0, name.size() - suffix.size()));
    return std::string(name) + std::string(suffix);
}

/// Named digraphs sharing one vertex set {0..n-1}.
class Family {
public:
    Family() = default;
    explicit Family(std::size_t carrier_order) : carrier_order_(carrier_order) {}

    void add(std::string name, Digraph member)
    {
        if (member.order() != carrier_order_)
            throw Error(ErrorCode::size_mismatch, "member " + name + " has order " + std::to_string(member.order()) +
                                                      ", family carrier order is " + std::to_string(carrier_order_));
        if (contains(name))
            throw Error(ErrorCode::family_consistency, "duplicate member name " + name);
        if (name.empty() || name.find_first_of(" \t\n") != std::string::npos)
            throw Error(ErrorCode::parse, "member names must be non-empty and contain no whitespace");
        members_.emplace_back(std::move(name), std::move(member));
    }

    std::size_t carrier_order() const noexcept { return carrier_order_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<std::pair<std::string, Digraph>> & members() const noexcept { return members_; }

    bool contains(std::string_view name) const
    {
        return std::any_of(members_.begin(), members_.end(), [&](const auto & m) { return m.first == name; });
    }

    const Digraph & member(std::string_view name) const
    {
        for (const auto & [n, d] : members_)
            if (n == name)
                return d;
        throw Error(ErrorCode::family_consistency, "no member named " + std::string(name));
    }

    /// Gamma u Gamma^-; reverses not already present are appended in order.
    Family with_reverses() const
    {
        Family result = *this;
        for (const auto & [name, d] : members_) {
            auto rname = reversed_name(name);
            if (!result.contains(rname))
                result.add(rname, reverse(d));
            else if (result.member(rname) != reverse(d))
                throw Error(ErrorCode::family_consistency, "member " + rname + " is not the reverse of " + name);
        }
        return result;
    }

    bool all_one_regular() const
    {
        return std::all_of(members_.begin(), members_.end(), [](const auto & m) { return m.second.is_one_regular(); });
    }

    friend bool operator==(const Family &, const Family &) = default;

private:
    std::size_t carrier_order_ = 0;
    std::vector<std::pair<std::string, Digraph>> members_;
};

/// h : E(D) -> Gamma, stored as host arcs in insertion order with member names.
class HAssignment {
public:
    HAssignment() = default;

    void assign(Arc arc, std::string member)
    {
        for (auto & [a, name] : entries_)
            if (a == arc) {
                name = std::move(member);
                return;
            }
        entries_.emplace_back(arc, std::move(member));
    }

    const std::string * find(Arc arc) const
    {
        for (const auto & [a, name] : entries_)
            if (a == arc)
                return &name;
        return nullptr;
    }

    const std::string & at(Arc arc) const
    {
        if (const auto * name = find(arc))
            return *name;
        throw Error(ErrorCode::partial_assignment, "no member assigned to arc (" + std::to_string(arc.tail + 1) +
                                                       ", " + std::to_string(arc.head + 1) + ")");
    }

    const std::vector<std::pair<Arc, std::string>> & entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// h restricted to the given arcs (which must all be assigned).
    HAssignment restricted(const std::vector<Arc> & arcs) const
    {
        HAssignment result;
        for (const auto & arc : arcs)
            result.assign(arc, at(arc));
        return result;
    }

    static HAssignment constant(const Digraph & host, const std::string & member)
    {
        HAssignment result;
        for (const auto & [arc, mult] : host.arcs())
            result.assign(arc, member);
        return result;
    }

    friend bool operator==(const HAssignment &, const HAssignment &) = default;

private:
    std::vector<std::pair<Arc, std::string>> entries_;
};

/// Checks the product preconditions; missing arcs are listed exhaustively.
inline void validate_product_inputs(const Digraph & host, const Family & gamma, const HAssignment & h)
{
    if (!host.is_multiplicity_free())
        throw Error(ErrorCode::precondition, "the host digraph must be multiplicity-free");
    std::string missing;
    for (const auto & [arc, mult] : host.arcs()) {
        const auto * name = h.find(arc);
        if (name == nullptr) {
            missing += (missing.empty() ? "" : ", ") + std::string("(") + std::to_string(arc.tail + 1) + ", " +
                       std::to_string(arc.head + 1) + ")";
            continue;
        }
        if (!gamma.contains(*name))
            throw Error(ErrorCode::family_consistency, "arc (" + std::to_string(arc.tail + 1) + ", " +
                                                           std::to_string(arc.head + 1) +
                                                           ") is assigned unknown member " + *name);
    }
    if (!missing.empty())
        throw Error(ErrorCode::partial_assignment, "no member assigned to host arcs " + missing);
    for (const auto & [arc, name] : h.entries())
        if (!host.has_arc(arc))
            throw Error(ErrorCode::partial_assignment, "assignment names (" + std::to_string(arc.tail + 1) + ", " +
                                                           std::to_string(arc.head + 1) +
                                                           ") which is not a host arc");
}

struct ProductVertex {
    Vertex host = 0;
    Vertex fiber = 0;

    auto operator<=>(const ProductVertex &) const = default;
};

/// The product digraph, flattened as host * fiber_order + fiber.
struct Product {
    Digraph digraph;
    std::size_t host_order = 0;
    std::size_t fiber_order = 0;

    Vertex flatten(ProductVertex v) const { return v.host * fiber_order + v.fiber; }
    ProductVertex split(Vertex v) const { return {v / fiber_order, v % fiber_order}; }
};

inline Product otimes_h(const Digraph & host, const Family & gamma, const HAssignment & h)
{
    validate_product_inputs(host, gamma, h);
    const std::size_t n = gamma.carrier_order();
    Product result{Digraph(host.order() * n, host.loops()), host.order(), n};
    for (const auto & [arc, unused] : host.arcs()) {
        const Digraph & member = gamma.member(h.at(arc));
        for (const auto & [fiber_arc, mult] : member.arcs())
            result.digraph.add_arc({result.flatten({arc.tail, fiber_arc.tail}), result.flatten({arc.head, fiber_arc.head})},
                                   mult);
    }
    return result;
}

/// D (x) F, the constant assignment.
inline Product otimes(const Digraph & host, const Digraph & factor)
{
    Family gamma(factor.order());
    gamma.add("F", factor);
    return otimes_h(host, gamma, HAssignment::constant(host, "F"));
}

using Matrix = std::vector<std::vector<std::size_t>>;

inline Matrix adjacency_matrix(const Digraph & d)
{
    Matrix a(d.order(), std::vector<std::size_t>(d.order(), 0));
    for (const auto & [arc, mult] : d.arcs())
        a[arc.tail][arc.head] = mult;
    return a;
}

inline Matrix kronecker(const Matrix & a, const Matrix & b)
{
    const std::size_t rows_b = b.size();
    const std::size_t cols_b = rows_b ? b.front().size() : 0;
    const std::size_t cols_a = a.empty() ? 0 : a.front().size();
    Matrix result(a.size() * rows_b, std::vector<std::size_t>(cols_a * cols_b, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols_a; ++j)
            for (std::size_t k = 0; k < rows_b; ++k)
                for (std::size_t l = 0; l < cols_b; ++l)
                    result[i * rows_b + k][j * cols_b + l] = a[i][j] * b[k][l];
    return result;
}

/// A(D) with every 0 entry replaced by the n x n null block and every 1 entry
/// at (a,b) by A(h(a,b)).
inline Matrix block_substitution(const Digraph & host, const Family & gamma, const HAssignment & h)
{
    validate_product_inputs(host, gamma, h);
    const std::size_t n = gamma.carrier_order();
    const Matrix a = adjacency_matrix(host);
    Matrix result(host.order() * n, std::vector<std::size_t>(host.order() * n, 0));
    for (Vertex i = 0; i < host.order(); ++i)
        for (Vertex j = 0; j < host.order(); ++j) {
            if (a[i][j] == 0)
                continue;
            const Matrix block = adjacency_matrix(gamma.member(h.at({i, j})));
            for (Vertex x = 0; x < n; ++x)
                for (Vertex y = 0; y < n; ++y)
                    result[i * n + x][j * n + y] = block[x][y];
        }
    return result;
}

inline bool matches_block_construction(const Digraph & candidate, const Digraph & host, const Family & gamma,
                                       const HAssignment & h)
{
    return adjacency_matrix(candidate) == block_substitution(host, gamma, h);
}

/// Builds the product twice (arc rule and block substitution) and compares.
inline bool adjacency_product_check(const Digraph & host, const Family & gamma, const HAssignment & h)
{
    return matches_block_construction(otimes_h(host, gamma, h).digraph, host, gamma, h);
}

/// Result of re-expressing a product over an arbitrarily oriented cycle as a
/// product over the strong orientation. Host vertex i of strong_cycle is the
/// original vertex cycle_order[i].
struct StarExtension {
    Digraph strong_cycle;
    std::vector<Vertex> cycle_order;
    Family family;
    HAssignment assignment;
};

/// Vertices of a cycle graph in traversal order, starting at vertex 0 and
/// stepping to its smaller neighbour first.
inline std::vector<Vertex> cycle_traversal(const Graph & g)
{
    const auto nbrs = g.neighbours();
    if (g.order() < 3 || g.size() != g.order() || components(g).size() != 1 ||
        std::any_of(nbrs.begin(), nbrs.end(), [](const auto & l) { return l.size() != 2; }))
        throw Error(ErrorCode::shape, "underlying graph is not a cycle");
    std::vector<Vertex> order{0};
    Vertex prev = 0, cur = nbrs[0][0];
    while (cur != 0) {
        order.push_back(cur);
        Vertex next = nbrs[cur][0] == prev ? nbrs[cur][1] : nbrs[cur][0];
        prev = cur;
        cur = next;
    }
    return order;
}

/// h* over E(C_m^+): h on arcs agreeing with the orientation, the reversed
/// member on arcs running against it.
inline StarExtension star_extension(const Digraph & cycle_orientation, const Family & gamma, const HAssignment & h)
{
    validate_product_inputs(cycle_orientation, gamma, h);
    const auto order = cycle_traversal(underlying(cycle_orientation));
    const std::size_t m = order.size();
    StarExtension result{oriented_cycle(m, Direction::forward), order, gamma.with_reverses(), {}};
    for (Vertex i = 0; i < m; ++i) {
        Vertex a = order[i], b = order[(i + 1) % m];
        if (cycle_orientation.has_arc({a, b}))
            result.assignment.assign({i, (i + 1) % m}, h.at({a, b}));
        else
            result.assignment.assign({i, (i + 1) % m}, reversed_name(h.at({b, a})));
    }
    return result;
}

} // namespace hprod
