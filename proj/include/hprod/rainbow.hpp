#pragma once

// M_h: the multidigraph on the fibre vertex set formed by all assigned members
// of a host cycle, each arc copy coloured by the host arc it came from.
// Rainbow circuits of M_h are the strong components of C_m^+ (x)_h Gamma.

#include <hprod/digraph.hpp>
#include <hprod/product.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace hprod {

/// Distinct colour indices s_1..s_m drawn from {0..m-1}.
class ColorSequence {
public:
    explicit ColorSequence(std::vector<std::size_t> colors) : colors_(std::move(colors))
    {
        const std::size_t m = colors_.size();
        if (m < 2)
            throw Error(ErrorCode::invalid_order, "a colour sequence needs at least 2 colours");
        std::vector<bool> seen(m, false);
        for (auto c : colors_) {
            if (c >= m || seen[c])
                throw Error(ErrorCode::precondition, "colour sequence must list each of 0.." +
                                                         std::to_string(m - 1) + " exactly once");
            seen[c] = true;
        }
    }

    /// (0, 1, ..., m-1): the sequence induced by colouring arc (a_i, a_{i+1}) with i.
    static ColorSequence natural(std::size_t m)
    {
        std::vector<std::size_t> colors(m);
        std::iota(colors.begin(), colors.end(), 0);
        return ColorSequence(std::move(colors));
    }

    std::size_t size() const noexcept { return colors_.size(); }
    std::size_t operator[](std::size_t i) const { return colors_.at(i); }
    const std::vector<std::size_t> & colors() const noexcept { return colors_; }

private:
    std::vector<std::size_t> colors_;
};

struct ColoredArc {
    Vertex tail = 0;
    Vertex head = 0;
    std::size_t color = 0;

    auto operator<=>(const ColoredArc &) const = default;
};

struct ColoredMultiDigraph {
    Digraph base;
    std::size_t colors = 0;
    std::vector<ColoredArc> arcs; // one entry per arc copy, sorted

    /// Copies of (tail, head) per colour; the copy index of an arc is its
    /// position among equal (tail, head) entries.
    std::size_t copies(Vertex tail, Vertex head) const
    {
        return static_cast<std::size_t>(std::count_if(arcs.begin(), arcs.end(), [&](const ColoredArc & a) {
            return a.tail == tail && a.head == head;
        }));
    }
};

/// Host must be C_m^+ = oriented_cycle(m); arc (i, i+1) carries colour i.
inline ColoredMultiDigraph build_mh(std::size_t m, const Family & gamma, const HAssignment & h)
{
    const Digraph host = oriented_cycle(m, Direction::forward);
    if (h.size() != m)
        throw Error(ErrorCode::shape, "assignment has " + std::to_string(h.size()) + " arcs, C_" + std::to_string(m) +
                                          "^+ has " + std::to_string(m));
    validate_product_inputs(host, gamma, h);
    ColoredMultiDigraph result{Digraph(gamma.carrier_order(), Loops::allow), m, {}};
    for (Vertex i = 0; i < m; ++i) {
        const Digraph & member = gamma.member(h.at({i, (i + 1) % m}));
        for (const auto & [arc, mult] : member.arcs()) {
            result.base.add_arc(arc, mult);
            for (std::size_t c = 0; c < mult; ++c)
                result.arcs.push_back({arc.tail, arc.head, i});
        }
    }
    std::sort(result.arcs.begin(), result.arcs.end());
    return result;
}

struct RainbowCircuit {
    std::vector<Vertex> vertices; // x_1 .. x_L; the circuit closes back to x_1
    std::vector<std::size_t> colors; // colour of arc (x_t, x_{t+1})

    std::size_t length() const noexcept { return vertices.size(); }
};

namespace detail {

/// next[c][x]: head of the unique colour-c arc leaving x.
inline std::vector<std::vector<Vertex>> colour_successors(const ColoredMultiDigraph & mh)
{
    const std::size_t n = mh.base.order();
    constexpr Vertex none = static_cast<Vertex>(-1);
    std::vector<std::vector<Vertex>> next(mh.colors, std::vector<Vertex>(n, none));
    std::vector<std::vector<std::size_t>> indegree(mh.colors, std::vector<std::size_t>(n, 0));
    for (const auto & a : mh.arcs) {
        if (a.color >= mh.colors)
            throw Error(ErrorCode::precondition, "arc colour out of range");
        if (next[a.color][a.tail] != none)
            throw Error(ErrorCode::regularity, "vertex " + std::to_string(a.tail + 1) +
                                                   " has several out-arcs of colour " + std::to_string(a.color));
        next[a.color][a.tail] = a.head;
        ++indegree[a.color][a.head];
    }
    for (std::size_t c = 0; c < mh.colors; ++c)
        for (Vertex x = 0; x < n; ++x)
            if (next[c][x] == none || indegree[c][x] != 1)
                throw Error(ErrorCode::regularity, "colour " + std::to_string(c) + " is not 1-regular at vertex " +
                                                       std::to_string(x + 1));
    return next;
}

} // namespace detail

/// Every rainbow circuit with colour sequence seq. Traversal is forced: from
/// a vertex at position t follow its unique arc of colour s_{t+1}. Each
/// circuit starts at the smallest vertex occupying an s_1 slot.
inline std::vector<RainbowCircuit> find_rainbow_circuits(const ColoredMultiDigraph & mh, const ColorSequence & seq)
{
    if (seq.size() != mh.colors)
        throw Error(ErrorCode::size_mismatch, "colour sequence has " + std::to_string(seq.size()) +
                                                  " colours, M_h has " + std::to_string(mh.colors));
    const auto next = detail::colour_successors(mh);
    const std::size_t n = mh.base.order();
    const std::size_t m = seq.size();
    std::vector<bool> started(n, false);
    std::vector<RainbowCircuit> result;
    for (Vertex start = 0; start < n; ++start) {
        if (started[start])
            continue;
        RainbowCircuit circuit;
        Vertex x = start;
        do {
            started[x] = true;
            for (std::size_t t = 0; t < m; ++t) {
                circuit.vertices.push_back(x);
                circuit.colors.push_back(seq[t]);
                x = next[seq[t]][x];
            }
        } while (x != start);
        result.push_back(std::move(circuit));
    }
    return result;
}

/// A single rainbow circuit covers all arcs.
inline bool is_rainbow_eulerian(const ColoredMultiDigraph & mh, const ColorSequence & seq)
{
    const auto circuits = find_rainbow_circuits(mh, seq);
    return circuits.size() == 1 && circuits.front().length() == mh.arcs.size();
}

/// Multiset of circuit arc-lengths.
inline Multiset circuit_lengths(const std::vector<RainbowCircuit> & circuits)
{
    Multiset result;
    for (const auto & c : circuits)
        result.push_back(c.length());
    std::sort(result.begin(), result.end());
    return result;
}

/// True iff the circuits use every coloured arc copy of mh exactly once.
inline bool circuits_partition_arcs(const ColoredMultiDigraph & mh, const std::vector<RainbowCircuit> & circuits)
{
    std::vector<ColoredArc> used;
    for (const auto & c : circuits)
        for (std::size_t t = 0; t < c.length(); ++t)
            used.push_back({c.vertices[t], c.vertices[(t + 1) % c.length()], c.colors[t]});
    std::sort(used.begin(), used.end());
    return used == mh.arcs;
}

} // namespace hprod
