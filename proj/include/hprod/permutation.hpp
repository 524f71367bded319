#pragma once

// Permutations identified with 1-regular digraphs, the induced product P_h of
// the fibre permutations around a host cycle, and the component prediction it
// yields for C_m^+ (x)_h Gamma.

#include <hprod/digraph.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hprod {

/// Disjoint cycles in canonical form: each cycle starts at its minimum and the
/// cycles are ordered by that minimum. Fixed points are 1-cycles.
struct CycleDecomposition {
    std::vector<std::vector<Vertex>> cycles;

    Multiset lengths() const
    {
        Multiset result;
        for (const auto & c : cycles)
            result.push_back(c.size());
        std::sort(result.begin(), result.end());
        return result;
    }

    friend bool operator==(const CycleDecomposition &, const CycleDecomposition &) = default;
};

class Permutation {
public:
    Permutation() = default;

    /// images[x] is the image of x. Throws unless images is a bijection on {0..n-1}.
    explicit Permutation(std::vector<Vertex> images) : images_(std::move(images))
    {
        std::vector<bool> hit(images_.size(), false);
        for (Vertex y : images_) {
            if (y >= images_.size() || hit[y])
                throw Error(ErrorCode::regularity, "mapping is not a bijection on {1.." +
                                                       std::to_string(images_.size()) + "}");
            hit[y] = true;
        }
    }

    static Permutation identity(std::size_t n)
    {
        std::vector<Vertex> images(n);
        std::iota(images.begin(), images.end(), 0);
        return Permutation(std::move(images));
    }

    /// Builds from 0-based cycles; unlisted points are fixed.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Vertex>> & cycles)
    {
        std::vector<Vertex> images(n);
        std::iota(images.begin(), images.end(), 0);
        std::vector<bool> used(n, false);
        for (const auto & c : cycles) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] >= n)
                    throw Error(ErrorCode::size_mismatch, "cycle element " + std::to_string(c[i] + 1) +
                                                              " exceeds degree " + std::to_string(n));
                if (used[c[i]])
                    throw Error(ErrorCode::parse, "element " + std::to_string(c[i] + 1) +
                                                      " appears in more than one cycle position");
                used[c[i]] = true;
                images[c[i]] = c[(i + 1) % c.size()];
            }
        }
        return Permutation(std::move(images));
    }

    std::size_t degree() const noexcept { return images_.size(); }
    Vertex operator()(Vertex x) const { return images_.at(x); }
    const std::vector<Vertex> & images() const noexcept { return images_; }

    friend bool operator==(const Permutation &, const Permutation &) = default;

private:
    std::vector<Vertex> images_;
};

/// pi(i) = j iff (i, j) is an arc.
inline Permutation from_one_regular(const Digraph & d)
{
    if (!d.is_one_regular())
        throw Error(ErrorCode::regularity, "digraph is not 1-regular");
    std::vector<Vertex> images(d.order());
    for (const auto & [arc, mult] : d.arcs())
        images[arc.tail] = arc.head;
    return Permutation(std::move(images));
}

inline Digraph to_one_regular(const Permutation & p)
{
    Digraph result(p.degree(), Loops::allow);
    for (Vertex x = 0; x < p.degree(); ++x)
        result.add_arc({x, p(x)});
    return result;
}

/// (outer . inner)(x) = outer(inner(x)); the right factor acts first.
inline Permutation compose(const Permutation & outer, const Permutation & inner)
{
    if (outer.degree() != inner.degree())
        throw Error(ErrorCode::size_mismatch, "cannot compose permutations of degree " +
                                                  std::to_string(outer.degree()) + " and " +
                                                  std::to_string(inner.degree()));
    std::vector<Vertex> images(inner.degree());
    for (Vertex x = 0; x < images.size(); ++x)
        images[x] = outer(inner(x));
    return Permutation(std::move(images));
}

inline Permutation inverse(const Permutation & p)
{
    std::vector<Vertex> images(p.degree());
    for (Vertex x = 0; x < p.degree(); ++x)
        images[p(x)] = x;
    return Permutation(std::move(images));
}

/// P_h for factors listed in host-arc order h(a_1 a_2), h(a_2 a_3), ...,
/// h(a_m a_1): the first factor is applied first.
inline Permutation product_ph(std::span<const Permutation> factors)
{
    if (factors.empty())
        throw Error(ErrorCode::arity, "P_h needs at least one factor");
    Permutation result = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        result = compose(factors[i], result);
    return result;
}

inline Permutation power(const Permutation & p, std::int64_t e)
{
    Permutation base = e < 0 ? inverse(p) : p;
    auto remaining = static_cast<std::uint64_t>(e < 0 ? -e : e);
    Permutation result = Permutation::identity(p.degree());
    while (remaining > 0) {
        if (remaining & 1U)
            result = compose(base, result);
        base = compose(base, base);
        remaining >>= 1U;
    }
    return result;
}

inline CycleDecomposition cycle_decomposition(const Permutation & p)
{
    CycleDecomposition result;
    std::vector<bool> seen(p.degree(), false);
    // Scanning upward makes every cycle start at its minimum and keeps the list sorted.
    for (Vertex start = 0; start < p.degree(); ++start) {
        if (seen[start])
            continue;
        std::vector<Vertex> cycle;
        for (Vertex x = start; !seen[x]; x = p(x)) {
            seen[x] = true;
            cycle.push_back(x);
        }
        result.cycles.push_back(std::move(cycle));
    }
    return result;
}

/// Component lengths of C_m^+ (x)_h Gamma predicted from P_h: m times each cycle length.
inline Multiset predict_components(std::size_t m, const Permutation & ph)
{
    if (m < 2)
        throw Error(ErrorCode::invalid_order, "host cycle length must be at least 2, got " + std::to_string(m));
    Multiset result;
    for (std::size_t len : cycle_decomposition(ph).lengths())
        result.push_back(m * len);
    std::sort(result.begin(), result.end());
    return result;
}

/// "(1 4 2 6)(3 5)": 1-based, every cycle printed, fixed points included.
inline std::string format_cycles(const Permutation & p)
{
    std::ostringstream out;
    for (const auto & cycle : cycle_decomposition(p).cycles) {
        out << '(';
        for (std::size_t i = 0; i < cycle.size(); ++i)
            out << (i ? " " : "") << cycle[i] + 1;
        out << ')';
    }
    return out.str();
}

/// Parses cycle notation such as "(1 5 4 6 3 2)" or "(1)(2 3 4 5 6)".
/// Fixed points may be omitted. With degree 0 the degree is the largest
/// element mentioned.
inline Permutation parse_cycles(std::string_view text, std::size_t degree = 0)
{
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Vertex> current;
    bool open = false;
    std::size_t largest = 0;
    std::size_t i = 0;
    auto fail = [&](const std::string & why) {
        throw Error(ErrorCode::parse, "cycle notation \"" + std::string(text) + "\": " + why);
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
        }
        else if (c == '(') {
            if (open)
                fail("nested '('");
            open = true;
            current.clear();
            ++i;
        }
        else if (c == ')') {
            if (!open)
                fail("unbalanced ')'");
            if (current.empty())
                fail("empty cycle");
            cycles.push_back(current);
            open = false;
            ++i;
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            if (!open)
                fail("number outside parentheses");
            std::size_t value = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                value = value * 10 + static_cast<std::size_t>(text[i++] - '0');
            if (value == 0)
                fail("elements are 1-based");
            largest = std::max(largest, value);
            current.push_back(value - 1);
        }
        else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    if (open)
        fail("missing ')'");
    if (degree == 0)
        degree = largest;
    if (largest > degree)
        throw Error(ErrorCode::size_mismatch, "cycle notation mentions " + std::to_string(largest) +
                                                  " but the degree is " + std::to_string(degree));
    return Permutation::from_cycles(degree, cycles);
}

} // namespace hprod
