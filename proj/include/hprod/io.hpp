#pragma once

// Text formats (1-based on disk) and DOT emission. Blank lines and lines
// starting with '#' are ignored by every reader.

#include <hprod/digraph.hpp>
#include <hprod/labeling.hpp>
#include <hprod/permutation.hpp>
#include <hprod/product.hpp>
#include <hprod/rainbow.hpp>
#include <hprod/unicyclic.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hprod::io {

namespace detail {

class LineReader {
public:
    explicit LineReader(std::string_view text, std::string source = "<input>") : source_(std::move(source))
    {
        std::size_t start = 0, number = 1;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            const auto first = line.find_first_not_of(" \t");
            if (first != std::string_view::npos && line[first] != '#')
                lines_.emplace_back(number, std::string(line.substr(first)));
            start = end + 1;
            ++number;
        }
    }

    bool done() const noexcept { return pos_ >= lines_.size(); }
    const std::string & peek() const { return lines_.at(pos_).second; }

    std::vector<std::string> next_tokens()
    {
        if (done())
            fail_at_end("unexpected end of input");
        line_ = lines_[pos_].first;
        std::istringstream in(lines_[pos_++].second);
        return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
    }

    [[noreturn]] void fail(const std::string & why) const
    {
        throw Error(ErrorCode::parse, source_ + ":" + std::to_string(line_) + ": " + why);
    }

    [[noreturn]] void fail_at_end(const std::string & why) const
    {
        throw Error(ErrorCode::parse, source_ + ": " + why);
    }

    std::size_t number(const std::string & token, const char * what, std::size_t min = 0) const
    {
        std::size_t value = 0;
        const auto * end = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(token.data(), end, value);
        if (ec != std::errc{} || ptr != end)
            fail(std::string("expected ") + what + ", got \"" + token + "\"");
        if (value < min)
            fail(std::string(what) + " must be at least " + std::to_string(min) + ", got " + token);
        return value;
    }

    std::int64_t signed_number(const std::string & token, const char * what) const
    {
        std::int64_t value = 0;
        const auto * end = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(token.data(), end, value);
        if (ec != std::errc{} || ptr != end)
            fail(std::string("expected ") + what + ", got \"" + token + "\"");
        return value;
    }

    /// 1-based id on disk -> 0-based vertex, range checked.
    Vertex vertex(const std::string & token, std::size_t order) const
    {
        const std::size_t v = number(token, "vertex id", 1);
        if (v > order)
            fail("vertex " + token + " exceeds order " + std::to_string(order));
        return v - 1;
    }

    /// Wraps library errors raised while building from the current line.
    template <class F>
    auto guarded(F && f) const
    {
        try {
            return f();
        }
        catch (const Error & e) {
            if (e.code() == ErrorCode::parse)
                throw;
            fail(e.what());
        }
    }

private:
    std::string source_;
    std::vector<std::pair<std::size_t, std::string>> lines_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

inline std::size_t header(LineReader & in, std::string_view keyword)
{
    const auto t = in.next_tokens();
    if (t.size() != 2 || t[0] != keyword)
        in.fail("expected header \"" + std::string(keyword) + " <n>\"");
    return in.number(t[1], "order");
}

/// Arc lines "u v [mult]" until a line starting with a non-digit or end.
inline void read_arcs(LineReader & in, Digraph & d)
{
    while (!in.done() && std::isdigit(static_cast<unsigned char>(in.peek().front()))) {
        const auto t = in.next_tokens();
        if (t.size() != 2 && t.size() != 3)
            in.fail("expected \"u v [mult]\"");
        const Vertex u = in.vertex(t[0], d.order()), v = in.vertex(t[1], d.order());
        const std::size_t mult = t.size() == 3 ? in.number(t[2], "multiplicity", 1) : 1;
        in.guarded([&] {
            d.add_arc({u, v}, mult);
            return 0;
        });
    }
}

inline void write_arcs(std::ostream & out, const Digraph & d)
{
    for (const auto & [arc, mult] : d.arcs()) {
        out << arc.tail + 1 << ' ' << arc.head + 1;
        if (mult != 1)
            out << ' ' << mult;
        out << '\n';
    }
}

} // namespace detail

inline std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::parse, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string & path, const std::string & content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw Error(ErrorCode::parse, "cannot write " + path);
}

// digraph <order> / u v [mult]

inline Digraph parse_digraph(std::string_view text, const std::string & source = "<digraph>")
{
    detail::LineReader in(text, source);
    Digraph d(detail::header(in, "digraph"), Loops::allow);
    detail::read_arcs(in, d);
    if (!in.done())
        in.next_tokens(), in.fail("unexpected line in digraph");
    return d;
}

inline std::string write_digraph(const Digraph & d)
{
    std::ostringstream out;
    out << "digraph " << d.order() << '\n';
    detail::write_arcs(out, d);
    return out.str();
}

// graph <order> / u v

inline Graph parse_graph(std::string_view text, const std::string & source = "<graph>")
{
    detail::LineReader in(text, source);
    Graph g(detail::header(in, "graph"));
    while (!in.done()) {
        const auto t = in.next_tokens();
        if (t.size() != 2 && !(t.size() == 3 && t[2] == "1"))
            in.fail("expected \"u v\"");
        const Vertex u = in.vertex(t[0], g.order()), v = in.vertex(t[1], g.order());
        const bool fresh = in.guarded([&] { return g.add_edge(u, v); });
        if (!fresh)
            in.fail("repeated edge " + t[0] + " " + t[1]);
    }
    return g;
}

inline std::string write_graph(const Graph & g)
{
    std::ostringstream out;
    out << "graph " << g.order() << '\n';
    for (const auto & e : g.edges())
        out << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

// family <n> / member <name> / arc lines

inline Family parse_family(std::string_view text, const std::string & source = "<family>")
{
    detail::LineReader in(text, source);
    Family family(detail::header(in, "family"));
    while (!in.done()) {
        const auto t = in.next_tokens();
        if (t.size() != 2 || t[0] != "member")
            in.fail("expected \"member <name>\"");
        Digraph d(family.carrier_order(), Loops::allow);
        const std::string name = t[1];
        in.guarded([&] {
            if (family.contains(name))
                throw Error(ErrorCode::family_consistency, "duplicate member name " + name);
            return 0;
        });
        detail::read_arcs(in, d);
        in.guarded([&] {
            family.add(name, std::move(d));
            return 0;
        });
    }
    return family;
}

inline std::string write_family(const Family & family)
{
    std::ostringstream out;
    out << "family " << family.carrier_order() << '\n';
    for (const auto & [name, d] : family.members()) {
        out << "member " << name << '\n';
        detail::write_arcs(out, d);
    }
    return out.str();
}

// u v -> name

inline HAssignment parse_assignment(std::string_view text, const std::string & source = "<assignment>")
{
    detail::LineReader in(text, source);
    HAssignment h;
    while (!in.done()) {
        const auto t = in.next_tokens();
        if (t.size() != 4 || t[2] != "->")
            in.fail("expected \"u v -> <name>\"");
        const std::size_t u = in.number(t[0], "vertex id", 1), v = in.number(t[1], "vertex id", 1);
        if (h.find({u - 1, v - 1}))
            in.fail("arc " + t[0] + " " + t[1] + " assigned twice");
        h.assign({u - 1, v - 1}, t[3]);
    }
    return h;
}

inline std::string write_assignment(const HAssignment & h)
{
    std::ostringstream out;
    for (const auto & [arc, name] : h.entries())
        out << arc.tail + 1 << ' ' << arc.head + 1 << " -> " << name << '\n';
    return out.str();
}

// labeling p q sum [super] / v x label / e u v label

inline MagicCertificate parse_certificate(std::string_view text, const std::string & source = "<certificate>")
{
    detail::LineReader in(text, source);
    const auto t = in.next_tokens();
    if ((t.size() != 4 && t.size() != 5) || t[0] != "labeling" || (t.size() == 5 && t[4] != "super"))
        in.fail("expected header \"labeling p q sum [super]\"");
    const std::size_t p = in.number(t[1], "p"), q = in.number(t[2], "q");
    const Label claimed = in.signed_number(t[3], "magic sum");
    const bool claimed_super = t.size() == 5;
    Graph g(p);
    std::vector<Label> vertices(p, 0);
    std::vector<bool> seen(p, false);
    std::map<Edge, Label> edges;
    while (!in.done()) {
        const auto row = in.next_tokens();
        if (row.size() == 3 && row[0] == "v") {
            const Vertex v = in.vertex(row[1], p);
            if (seen[v])
                in.fail("vertex " + row[1] + " labeled twice");
            seen[v] = true;
            vertices[v] = in.signed_number(row[2], "label");
        }
        else if (row.size() == 4 && row[0] == "e") {
            const Vertex u = in.vertex(row[1], p), v = in.vertex(row[2], p);
            const bool fresh = in.guarded([&] { return g.add_edge(u, v); });
            if (!fresh)
                in.fail("edge " + row[1] + " " + row[2] + " labeled twice");
            edges[Edge(u, v)] = in.signed_number(row[3], "label");
        }
        else
            in.fail("expected \"v <vertex> <label>\" or \"e <u> <v> <label>\"");
    }
    for (Vertex v = 0; v < p; ++v)
        if (!seen[v])
            in.fail_at_end("vertex " + std::to_string(v + 1) + " has no label");
    if (g.size() != q)
        in.fail_at_end("header declares " + std::to_string(q) + " edges, found " + std::to_string(g.size()));
    TotalLabeling lab(std::move(g), std::move(vertices), std::move(edges));
    auto cert = verify(lab);
    if (!cert)
        throw Error(ErrorCode::malformed_labeling, source + ": edge sums are not constant");
    if (cert->magic_sum != claimed)
        throw Error(ErrorCode::malformed_labeling, source + ": header claims sum " + std::to_string(claimed) +
                                                       ", edges give " + std::to_string(cert->magic_sum));
    if (claimed_super && !cert->super)
        throw Error(ErrorCode::malformed_labeling, source + ": header claims super but vertex labels exceed p");
    return *std::move(cert);
}

/// Reads a labeling without requiring it to be magic; sums are not checked.
inline TotalLabeling parse_labeling(std::string_view text, const std::string & source = "<certificate>")
{
    detail::LineReader in(text, source);
    const auto t = in.next_tokens();
    if ((t.size() != 4 && t.size() != 5) || t[0] != "labeling")
        in.fail("expected header \"labeling p q sum [super]\"");
    const std::size_t p = in.number(t[1], "p");
    Graph g(p);
    std::vector<Label> vertices(p, 0);
    std::map<Edge, Label> edges;
    while (!in.done()) {
        const auto row = in.next_tokens();
        if (row.size() == 3 && row[0] == "v")
            vertices[in.vertex(row[1], p)] = in.signed_number(row[2], "label");
        else if (row.size() == 4 && row[0] == "e") {
            const Vertex u = in.vertex(row[1], p), v = in.vertex(row[2], p);
            in.guarded([&] { return g.add_edge(u, v); });
            edges[Edge(u, v)] = in.signed_number(row[3], "label");
        }
        else
            in.fail("expected \"v <vertex> <label>\" or \"e <u> <v> <label>\"");
    }
    return TotalLabeling(std::move(g), std::move(vertices), std::move(edges));
}

inline std::string write_certificate(const MagicCertificate & cert)
{
    const auto & lab = cert.labeling;
    std::ostringstream out;
    out << "labeling " << lab.p() << ' ' << lab.q() << ' ' << cert.magic_sum << (cert.super ? " super" : "") << '\n';
    for (Vertex v = 0; v < lab.p(); ++v)
        out << "v " << v + 1 << ' ' << lab.vertex(v) << '\n';
    for (const auto & [e, l] : lab.edge_labels())
        out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << l << '\n';
    return out.str();
}

// form m / m trees, root first

/// Preorder from the root, children ascending by vertex id.
inline std::string write_tree(const RootedTree & t)
{
    const auto nbrs = t.graph().neighbours();
    std::string out;
    struct Frame {
        Vertex v, parent;
        std::size_t next;
    };
    std::vector<Frame> stack{{t.root(), t.root(), 0}};
    out += '(';
    while (!stack.empty()) {
        auto & f = stack.back();
        if (f.next < nbrs[f.v].size()) {
            const Vertex w = nbrs[f.v][f.next++];
            if (w == f.parent && f.v != t.root())
                continue;
            out += '(';
            stack.push_back({w, f.v, 0});
        }
        else {
            out += ')';
            stack.pop_back();
        }
    }
    return out;
}

/// One or more "form m" blocks; each gives one component.
inline std::vector<UnicyclicForm> parse_forms(std::string_view text, const std::string & source = "<forms>")
{
    detail::LineReader in(text, source);
    std::vector<UnicyclicForm> forms;
    do {
        const std::size_t m = detail::header(in, "form");
        if (m == 0)
            in.fail("a form needs at least one tree");
        UnicyclicForm form;
        for (std::size_t i = 0; i < m; ++i) {
            if (in.done())
                in.fail_at_end("form declares " + std::to_string(m) + " trees, found " + std::to_string(i));
            const auto t = in.next_tokens();
            std::string joined;
            for (const auto & tok : t)
                joined += tok;
            form.trees.push_back(in.guarded([&] { return RootedTree::parse(joined); }));
        }
        forms.push_back(std::move(form));
    } while (!in.done());
    return forms;
}

inline std::string write_forms(const std::vector<UnicyclicForm> & forms)
{
    std::ostringstream out;
    for (const auto & f : forms) {
        out << "form " << f.cycle_length() << '\n';
        for (const auto & t : f.trees)
            out << write_tree(t) << '\n';
    }
    return out.str();
}

/// "[T1 T2 ...]^k" with trees in nested-paren form; ^k omitted when k = 1.
inline std::string describe(const PeriodicForm & f)
{
    std::string out = "[";
    for (std::size_t i = 0; i < f.base.trees.size(); ++i)
        out += (i ? " " : "") + write_tree(f.base.trees[i]);
    out += "]";
    if (f.multiplicity != 1)
        out += "^" + std::to_string(f.multiplicity);
    return out;
}

// DOT

inline std::string dot_id(const std::string & s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string to_dot(const Digraph & d, const std::string & name = "D")
{
    std::ostringstream out;
    out << "digraph " << dot_id(name) << " {\n";
    for (Vertex v = 0; v < d.order(); ++v)
        out << "  " << v + 1 << ";\n";
    for (const auto & [arc, mult] : d.arcs())
        for (std::size_t c = 0; c < mult; ++c)
            out << "  " << arc.tail + 1 << " -> " << arc.head + 1 << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const Graph & g, const std::string & name = "G")
{
    std::ostringstream out;
    out << "graph " << dot_id(name) << " {\n";
    for (Vertex v = 0; v < g.order(); ++v)
        out << "  " << v + 1 << ";\n";
    for (const auto & e : g.edges())
        out << "  " << e.u + 1 << " -- " << e.v + 1 << ";\n";
    out << "}\n";
    return out.str();
}

/// Labeled graph: vertex and edge labels as DOT labels.
inline std::string to_dot(const MagicCertificate & cert, const std::string & name = "G")
{
    const auto & lab = cert.labeling;
    std::ostringstream out;
    out << "graph " << dot_id(name) << " {\n";
    out << "  label=" << dot_id("magic sum " + std::to_string(cert.magic_sum) + (cert.super ? " (super)" : "")) << ";\n";
    for (Vertex v = 0; v < lab.p(); ++v)
        out << "  " << v + 1 << " [label=\"" << lab.vertex(v) << "\"];\n";
    for (const auto & [e, l] : lab.edge_labels())
        out << "  " << e.u + 1 << " -- " << e.v + 1 << " [label=\"" << l << "\"];\n";
    out << "}\n";
    return out.str();
}

/// M_h with one edge per coloured copy; colours cycle through three line styles.
inline std::string to_dot(const ColoredMultiDigraph & mh, const std::string & name = "M_h")
{
    static constexpr const char * styles[] = {"dashed", "solid", "dotted"};
    std::ostringstream out;
    out << "digraph " << dot_id(name) << " {\n";
    for (Vertex v = 0; v < mh.base.order(); ++v)
        out << "  " << v + 1 << ";\n";
    for (const auto & a : mh.arcs)
        out << "  " << a.tail + 1 << " -> " << a.head + 1 << " [label=\"" << a.color + 1 << "\", style="
            << styles[a.color % 3] << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace hprod::io
