#pragma once

// Edge-magic total labelings: a bijection V u E -> {1..p+q} with
// f(x) + f(xy) + f(y) constant over all edges. Super: vertices get {1..p}.

#include <hprod/digraph.hpp>
#include <hprod/product.hpp>
#include <hprod/unicyclic.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hprod {

using Label = std::int64_t;

class TotalLabeling {
public:
    TotalLabeling() = default;

    TotalLabeling(Graph graph, std::vector<Label> vertex_labels, std::map<Edge, Label> edge_labels)
        : graph_(std::move(graph)), vertex_labels_(std::move(vertex_labels)), edge_labels_(std::move(edge_labels))
    {
        if (vertex_labels_.size() != graph_.order())
            throw Error(ErrorCode::malformed_labeling, "expected " + std::to_string(graph_.order()) +
                                                           " vertex labels, got " +
                                                           std::to_string(vertex_labels_.size()));
        if (edge_labels_.size() != graph_.size())
            throw Error(ErrorCode::malformed_labeling, "expected " + std::to_string(graph_.size()) +
                                                           " edge labels, got " + std::to_string(edge_labels_.size()));
        for (const auto & [e, label] : edge_labels_)
            if (!graph_.has_edge(e.u, e.v))
                throw Error(ErrorCode::malformed_labeling, "label given for non-edge {" + std::to_string(e.u + 1) +
                                                               ", " + std::to_string(e.v + 1) + "}");
    }

    const Graph & graph() const noexcept { return graph_; }
    std::size_t p() const noexcept { return graph_.order(); }
    std::size_t q() const noexcept { return graph_.size(); }
    Label vertex(Vertex v) const { return vertex_labels_.at(v); }
    Label edge(Vertex a, Vertex b) const { return edge_labels_.at(Edge(a, b)); }
    const std::vector<Label> & vertex_labels() const noexcept { return vertex_labels_; }
    const std::map<Edge, Label> & edge_labels() const noexcept { return edge_labels_; }

    bool is_bijective() const
    {
        const std::size_t total = p() + q();
        std::vector<bool> hit(total + 1, false);
        auto take = [&](Label l) {
            if (l < 1 || static_cast<std::size_t>(l) > total || hit[static_cast<std::size_t>(l)])
                return false;
            hit[static_cast<std::size_t>(l)] = true;
            return true;
        };
        for (Label l : vertex_labels_)
            if (!take(l))
                return false;
        for (const auto & [e, l] : edge_labels_)
            if (!take(l))
                return false;
        return true;
    }

    friend bool operator==(const TotalLabeling &, const TotalLabeling &) = default;

private:
    Graph graph_;
    std::vector<Label> vertex_labels_;
    std::map<Edge, Label> edge_labels_;
};

struct MagicCertificate {
    TotalLabeling labeling;
    Label magic_sum = 0;
    bool super = false;
};

/// The certificate if every edge sum agrees; throws on a non-bijective labeling.
inline std::optional<MagicCertificate> verify(const TotalLabeling & lab)
{
    if (!lab.is_bijective())
        throw Error(ErrorCode::malformed_labeling, "labels are not a bijection onto {1.." +
                                                       std::to_string(lab.p() + lab.q()) + "}");
    std::optional<Label> sum;
    for (const auto & [e, l] : lab.edge_labels()) {
        Label s = lab.vertex(e.u) + l + lab.vertex(e.v);
        if (sum && *sum != s)
            return std::nullopt;
        sum = s;
    }
    if (!sum)
        return std::nullopt;
    const bool super = std::all_of(lab.vertex_labels().begin(), lab.vertex_labels().end(),
                                   [&](Label l) { return static_cast<std::size_t>(l) <= lab.p(); });
    return MagicCertificate{lab, *sum, super};
}

namespace detail {

/// Constructors call this: a labeling they emit that fails to verify is a bug.
inline MagicCertificate certify(const TotalLabeling & lab, const char * who)
{
    try {
        if (auto cert = verify(lab))
            return *std::move(cert);
    }
    catch (const Error & e) {
        throw Error(ErrorCode::construction_bug, std::string(who) + " produced a non-bijective labeling: " + e.what());
    }
    throw Error(ErrorCode::construction_bug, std::string(who) + " produced a labeling without a common edge sum");
}

} // namespace detail

/// Edge labels forced by vertex labels and a magic sum.
inline TotalLabeling complete_labeling(const Graph & g, const std::vector<Label> & vertex_labels, Label magic_sum)
{
    std::map<Edge, Label> edges;
    for (const auto & e : g.edges())
        edges[e] = magic_sum - vertex_labels.at(e.u) - vertex_labels.at(e.v);
    return TotalLabeling(g, vertex_labels, std::move(edges));
}

/// x -> p+q+1-x on every label; sum becomes 3(p+q+1) - k.
inline TotalLabeling complement(const TotalLabeling & lab)
{
    const Label top = static_cast<Label>(lab.p() + lab.q()) + 1;
    std::vector<Label> vertices;
    for (Label l : lab.vertex_labels())
        vertices.push_back(top - l);
    std::map<Edge, Label> edges;
    for (const auto & [e, l] : lab.edge_labels())
        edges[e] = top - l;
    return TotalLabeling(lab.graph(), std::move(vertices), std::move(edges));
}

struct SearchOptions {
    bool super_only = false;
    std::size_t limit = 0; // 0: all
    std::size_t max_total = 20; // refuse when p + q exceeds this
};

/// Exhaustive backtracking. Results ordered by magic sum, then by vertex
/// labels lexicographically.
inline std::vector<MagicCertificate> search_sem(const Graph & g, const SearchOptions & options = {})
{
    const std::size_t p = g.order(), q = g.size(), total = p + q;
    if (total > options.max_total)
        throw Error(ErrorCode::search_refused, "p + q = " + std::to_string(total) + " exceeds the search bound " +
                                                   std::to_string(options.max_total) +
                                                   "; raise max_total only for graphs known to prune well");
    if (q == 0)
        return {};
    const auto nbrs = g.neighbours();
    std::vector<MagicCertificate> found;
    std::vector<Label> labels(p, 0);

    if (options.super_only) {
        // Vertex labels are a permutation of 1..p; the edge sums f(x)+f(y) must
        // be q distinct values spanning exactly q consecutive integers.
        std::vector<bool> used(p + 1, false);
        std::multiset<Label> sums;
        auto recurse = [&](auto && self, Vertex v) -> void {
            if (v == p) {
                const Label k = *sums.begin() + static_cast<Label>(p + q);
                if (auto cert = verify(complete_labeling(g, labels, k)))
                    found.push_back(*std::move(cert));
                return;
            }
            for (Label l = 1; l <= static_cast<Label>(p); ++l) {
                if (used[static_cast<std::size_t>(l)])
                    continue;
                std::vector<Label> added;
                bool ok = true;
                for (Vertex w : nbrs[v]) {
                    if (w >= v)
                        continue;
                    Label s = l + labels[w];
                    if (sums.contains(s) ||
                        std::find(added.begin(), added.end(), s) != added.end()) {
                        ok = false;
                        break;
                    }
                    added.push_back(s);
                }
                if (ok && !added.empty()) {
                    Label lo = std::min(sums.empty() ? added.front() : *sums.begin(),
                                        *std::min_element(added.begin(), added.end()));
                    Label hi = std::max(sums.empty() ? added.front() : *sums.rbegin(),
                                        *std::max_element(added.begin(), added.end()));
                    ok = hi - lo <= static_cast<Label>(q) - 1;
                }
                if (!ok)
                    continue;
                used[static_cast<std::size_t>(l)] = true;
                labels[v] = l;
                for (Label s : added)
                    sums.insert(s);
                self(self, v + 1);
                for (Label s : added)
                    sums.erase(sums.find(s));
                used[static_cast<std::size_t>(l)] = false;
            }
        };
        recurse(recurse, 0);
        std::sort(found.begin(), found.end(), [](const MagicCertificate & a, const MagicCertificate & b) {
            return std::tie(a.magic_sum, a.labeling.vertex_labels()) < std::tie(b.magic_sum, b.labeling.vertex_labels());
        });
        if (options.limit && found.size() > options.limit)
            found.resize(options.limit);
        return found;
    }

    // General edge-magic: fix k, place vertex labels, derive edge labels on the fly.
    const Label top = static_cast<Label>(total);
    std::vector<bool> used(total + 1, false);
    for (Label k = 6; k <= 3 * top - 3; ++k) {
        auto recurse = [&](auto && self, Vertex v) -> bool {
            if (v == p) {
                found.push_back(detail::certify(complete_labeling(g, labels, k), "search_sem"));
                return options.limit && found.size() >= options.limit;
            }
            for (Label l = 1; l <= top; ++l) {
                if (used[static_cast<std::size_t>(l)])
                    continue;
                used[static_cast<std::size_t>(l)] = true;
                std::vector<Label> taken;
                bool ok = true;
                for (Vertex w : nbrs[v]) {
                    if (w >= v)
                        continue;
                    Label e = k - l - labels[w];
                    if (e < 1 || e > top || used[static_cast<std::size_t>(e)]) {
                        ok = false;
                        break;
                    }
                    used[static_cast<std::size_t>(e)] = true;
                    taken.push_back(e);
                }
                bool stop = false;
                if (ok) {
                    labels[v] = l;
                    stop = self(self, v + 1);
                }
                for (Label e : taken)
                    used[static_cast<std::size_t>(e)] = false;
                used[static_cast<std::size_t>(l)] = false;
                if (stop)
                    return true;
            }
            return false;
        };
        if (recurse(recurse, 0))
            break;
    }
    return found;
}

/// A super edge-magic labeled digraph of order = size = n whose vertex i
/// carries label i+1; edge labels follow from the magic sum.
class SemDigraph {
public:
    SemDigraph(Digraph digraph, Label magic_sum) : digraph_(std::move(digraph)), magic_sum_(magic_sum)
    {
        const std::size_t n = digraph_.order();
        if (digraph_.size() != n)
            throw Error(ErrorCode::precondition, "order and size must agree");
        const Graph g = underlying(digraph_);
        if (g.size() != n)
            throw Error(ErrorCode::not_simple, "digraph has opposite arcs between one pair of vertices");
        std::vector<Label> vertices(n);
        for (Vertex v = 0; v < n; ++v)
            vertices[v] = static_cast<Label>(v) + 1;
        auto cert = verify(complete_labeling(g, vertices, magic_sum_));
        if (!cert || !cert->super)
            throw Error(ErrorCode::malformed_labeling, "vertex names do not form a super edge-magic labeling with sum " +
                                                           std::to_string(magic_sum_));
    }

    const Digraph & digraph() const noexcept { return digraph_; }
    std::size_t order() const noexcept { return digraph_.order(); }
    Label magic_sum() const noexcept { return magic_sum_; }

    MagicCertificate certificate() const
    {
        std::vector<Label> vertices(order());
        for (Vertex v = 0; v < order(); ++v)
            vertices[v] = static_cast<Label>(v) + 1;
        return detail::certify(complete_labeling(underlying(digraph_), vertices, magic_sum_), "SemDigraph");
    }

private:
    Digraph digraph_;
    Label magic_sum_;
};

inline SemDigraph reverse(const SemDigraph & d) { return SemDigraph(reverse(d.digraph()), d.magic_sum()); }

/// Named members all sharing one (n, k).
class SemFamily {
public:
    void add(std::string name, SemDigraph member)
    {
        if (!members_.empty() &&
            (member.order() != members_.front().second.order() ||
             member.magic_sum() != members_.front().second.magic_sum()))
            throw Error(ErrorCode::family_consistency, "member " + name + " has (n, k) = (" +
                                                           std::to_string(member.order()) + ", " +
                                                           std::to_string(member.magic_sum()) +
                                                           ") but the family uses (" +
                                                           std::to_string(order()) + ", " +
                                                           std::to_string(magic_sum()) + ")");
        members_.emplace_back(std::move(name), std::move(member));
    }

    std::size_t order() const { return members_.empty() ? 0 : members_.front().second.order(); }
    Label magic_sum() const { return members_.empty() ? 0 : members_.front().second.magic_sum(); }
    const std::vector<std::pair<std::string, SemDigraph>> & members() const noexcept { return members_; }

    Family family() const
    {
        Family result(order());
        for (const auto & [name, m] : members_)
            result.add(name, m.digraph());
        return result;
    }

private:
    std::vector<std::pair<std::string, SemDigraph>> members_;
};

namespace detail {

inline std::optional<std::vector<Label>> odd_cycle_search(std::size_t n)
{
    // Labels around the cycle; adjacent sums must be distinct and lie in
    // [(n+3)/2, (3n+1)/2] so the edge labels fill {n+1..2n}.
    const Label lo = static_cast<Label>((n + 3) / 2), hi = static_cast<Label>((3 * n + 1) / 2);
    std::vector<Label> seq(n, 0);
    std::vector<bool> used(n + 1, false), sum_used(static_cast<std::size_t>(hi) + 1, false);
    seq[0] = 1;
    used[1] = true;
    auto recurse = [&](auto && self, std::size_t pos) -> bool {
        if (pos == n) {
            Label s = seq[n - 1] + seq[0];
            return s >= lo && s <= hi && !sum_used[static_cast<std::size_t>(s)];
        }
        for (Label l = 2; l <= static_cast<Label>(n); ++l) {
            Label s = l + seq[pos - 1];
            if (used[static_cast<std::size_t>(l)] || s < lo || s > hi || sum_used[static_cast<std::size_t>(s)])
                continue;
            used[static_cast<std::size_t>(l)] = sum_used[static_cast<std::size_t>(s)] = true;
            seq[pos] = l;
            if (self(self, pos + 1))
                return true;
            used[static_cast<std::size_t>(l)] = sum_used[static_cast<std::size_t>(s)] = false;
        }
        return false;
    };
    if (recurse(recurse, 1))
        return seq;
    return std::nullopt;
}

} // namespace detail

/// A super edge-magic labeled C_n^+ with sum (5n+3)/2, vertices named by labels.
/// Found by search; results for n <= 15 are memoized.
inline SemDigraph sem_odd_cycle(std::size_t n)
{
    if (n < 3 || n % 2 == 0)
        throw Error(ErrorCode::no_labeling, "no super edge-magic odd-cycle labeling for n = " + std::to_string(n));
    static std::mutex cache_mutex;
    static std::map<std::size_t, std::vector<Label>> cache;
    std::optional<std::vector<Label>> seq;
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find(n); it != cache.end())
            seq = it->second;
    }
    if (!seq) {
        seq = detail::odd_cycle_search(n);
        if (!seq)
            throw Error(ErrorCode::no_labeling, "search found no labeling for C_" + std::to_string(n));
        if (n <= 15) {
            std::lock_guard lock(cache_mutex);
            cache.emplace(n, *seq);
        }
    }
    Digraph d(n);
    for (std::size_t i = 0; i < n; ++i)
        d.add_arc({static_cast<Vertex>((*seq)[i] - 1), static_cast<Vertex>((*seq)[(i + 1) % n] - 1)});
    return SemDigraph(std::move(d), static_cast<Label>((5 * n + 3) / 2));
}

/// The closed form n(sigma_f - 3) + n + k as stated for the induced product
/// labeling. The bijective labels built by product_labeling realise
/// product_magic_sum instead, which is 2n smaller.
inline Label magic_sum_formula(Label sigma_f, Label n, Label k) { return n * (sigma_f - 3) + n + k; }

/// Magic sum of the labeling product_labeling builds: n(sigma_f - 3) + k - n.
inline Label product_magic_sum(Label sigma_f, Label n, Label k) { return n * (sigma_f - 3) + k - n; }

struct LabeledProduct {
    Product product;
    MagicCertificate certificate;
};

/// Labels und(host (x)_h gamma) from an edge-magic labeling f of und(host).
/// With host vertex a named i = f(a), host arc named e = f(arc), and fibre
/// vertices named j = x+1: vertex (a, x) gets n(i-1)+j and the arc from
/// (a, x) to (b, y) gets n(e-1) + k - n - (j + j').
inline LabeledProduct product_labeling(const Digraph & host, const MagicCertificate & f, const SemFamily & gamma,
                                       const HAssignment & h)
{
    if (gamma.members().empty())
        throw Error(ErrorCode::family_consistency, "empty family");
    const Graph host_graph = underlying(host);
    if (host_graph.size() != host.arcs().size())
        throw Error(ErrorCode::precondition, "host has opposite arcs between one pair of vertices");
    if (!(f.labeling.graph() == host_graph))
        throw Error(ErrorCode::malformed_labeling, "certificate does not label the host's underlying graph");
    if (!verify(f.labeling))
        throw Error(ErrorCode::malformed_labeling, "host certificate is not edge-magic");

    const auto n = static_cast<Label>(gamma.order());
    const Label k = gamma.magic_sum();
    Product product = otimes_h(host, gamma.family(), h);
    const Graph g = underlying(product.digraph);

    std::vector<Label> vertices(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto [a, x] = product.split(v);
        vertices[v] = n * (f.labeling.vertex(a) - 1) + static_cast<Label>(x) + 1;
    }
    std::map<Edge, Label> edges;
    for (const auto & [arc, mult] : product.digraph.arcs()) {
        const auto from = product.split(arc.tail), to = product.split(arc.head);
        const Label e = f.labeling.edge(from.host, to.host);
        const Label j = static_cast<Label>(from.fiber) + 1, jj = static_cast<Label>(to.fiber) + 1;
        edges[Edge(arc.tail, arc.head)] = n * (e - 1) + k - n - (j + jj);
    }
    auto cert = detail::certify(TotalLabeling(g, std::move(vertices), std::move(edges)), "product_labeling");
    if (cert.magic_sum != product_magic_sum(f.magic_sum, n, k))
        throw Error(ErrorCode::construction_bug, "product labeling sum differs from n(sigma_f - 3) + k - n");
    return {std::move(product), std::move(cert)};
}

namespace detail {

inline MagicCertificate doubled_labeling(const MagicCertificate & f, Label vertex_shift, Label sum_shift,
                                         const char * who)
{
    if (!f.super || f.labeling.p() != f.labeling.q())
        throw Error(ErrorCode::precondition, std::string(who) + " needs a super edge-magic labeling with p = q");
    const auto p = static_cast<Label>(f.labeling.p());
    const Label val = 2 * f.magic_sum - 2 * p - sum_shift;
    std::vector<Label> vertices;
    for (Label l : f.labeling.vertex_labels())
        vertices.push_back(2 * l - vertex_shift);
    return certify(complete_labeling(f.labeling.graph(), vertices, val), who);
}

} // namespace detail

/// o(f): vertices 2f(x)-1, sum 2 val(f) - 2p - 2.
inline MagicCertificate odd_labeling(const MagicCertificate & f) { return detail::doubled_labeling(f, 1, 2, "odd_labeling"); }

/// e(f): vertices 2f(x), sum 2 val(f) - 2p - 1.
inline MagicCertificate even_labeling(const MagicCertificate & f) { return detail::doubled_labeling(f, 0, 1, "even_labeling"); }

struct AmplifyStep {
    SemFamily family;
    std::function<HAssignment(const Digraph &)> assign;
};

struct AmplifyResult {
    Digraph digraph; // the final D_{i+1}
    std::vector<MagicCertificate> certificates;
    std::vector<bool> product_induced; // parallel to certificates
    std::size_t super_index = 0; // the super labeling carried forward

    std::set<Label> distinct_sums() const
    {
        std::set<Label> result;
        for (const auto & c : certificates)
            result.insert(c.magic_sum);
        return result;
    }
};

/// Starting from a super labeled host with order = size, repeatedly forms
/// the product, carrying every known labeling through it and adding the odd
/// and even labelings of the new super one.
inline AmplifyResult amplify(const Digraph & host, const MagicCertificate & super_seed, std::span<const AmplifyStep> steps)
{
    if (!super_seed.super)
        throw Error(ErrorCode::precondition, "the seed labeling must be super edge-magic");
    AmplifyResult state{host, {super_seed, odd_labeling(super_seed), even_labeling(super_seed)}, {false, false, false}, 0};
    for (const auto & step : steps) {
        const HAssignment h = step.assign(state.digraph);
        AmplifyResult next;
        for (std::size_t i = 0; i < state.certificates.size(); ++i) {
            auto lp = product_labeling(state.digraph, state.certificates[i], step.family, h);
            if (i == state.super_index) {
                next.digraph = lp.product.digraph;
                next.super_index = next.certificates.size();
            }
            next.certificates.push_back(std::move(lp.certificate));
            next.product_induced.push_back(true);
        }
        const MagicCertificate & super = next.certificates[next.super_index];
        if (!super.super)
            throw Error(ErrorCode::construction_bug, "product of super labelings is not super");
        auto odd = odd_labeling(super);
        auto even = even_labeling(super);
        next.certificates.push_back(std::move(odd));
        next.certificates.push_back(std::move(even));
        next.product_induced.insert(next.product_induced.end(), {false, false});
        state = std::move(next);
    }
    if (state.distinct_sums().size() < steps.size() + 2)
        throw Error(ErrorCode::construction_bug, "fewer distinct magic sums than the guaranteed " +
                                                     std::to_string(steps.size() + 2));
    return state;
}

/// Each step uses the given family with members chosen cyclically by
/// `pattern` over the current host's arcs in (tail, head) order.
inline AmplifyStep patterned_step(SemFamily family, std::vector<std::size_t> pattern)
{
    if (pattern.empty())
        pattern = {0};
    std::vector<std::string> names;
    for (const auto & [name, m] : family.members())
        names.push_back(name);
    for (auto idx : pattern)
        if (idx >= names.size())
            throw Error(ErrorCode::family_consistency, "pattern refers to member " + std::to_string(idx + 1) +
                                                           " of a family with " + std::to_string(names.size()));
    auto assign = [names, pattern](const Digraph & d) {
        HAssignment h;
        std::size_t i = 0;
        for (const auto & [arc, mult] : d.arcs())
            h.assign(arc, names[pattern[i++ % pattern.size()]]);
        return h;
    };
    return {std::move(family), std::move(assign)};
}

inline AmplifyResult amplify_sem(const SemDigraph & seed, std::span<const AmplifyStep> steps)
{
    return amplify(seed.digraph(), seed.certificate(), steps);
}

/// {sem_odd_cycle(n), its reverse} under the names "C+" and "C-".
inline SemFamily sem_plus_minus(std::size_t n)
{
    SemFamily family;
    const SemDigraph plus = sem_odd_cycle(n);
    family.add("C+", plus);
    family.add("C-", reverse(plus));
    return family;
}

struct LabeledDecomposition {
    LabeledProduct labeled;
    std::vector<PeriodicForm> expected; // n G_j for j in J, G_i^n otherwise
};

/// Labels (sum_{j in J} n G_j) + (sum_{i not in J} G_i^n) from a labeling of
/// G = sum G_i. `in_j` flags the components of J.
inline LabeledDecomposition label_decomposition(const std::vector<UnicyclicForm> & forms, const MagicCertificate & seed,
                                   const std::vector<bool> & in_j, std::size_t n)
{
    if (n < 3 || n % 2 == 0)
        throw Error(ErrorCode::precondition, "n must be odd and at least 3");
    if (in_j.size() != forms.size())
        throw Error(ErrorCode::size_mismatch, "J membership must be given per component");
    const OrientedUnicyclic d = orient(forms);
    std::vector<std::size_t> r;
    LabeledDecomposition result;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const std::size_t m = forms[i].cycle_length();
        if (in_j[i]) {
            if (m % 2 == 1 && m < n)
                throw Error(ErrorCode::precondition, "component " + std::to_string(i + 1) + " has odd cycle length " +
                                                         std::to_string(m) + " < n = " + std::to_string(n));
            r.push_back(split_reversals(m, n));
            for (std::size_t c = 0; c < n; ++c)
                result.expected.push_back({forms[i], 1});
        }
        else {
            r.push_back(growth_reversals(m));
            result.expected.push_back({forms[i], n});
        }
    }
    result.labeled = product_labeling(d.digraph, seed, sem_plus_minus(n), reversal_assignment(d, r));
    return result;
}

/// Super labelings of sum_i a_i G^{n^{s+i}} obtained by labeling every
/// product step of the plan.
inline AmplifyResult label_plan(const UnicyclicForm & g, const MagicCertificate & seed,
                                          const DecompositionPlan & plan)
{
    if (!seed.super)
        throw Error(ErrorCode::precondition, "the seed labeling must be super edge-magic");
    const SemFamily family = sem_plus_minus(plan.n);
    std::vector<AmplifyStep> steps;
    for (std::size_t step = 1; step <= plan.l + plan.s + 1; ++step)
        steps.push_back({family, [plan, step](const Digraph & current) {
                             const auto structure = analyze_unicyclic(current);
                             return reversal_assignment(structure, plan_step_reversals(plan, step, structure));
                         }});
    auto result = amplify(orient(g).digraph, seed, steps);
    if (result.distinct_sums().size() < plan.l + plan.s + 1)
        throw Error(ErrorCode::construction_bug, "fewer distinct magic sums than l + s + 1");
    return result;
}

} // namespace hprod
