// hprod: command-line front end. Exit status 0 when every check passes,
// 1 when a check fails, 2 on invalid input.

#include "report.hpp"

#include <hprod.hpp>

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hprod;
using cli::braces;
using cli::Json;
using cli::RunReport;

struct Globals {
    std::uint64_t seed = 20240601;
    std::string dot;
    std::string format = "text";
};

std::string load(RunReport & report, const std::string & path)
{
    std::string content = io::read_file(path);
    report.input(path, content);
    return content;
}

/// Writes content, reads it back through the parser and re-serializes: the
/// two texts must match.
void emit(RunReport & report, const std::string & path, const std::string & content,
          const std::function<std::string(const std::string &)> & reserialize)
{
    io::write_file(path, content);
    const std::string back = io::read_file(path);
    report.output(path, content);
    const bool same = reserialize(back) == content;
    report.check("round-trip " + path, same, "identical text", same ? "identical text" : "differs");
}

void emit_dot(RunReport & report, const Globals & g, const std::string & content)
{
    if (g.dot.empty())
        return;
    io::write_file(g.dot, content);
    report.output(g.dot, content);
    const bool same = io::read_file(g.dot) == content;
    report.check("round-trip " + g.dot, same, "identical text", same ? "identical text" : "differs");
}

template <class T>
std::vector<T> parse_list(const std::string & text, const char * what)
{
    std::vector<T> result;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(token, &used);
            if (used != token.size() || v < 0)
                throw std::invalid_argument(token);
            result.push_back(static_cast<T>(v));
        }
        catch (const std::logic_error &) {
            throw Error(ErrorCode::parse, std::string("bad ") + what + " list \"" + text + "\"");
        }
    }
    return result;
}

Multiset sorted(Multiset m)
{
    std::sort(m.begin(), m.end());
    return m;
}

// product

struct ProductArgs {
    std::string host, family, assign, output, expect;
};

void cmd_product(RunReport & r, const Globals & g, const ProductArgs & a)
{
    const Digraph host = io::parse_digraph(load(r, a.host), a.host);
    const Family gamma = io::parse_family(load(r, a.family), a.family);
    const HAssignment h = io::parse_assignment(load(r, a.assign), a.assign);
    const Product p = otimes_h(host, gamma, h);
    r.note("order", std::to_string(p.digraph.order()));
    r.note("size", std::to_string(p.digraph.size()));
    r.data("order", p.digraph.order());
    r.data("size", p.digraph.size());
    std::optional<Multiset> lengths;
    if (p.digraph.is_one_regular()) {
        lengths = cycle_length_multiset(p.digraph);
        r.note("components", braces(*lengths));
        r.data("components", *lengths);
    }
    else {
        const auto weak = class_sizes(weak_components(p.digraph));
        const auto strong = class_sizes(strong_components(p.digraph));
        r.note("weak components", braces(weak));
        r.note("strong components", braces(strong));
        r.data("weak_components", weak);
        r.data("strong_components", strong);
        lengths = strong;
    }
    r.check("block substitution agrees", matches_block_construction(p.digraph, host, gamma, h), "equal adjacency",
            "equal adjacency");
    if (!a.expect.empty()) {
        const auto expected = sorted(parse_list<std::size_t>(a.expect, "component"));
        r.check("expected components", expected == *lengths, braces(expected), braces(*lengths));
    }
    if (!a.output.empty())
        emit(r, a.output, io::write_digraph(p.digraph),
             [&](const std::string & t) { return io::write_digraph(io::parse_digraph(t, a.output)); });
    emit_dot(r, g, io::to_dot(p.digraph, "product"));
}

// predict

struct PredictArgs {
    std::string family, assign, host, forms, reversals;
    std::size_t n = 0;
    std::size_t random = 0;
};

struct ThreeWay {
    std::string ph;
    Multiset predicted, rainbow, brute;
    bool eulerian_iff_single = true;
};

ThreeWay three_way(const Digraph & host, const Family & gamma, const HAssignment & h)
{
    const std::size_t m = host.order();
    std::vector<Permutation> factors;
    for (Vertex i = 0; i < m; ++i)
        factors.push_back(from_one_regular(gamma.member(h.at({i, (i + 1) % m}))));
    const Permutation ph = product_ph(factors);
    const auto mh = build_mh(m, gamma, h);
    const auto circuits = find_rainbow_circuits(mh, ColorSequence::natural(m));
    const auto product = otimes_h(host, gamma, h).digraph;
    ThreeWay t{format_cycles(ph), predict_components(m, ph), circuit_lengths(circuits), {}, true};
    const auto strong = strong_components(product);
    t.brute = product.is_one_regular() ? cycle_length_multiset(product) : class_sizes(strong);
    t.eulerian_iff_single = is_rainbow_eulerian(mh, ColorSequence::natural(m)) == (strong.size() == 1) &&
                            circuits_partition_arcs(mh, circuits);
    return t;
}

void cmd_predict(RunReport & r, const Globals & g, const PredictArgs & a)
{
    if (a.random > 0) {
        random::Rng rng(g.seed);
        std::size_t agree = 0;
        std::optional<std::string> first_failure;
        for (std::size_t trial = 0; trial < a.random; ++trial) {
            const auto inst = random::cycle_instance(rng, 6, 8);
            const auto t = three_way(inst.host, inst.gamma, inst.h);
            if (t.predicted == t.brute && t.rainbow == t.brute && t.eulerian_iff_single)
                ++agree;
            else if (!first_failure)
                first_failure = "trial " + std::to_string(trial + 1) + ": predicted " + braces(t.predicted) +
                                ", rainbow " + braces(t.rainbow) + ", product " + braces(t.brute);
        }
        r.note("seed", std::to_string(g.seed));
        r.note("trials", std::to_string(a.random));
        r.data("seed", g.seed);
        r.data("trials", a.random);
        r.check("prediction, rainbow circuits and product agree", agree == a.random,
                std::to_string(a.random) + " trials", std::to_string(agree) + " trials" +
                                                          (first_failure ? "; " + *first_failure : ""));
        return;
    }
    if (!a.forms.empty()) {
        const auto forms = io::parse_forms(load(r, a.forms), a.forms);
        const auto oriented = orient(forms);
        std::vector<PeriodicForm> predicted;
        Family gamma;
        HAssignment h;
        if (!a.family.empty()) {
            gamma = io::parse_family(load(r, a.family), a.family);
            h = io::parse_assignment(load(r, a.assign), a.assign);
            std::vector<std::vector<std::string>> names;
            for (const auto & cycle : oriented.cycle_arcs) {
                names.emplace_back();
                for (const auto & arc : cycle)
                    names.back().push_back(h.at(arc));
            }
            predicted = predict_by_factors(forms, gamma, names);
        }
        else {
            if (a.n < 2)
                throw Error(ErrorCode::invalid_order, "--n is required with --forms unless --family is given");
            const auto rs = a.reversals.empty() ? std::vector<std::size_t>(forms.size(), 0)
                                                : parse_list<std::size_t>(a.reversals, "reversal");
            gamma = plus_minus_family(a.n);
            h = reversal_assignment(oriented, rs);
            predicted = predict_by_reversals(forms, a.n, rs);
        }
        const auto actual = product_structure(oriented.digraph, gamma, h);
        std::vector<std::string> described;
        for (const auto & f : predicted)
            described.push_back(io::describe(f));
        r.note("predicted", braces(described));
        r.data("predicted", described);
        std::vector<std::string> found;
        for (const auto & f : actual)
            found.push_back(io::describe(detect_period(f)));
        r.note("product", braces(found));
        r.data("product", found);
        r.check("predicted structure matches product", structure_key(predicted) == structure_key(actual),
                braces(described), braces(found));
        return;
    }
    const Family gamma = io::parse_family(load(r, a.family), a.family);
    const HAssignment h0 = io::parse_assignment(load(r, a.assign), a.assign);
    Digraph host;
    HAssignment h;
    Family full = gamma;
    if (!a.host.empty()) {
        const Digraph given = io::parse_digraph(load(r, a.host), a.host);
        const auto star = star_extension(given, gamma, h0);
        host = star.strong_cycle;
        h = star.assignment;
        full = star.family;
    }
    else {
        host = oriented_cycle(h0.size());
        h = h0;
    }
    const auto t = three_way(host, full, h);
    r.note("m", std::to_string(host.order()));
    r.note("P_h", t.ph);
    r.note("predicted", braces(t.predicted));
    r.note("rainbow circuits", braces(t.rainbow));
    r.note("product components", braces(t.brute));
    r.data("m", host.order());
    r.data("P_h", t.ph);
    r.data("predicted", t.predicted);
    r.data("rainbow", t.rainbow);
    r.data("product", t.brute);
    r.check("prediction matches product", t.predicted == t.brute, braces(t.brute), braces(t.predicted));
    r.check("rainbow circuits match product", t.rainbow == t.brute, braces(t.brute), braces(t.rainbow));
    r.check("rainbow eulerian iff strongly connected", t.eulerian_iff_single, "true", t.eulerian_iff_single ? "true" : "false");
    emit_dot(r, g, io::to_dot(build_mh(host.order(), full, h), "M_h"));
}

// rainbow

struct RainbowArgs {
    std::string family, assign;
};

void cmd_rainbow(RunReport & r, const Globals & g, const RainbowArgs & a)
{
    const Family gamma = io::parse_family(load(r, a.family), a.family);
    const HAssignment h = io::parse_assignment(load(r, a.assign), a.assign);
    const std::size_t m = h.size();
    const auto mh = build_mh(m, gamma, h);
    const auto seq = ColorSequence::natural(m);
    const auto circuits = find_rainbow_circuits(mh, seq);
    Json list = Json::array();
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        const auto & c = circuits[i];
        std::ostringstream line;
        for (std::size_t t = 0; t < c.length(); ++t)
            line << c.vertices[t] + 1 << " -" << c.colors[t] + 1 << "-> ";
        line << c.vertices.front() + 1;
        r.note("circuit " + std::to_string(i + 1) + " (length " + std::to_string(c.length()) + ")", line.str());
        Json entry;
        std::vector<std::size_t> vs, cs;
        for (auto v : c.vertices)
            vs.push_back(v + 1);
        for (auto col : c.colors)
            cs.push_back(col + 1);
        entry["vertices"] = vs;
        entry["colors"] = cs;
        list.push_back(entry);
    }
    const bool eulerian = is_rainbow_eulerian(mh, seq);
    r.note("rainbow eulerian", eulerian ? "yes" : "no");
    r.data("circuits", list);
    r.data("rainbow_eulerian", eulerian);
    r.check("circuits partition the arcs of M_h", circuits_partition_arcs(mh, circuits), "partition", "partition");
    const auto product = otimes_h(oriented_cycle(m), gamma, h).digraph;
    const auto strong = class_sizes(strong_components(product));
    r.check("circuit lengths match product components", circuit_lengths(circuits) == strong, braces(strong),
            braces(circuit_lengths(circuits)));
    emit_dot(r, g, io::to_dot(mh, "M_h"));
}

// label

void report_certificate(RunReport & r, const MagicCertificate & c, const std::string & prefix = "")
{
    r.note(prefix + "magic sum", std::to_string(c.magic_sum));
    r.note(prefix + "super", c.super ? "yes" : "no");
    r.data(prefix + "magic_sum", c.magic_sum);
    r.data(prefix + "super", c.super);
}

void emit_certificate(RunReport & r, const std::string & path, const MagicCertificate & c)
{
    if (path.empty())
        return;
    emit(r, path, io::write_certificate(c),
         [&](const std::string & t) { return io::write_certificate(io::parse_certificate(t, path)); });
}

struct LabelArgs {
    std::string input, host, certificate, assign, family, output, pattern = "0";
    bool super_only = false;
    std::size_t limit = 0, max_total = 20, cycle = 3, steps = 2;
    std::optional<Label> expect_sum;
};

void cmd_label_verify(RunReport & r, const Globals & g, const LabelArgs & a)
{
    const TotalLabeling lab = io::parse_labeling(load(r, a.input), a.input);
    const bool bijective = lab.is_bijective();
    r.check("labels form a bijection onto {1.." + std::to_string(lab.p() + lab.q()) + "}", bijective, "bijection",
            bijective ? "bijection" : "not a bijection");
    if (!bijective)
        return;
    const auto cert = verify(lab);
    r.check("edge sums are constant", cert.has_value(), "constant", cert ? "constant" : "not constant");
    if (!cert)
        return;
    report_certificate(r, *cert);
    if (a.super_only)
        r.check("super edge-magic", cert->super, "super", cert->super ? "super" : "not super");
    if (a.expect_sum)
        r.check_equal("magic sum", *a.expect_sum, cert->magic_sum);
    emit_dot(r, g, io::to_dot(*cert, "labeling"));
}

void cmd_label_search(RunReport & r, const Globals & g, const LabelArgs & a)
{
    const Graph graph = io::parse_graph(load(r, a.input), a.input);
    const auto found = search_sem(graph, {a.super_only, a.limit, a.max_total});
    std::set<Label> sums;
    for (const auto & c : found)
        sums.insert(c.magic_sum);
    r.note("labelings found", std::to_string(found.size()));
    r.note("magic sums", braces(sums));
    r.data("found", found.size());
    r.data("magic_sums", sums);
    r.check(a.super_only ? "super edge-magic labeling exists" : "edge-magic labeling exists", !found.empty(),
            "at least one", std::to_string(found.size()));
    if (found.empty())
        return;
    emit_certificate(r, a.output, found.front());
    emit_dot(r, g, io::to_dot(found.front(), "labeling"));
}

/// Family members must be super edge-magic with vertex names as labels; k is
/// determined by the labels and then checked.
SemFamily sem_family_from(const Family & family)
{
    SemFamily result;
    for (const auto & [name, d] : family.members()) {
        const auto n = static_cast<Label>(d.order());
        Label total = 0;
        for (const auto & [arc, mult] : d.arcs())
            total += static_cast<Label>(arc.tail + arc.head + 2);
        for (Label e = n + 1; e <= 2 * n; ++e)
            total += e;
        if (n == 0 || total % n != 0)
            throw Error(ErrorCode::malformed_labeling, "member " + name + " is not super edge-magic by its vertex names");
        result.add(name, SemDigraph(d, total / n));
    }
    return result;
}

void cmd_label_product(RunReport & r, const Globals & g, const LabelArgs & a)
{
    const Digraph host = io::parse_digraph(load(r, a.host), a.host);
    const MagicCertificate f = io::parse_certificate(load(r, a.certificate), a.certificate);
    const HAssignment h = io::parse_assignment(load(r, a.assign), a.assign);
    const SemFamily gamma = a.family.empty() ? sem_plus_minus(a.cycle)
                                             : sem_family_from(io::parse_family(load(r, a.family), a.family));
    const auto lp = product_labeling(host, f, gamma, h);
    const auto n = static_cast<Label>(gamma.order());
    r.note("family", "n = " + std::to_string(n) + ", k = " + std::to_string(gamma.magic_sum()));
    report_certificate(r, lp.certificate);
    r.note("stated closed form n(sigma-3)+n+k", std::to_string(magic_sum_formula(f.magic_sum, n, gamma.magic_sum())));
    r.data("stated_closed_form", magic_sum_formula(f.magic_sum, n, gamma.magic_sum()));
    r.check("product labeling verifies", verify(lp.certificate.labeling).has_value(), "edge-magic", "edge-magic");
    r.check_equal("magic sum n(sigma-3)+k-n", product_magic_sum(f.magic_sum, n, gamma.magic_sum()),
                  lp.certificate.magic_sum);
    if (f.super)
        r.check("super preserved", lp.certificate.super, "super", lp.certificate.super ? "super" : "not super");
    emit_certificate(r, a.output, lp.certificate);
    emit_dot(r, g, io::to_dot(lp.certificate, "product"));
}

/// Each edge u < v oriented u -> v.
Digraph orient_low_to_high(const Graph & graph)
{
    Digraph d(graph.order());
    for (const auto & e : graph.edges())
        d.add_arc({e.u, e.v});
    return d;
}

void cmd_label_amplify(RunReport & r, const Globals & g, const LabelArgs & a)
{
    const MagicCertificate seed = io::parse_certificate(load(r, a.input), a.input);
    const Digraph host = a.host.empty() ? orient_low_to_high(seed.labeling.graph())
                                        : io::parse_digraph(load(r, a.host), a.host);
    std::vector<AmplifyStep> steps;
    for (std::size_t i = 0; i < a.steps; ++i)
        steps.push_back(patterned_step(sem_plus_minus(a.cycle), parse_list<std::size_t>(a.pattern, "pattern")));
    const auto result = amplify(host, seed, steps);
    const auto sums = result.distinct_sums();
    r.note("final order", std::to_string(result.digraph.order()));
    r.note("certificates", std::to_string(result.certificates.size()));
    r.note("magic sums", braces(sums));
    r.data("final_order", result.digraph.order());
    r.data("certificates", result.certificates.size());
    r.data("magic_sums", sums);
    std::size_t verified = 0;
    for (const auto & c : result.certificates)
        verified += verify(c.labeling).has_value();
    r.check("every certificate verifies", verified == result.certificates.size(),
            std::to_string(result.certificates.size()), std::to_string(verified));
    r.check("distinct magic sums", sums.size() >= a.steps + 2, "at least " + std::to_string(a.steps + 2),
            std::to_string(sums.size()));
    const std::size_t last = result.certificates.size();
    const Label odd = result.certificates[last - 2].magic_sum, even = result.certificates[last - 1].magic_sum;
    r.check("odd and even sums consecutive", even - odd == 1, "1", std::to_string(even - odd));
    Label gap = -1;
    std::vector<Label> induced;
    for (std::size_t i = 0; i < last; ++i)
        if (result.product_induced[i])
            induced.push_back(result.certificates[i].magic_sum);
    std::sort(induced.begin(), induced.end());
    induced.erase(std::unique(induced.begin(), induced.end()), induced.end());
    for (std::size_t i = 1; i < induced.size(); ++i)
        gap = gap < 0 ? induced[i] - induced[i - 1] : std::min(gap, induced[i] - induced[i - 1]);
    if (gap >= 0)
        r.check("product-induced sums at least n apart", gap >= static_cast<Label>(a.cycle),
                ">= " + std::to_string(a.cycle), std::to_string(gap));
    emit_certificate(r, a.output, result.certificates[result.super_index]);
    emit_dot(r, g, io::to_dot(result.certificates[result.super_index], "amplified"));
}

// plan

struct PlanArgs {
    std::size_t l = 0, m = 3, n = 3, s = 0;
    std::string a_seq, form, label, output;
    bool relaxed = false;
};

void cmd_plan(RunReport & r, const Globals & g, const PlanArgs & a)
{
    std::vector<std::size_t> a_seq;
    if (a.a_seq.empty()) {
        a_seq.assign(a.l + 1, 0);
        a_seq[0] = static_cast<std::size_t>(detail::checked_pow(a.n, a.l + 1));
    }
    else
        a_seq = parse_list<std::size_t>(a.a_seq, "a");
    UnicyclicForm form;
    if (!a.form.empty()) {
        const auto forms = io::parse_forms(load(r, a.form), a.form);
        if (forms.size() != 1)
            throw Error(ErrorCode::shape, "plan needs a single unicyclic form");
        form = forms.front();
    }
    else
        form.trees.assign(a.m, RootedTree());
    const auto mode = a.relaxed ? ConditionForm::relaxed : ConditionForm::strict;
    const auto plan = plan_decomposition(a.l, form.cycle_length(), a.n, a.s, a_seq, mode);
    r.note("a", braces(plan.a_seq));
    r.note("r", braces(plan.r_values));
    r.note("r'", braces(plan.r_prime_values));
    for (std::size_t u = 0; u < plan.j_values.size(); ++u)
        r.note("j^" + std::to_string(u + 1), braces(plan.j_values[u]));
    r.data("a", plan.a_seq);
    r.data("r", plan.r_values);
    r.data("r_prime", plan.r_prime_values);
    r.data("j", plan.j_values);
    const auto run = execute_plan(form, plan);
    const auto actual = recognize(underlying(run.digraphs.back()));
    const auto target = plan_target(form, plan);
    std::map<std::string, std::size_t> found;
    for (const auto & f : actual)
        ++found[io::describe(detect_period(f))];
    std::vector<std::string> found_text;
    for (const auto & [d, c] : found)
        found_text.push_back(std::to_string(c) + " x " + d);
    r.note("products", std::to_string(run.assignments.size()));
    r.note("final components", braces(found_text));
    r.data("final_components", found_text);
    r.check("execution reproduces the target decomposition", structure_key(target) == structure_key(actual),
            std::to_string(target.size()) + " components of the target", braces(found_text));
    if (!a.label.empty()) {
        const MagicCertificate seed = io::parse_certificate(load(r, a.label), a.label);
        if (!(seed.labeling.graph() == assemble(form)))
            throw Error(ErrorCode::malformed_labeling, "certificate does not label the assembled form");
        const auto labeled = label_plan(form, seed, plan);
        const auto sums = labeled.distinct_sums();
        r.note("magic sums", braces(sums));
        r.data("magic_sums", sums);
        r.check("distinct magic sums", sums.size() >= plan.l + plan.s + 1,
                "at least " + std::to_string(plan.l + plan.s + 1), std::to_string(sums.size()));
        emit_certificate(r, a.output, labeled.certificates[labeled.super_index]);
    }
    emit_dot(r, g, io::to_dot(underlying(run.digraphs.back()), "plan"));
}

// forms

struct FormsArgs {
    std::string input, output;
};

void cmd_forms_assemble(RunReport & r, const Globals & g, const FormsArgs & a)
{
    const auto forms = io::parse_forms(load(r, a.input), a.input);
    const Graph graph = assemble(forms);
    r.note("order", std::to_string(graph.order()));
    r.note("size", std::to_string(graph.size()));
    r.data("order", graph.order());
    r.data("size", graph.size());
    r.check("recognize inverts assemble", structure_key(recognize(graph)) == structure_key(forms), "same forms",
            "same forms");
    if (!a.output.empty())
        emit(r, a.output, io::write_graph(graph),
             [&](const std::string & t) { return io::write_graph(io::parse_graph(t, a.output)); });
    else
        r.note("graph", io::write_graph(graph));
    emit_dot(r, g, io::to_dot(graph, "assembled"));
}

void cmd_forms_recognize(RunReport & r, const Globals & g, const FormsArgs & a)
{
    const Graph graph = io::parse_graph(load(r, a.input), a.input);
    const auto forms = recognize(graph);
    std::vector<std::string> described;
    for (const auto & f : forms)
        described.push_back(io::describe(detect_period(f)));
    r.note("components", braces(described));
    r.data("components", described);
    const Graph rebuilt = assemble(forms);
    r.check("assemble inverts recognize", structure_key(recognize(rebuilt)) == structure_key(forms), "same forms",
            "same forms");
    if (!a.output.empty())
        emit(r, a.output, io::write_forms(forms),
             [&](const std::string & t) { return io::write_forms(io::parse_forms(t, a.output)); });
    emit_dot(r, g, io::to_dot(graph, "graph"));
}

void cmd_forms_period(RunReport & r, const Globals &, const FormsArgs & a)
{
    const auto forms = io::parse_forms(load(r, a.input), a.input);
    std::vector<std::string> described;
    bool ok = true;
    for (const auto & f : forms) {
        const auto p = detect_period(f);
        described.push_back(io::describe(p));
        ok = ok && equivalent(p.expand(), f);
    }
    r.note("periodic forms", braces(described));
    r.data("periodic_forms", described);
    r.check("expanding the period restores each form", ok, "equivalent", ok ? "equivalent" : "differs");
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Generalized digraph products, rainbow circuits, unicyclic products and magic labelings"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomized runs")->capture_default_str();
    app.add_option("--dot", g.dot, "Write a Graphviz rendering of the main result here");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    std::function<void(RunReport &)> action;
    std::string name;

    ProductArgs pa;
    auto * product = app.add_subcommand("product", "Build D (x)_h Gamma and report its components");
    product->add_option("host", pa.host, "Host digraph file")->required();
    product->add_option("family", pa.family, "Family file")->required();
    product->add_option("assignment", pa.assign, "Assignment file")->required();
    product->add_option("-o,--output", pa.output, "Write the product digraph here");
    product->add_option("--expect", pa.expect, "Expected component sizes, comma separated");
    product->callback([&] {
        name = "product";
        action = [&](RunReport & r) { cmd_product(r, g, pa); };
    });

    PredictArgs pr;
    auto * predict = app.add_subcommand("predict", "Compare P_h prediction, rainbow circuits and the product");
    predict->add_option("--family", pr.family, "Family file");
    predict->add_option("--assign", pr.assign, "Assignment file over the host cycle");
    predict->add_option("--host", pr.host, "Host cycle with any orientation (default C_m^+)");
    predict->add_option("--forms", pr.forms, "Unicyclic forms file (host is its cycle-oriented digraph)");
    predict->add_option("--n", pr.n, "Cycle order for {C_n^+, C_n^-} with --forms");
    predict->add_option("--r", pr.reversals, "Reversed arcs per cycle with --forms, comma separated");
    predict->add_option("--random", pr.random, "Run this many seeded random instances instead");
    predict->callback([&] {
        name = "predict";
        if (pr.random == 0 && pr.forms.empty() && (pr.family.empty() || pr.assign.empty()))
            throw CLI::ValidationError("predict", "needs --family and --assign, --forms, or --random");
        action = [&](RunReport & r) { cmd_predict(r, g, pr); };
    });

    RainbowArgs ra;
    auto * rainbow = app.add_subcommand("rainbow", "List the rainbow circuits of M_h");
    rainbow->add_option("family", ra.family, "Family file")->required();
    rainbow->add_option("assignment", ra.assign, "Assignment file over C_m^+")->required();
    rainbow->callback([&] {
        name = "rainbow";
        action = [&](RunReport & r) { cmd_rainbow(r, g, ra); };
    });

    LabelArgs la;
    auto * label = app.add_subcommand("label", "Edge-magic labelings");
    label->require_subcommand(1);
    auto * verify_cmd = label->add_subcommand("verify", "Check a certificate file");
    verify_cmd->add_option("certificate", la.input, "Certificate file")->required();
    verify_cmd->add_flag("--super", la.super_only, "Also require super edge-magic");
    verify_cmd->add_option("--expect-sum", la.expect_sum, "Expected magic sum");
    verify_cmd->callback([&] {
        name = "label verify";
        action = [&](RunReport & r) { cmd_label_verify(r, g, la); };
    });
    auto * search = label->add_subcommand("search", "Exhaustive search on a small graph");
    search->add_option("graph", la.input, "Graph file")->required();
    search->add_flag("--super", la.super_only, "Only super edge-magic labelings");
    search->add_option("--limit", la.limit, "Stop after this many (0: all)");
    search->add_option("--max-total", la.max_total, "Refuse graphs with p + q above this")->capture_default_str();
    search->add_option("-o,--output", la.output, "Write the first labeling found");
    search->callback([&] {
        name = "label search";
        action = [&](RunReport & r) { cmd_label_search(r, g, la); };
    });
    auto * lproduct = label->add_subcommand("product", "Label und(D (x)_h Gamma) from a labeling of und(D)");
    lproduct->add_option("host", la.host, "Host digraph file")->required();
    lproduct->add_option("certificate", la.certificate, "Labeling of the host's underlying graph")->required();
    lproduct->add_option("assignment", la.assign, "Assignment file")->required();
    lproduct->add_option("--family", la.family, "Super edge-magic family, vertices named by labels");
    lproduct->add_option("--cycle", la.cycle, "Use a labeled C_n and its reverse, named C+ and C-")->capture_default_str();
    lproduct->add_option("-o,--output", la.output, "Write the product certificate");
    lproduct->callback([&] {
        name = "label product";
        action = [&](RunReport & r) { cmd_label_product(r, g, la); };
    });
    auto * amplify_cmd = label->add_subcommand("amplify", "Repeated products collecting distinct magic sums");
    amplify_cmd->add_option("certificate", la.input, "Super edge-magic seed with p = q")->required();
    amplify_cmd->add_option("--host", la.host, "Oriented host (default: each edge from lower to higher vertex)");
    amplify_cmd->add_option("--steps", la.steps, "Number of product steps")->capture_default_str();
    amplify_cmd->add_option("--cycle", la.cycle, "Labeled C_n family order")->capture_default_str();
    amplify_cmd->add_option("--pattern", la.pattern, "Member indices (0: C+, 1: C-) repeated over the arcs")
        ->capture_default_str();
    amplify_cmd->add_option("-o,--output", la.output, "Write the final super labeling");
    amplify_cmd->callback([&] {
        name = "label amplify";
        action = [&](RunReport & r) { cmd_label_amplify(r, g, la); };
    });

    PlanArgs pl;
    auto * plan = app.add_subcommand("plan", "Plan and execute a decomposition into powers of G");
    plan->add_option("--l", pl.l, "Largest exponent offset")->capture_default_str();
    plan->add_option("--m", pl.m, "Cycle length of G when no --form is given")->capture_default_str();
    plan->add_option("--n", pl.n, "Odd cycle order of the factors")->capture_default_str();
    plan->add_option("--s", pl.s, "Growth steps before the first split")->capture_default_str();
    plan->add_option("--a", pl.a_seq, "Copies a_0..a_l, comma separated (default n^(l+1),0,...)");
    plan->add_option("--form", pl.form, "Forms file holding G (default the cycle C_m)");
    plan->add_flag("--relaxed", pl.relaxed, "Use the weaker divisibility conditions");
    plan->add_option("--label", pl.label, "Super edge-magic labeling of G: also label every step");
    plan->add_option("-o,--output", pl.output, "With --label, write the final super labeling");
    plan->callback([&] {
        name = "plan";
        action = [&](RunReport & r) { cmd_plan(r, g, pl); };
    });

    FormsArgs fa;
    auto * forms = app.add_subcommand("forms", "Unicyclic forms");
    forms->require_subcommand(1);
    auto * assemble_cmd = forms->add_subcommand("assemble", "Forms file to graph");
    assemble_cmd->add_option("forms", fa.input, "Forms file")->required();
    assemble_cmd->add_option("-o,--output", fa.output, "Write the graph here");
    assemble_cmd->callback([&] {
        name = "forms assemble";
        action = [&](RunReport & r) { cmd_forms_assemble(r, g, fa); };
    });
    auto * recognize_cmd = forms->add_subcommand("recognize", "Graph to forms");
    recognize_cmd->add_option("graph", fa.input, "Graph file")->required();
    recognize_cmd->add_option("-o,--output", fa.output, "Write the forms here");
    recognize_cmd->callback([&] {
        name = "forms recognize";
        action = [&](RunReport & r) { cmd_forms_recognize(r, g, fa); };
    });
    auto * period_cmd = forms->add_subcommand("period", "Smallest periodic base of each form");
    period_cmd->add_option("forms", fa.input, "Forms file")->required();
    period_cmd->callback([&] {
        name = "forms period";
        action = [&](RunReport & r) { cmd_forms_period(r, g, fa); };
    });

    CLI11_PARSE(app, argc, argv);

    RunReport report(name);
    try {
        action(report);
    }
    catch (const Error & e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    std::cout << (g.format == "json" ? report.json() : report.text());
    return report.ok() ? 0 : 1;
}
