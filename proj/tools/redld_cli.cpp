// redld: command-line front end for the library.
//
// Exit codes: 0 ok, 1 valid run with a negative answer, 2 input error,
// 3 budget exceeded.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "redld/redld.hpp"

namespace {

using namespace redld;

enum Exit { exit_ok = 0, exit_negative = 1, exit_input = 2, exit_budget = 3 };

struct Options {
    std::string mode;
    std::uint64_t budget_nodes = 0;
    double budget_seconds = 0;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    std::string format = "text";
};

/// Everything read from disk is fed through here so the digest covers it.
class Inputs {
public:
    std::string read(const std::string& path)
    {
        std::string text;
        if (path == "-") {
            text.assign(std::istreambuf_iterator<char>(std::cin), {});
        } else {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw InputError("cannot open '" + path + "'");
            text.assign(std::istreambuf_iterator<char>(in), {});
        }
        feed(text);
        return text;
    }

    void feed(std::string_view s)
    {
        for (unsigned char c : s) {
            hash_ ^= c;
            hash_ *= 0x100000001b3ULL;
        }
        hash_ ^= 0xff;
        hash_ *= 0x100000001b3ULL;
    }

    std::string digest() const
    {
        std::ostringstream out;
        out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash_;
        return out.str();
    }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

SolveBudget budget_of(const Options& o)
{
    SolveBudget b;
    if (o.budget_nodes)
        b.max_nodes = o.budget_nodes;
    if (o.budget_seconds > 0)
        b.max_seconds = o.budget_seconds;
    return b;
}

std::size_t to_size(const std::string& s, const char* what)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || s[0] == '-')
        throw InputError(std::string("bad ") + what + " '" + s + "'");
    return static_cast<std::size_t>(v);
}

/// "a..b" or "a".
std::pair<std::size_t, std::size_t> to_range(const std::string& s, const char* what)
{
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        auto v = to_size(s, what);
        return {v, v};
    }
    return {to_size(s.substr(0, dots), what), to_size(s.substr(dots + 2), what)};
}

/// A path to an existing file, or a literal list like "1 4 7 8".
DetectorSet read_detectors(Inputs& in, std::size_t n, const std::string& arg)
{
    std::ifstream probe(arg);
    if (probe.good())
        return parse_detector_list(n, in.read(arg));
    in.feed(arg);
    return parse_detector_list(n, arg);
}

void print_set(std::ostream& out, const char* key, const DetectorSet& s)
{
    out << key << ' ' << s.size() << ' ' << s.to_string() << '\n';
}

int report_solve(std::ostream& out, const SolveResult& r)
{
    if (r.budget_exceeded()) {
        out << "budget exceeded\n";
        out << "nodes " << r.nodes << '\n';
        return exit_budget;
    }
    if (r.infeasible()) {
        out << "infeasible\n";
        return exit_negative;
    }
    out << "optimum " << r.optimum << '\n';
    print_set(out, "witness", r.witness);
    out << "nodes " << r.nodes << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_verify(std::ostream& out, Inputs& in, const Options& o, const std::string& graph_path,
               const std::string& detectors)
{
    Graph g = parse_edge_list(in.read(graph_path));
    DetectorSet s = read_detectors(in, g.order(), detectors);
    const std::string mode = o.mode.empty() ? "redld" : o.mode;
    VerificationReport report;
    if (mode == "ld")
        report = is_ld_set(g, s);
    else if (mode == "redld")
        report = is_redld_set(g, s);
    else if (mode == "redld-def")
        report = is_redld_by_definition(g, s);
    else
        throw InputError("verify --mode must be ld, redld or redld-def");
    out << "mode " << mode << '\n';
    print_set(out, "set", s);
    out << to_text(report);
    return report.ok() ? exit_ok : exit_negative;
}

int cmd_solve(std::ostream& out, Inputs& in, const Options& o, const std::string& graph_path)
{
    Graph g = parse_edge_list(in.read(graph_path));
    const std::string mode = o.mode.empty() ? "redld" : o.mode;
    if (mode != "ld" && mode != "redld")
        throw InputError("solve --mode must be ld or redld");
    out << "mode " << mode << '\n';
    out << "order " << g.order() << '\n';
    return report_solve(out, mode == "ld" ? min_ld(g, budget_of(o)) : min_redld(g, budget_of(o)));
}

int print_family(std::ostream& out, const FamilyValue& v)
{
    out << "family " << v.family;
    for (auto p : v.parameters)
        out << ' ' << p;
    out << '\n' << "optimum " << v.optimum << '\n';
    if (v.graph && v.construction) {
        print_set(out, "construction", *v.construction);
        out << "construction-verified " << (is_redld_set(*v.graph, *v.construction).ok() ? "yes" : "no") << '\n';
    }
    return exit_ok;
}

int cmd_family(std::ostream& out, Inputs& in, const Options& o, const std::vector<std::string>& args)
{
    if (args.empty())
        throw InputError("family needs an id: path, cycle, ladder, kary, kary-table, max-even, hypercube, constants");
    for (const auto& a : args)
        in.feed(a);
    const std::string& id = args[0];
    auto need = [&](std::size_t count) {
        if (args.size() != count + 1)
            throw InputError("family " + id + " takes " + std::to_string(count) + " parameter(s)");
    };
    if (id == "path") {
        need(1);
        return print_family(out, redld_path(to_size(args[1], "n")));
    }
    if (id == "cycle") {
        need(1);
        return print_family(out, redld_cycle(to_size(args[1], "n")));
    }
    if (id == "ladder") {
        need(1);
        return print_family(out, redld_ladder(to_size(args[1], "k")));
    }
    if (id == "kary") {
        need(2);
        return print_family(out, redld_kary(to_size(args[1], "k"), to_size(args[2], "d")));
    }
    if (id == "kary-table") {
        auto [klo, khi] = args.size() > 1 ? to_range(args[1], "k range") : std::pair<std::size_t, std::size_t>{2, 7};
        auto [dlo, dhi] = args.size() > 2 ? to_range(args[2], "d range") : std::pair<std::size_t, std::size_t>{1, 10};
        if (args.size() > 3)
            throw InputError("kary-table takes at most two ranges");
        if (o.format != "text" && o.format != "csv")
            throw InputError("--format must be text or csv");
        out << kary_table(klo, khi, dlo, dhi, o.format == "csv" ? TableFormat::csv : TableFormat::text);
        return exit_ok;
    }
    if (id == "max-even") {
        need(1);
        const auto k = to_size(args[1], "k");
        Graph g = max_order_even_k(k);
        DetectorSet core = max_order_even_k_core(k);
        out << "order " << g.order() << '\n';
        out << "bound " << max_order_bound(static_cast<std::int64_t>(k)) << '\n';
        print_set(out, "core", core);
        out << "core-verified " << (is_redld_set(g, core).ok() ? "yes" : "no") << '\n';
        out << render_edge_list(g);
        return exit_ok;
    }
    if (id == "hypercube") {
        need(1);
        Graph g = build_hypercube(to_size(args[1], "d"));
        out << "order " << g.order() << '\n';
        return report_solve(out, min_redld(g, budget_of(o)));
    }
    if (id == "constants") {
        if (args.size() > 2)
            throw InputError("constants takes at most one parameter");
        const auto k = args.size() == 2 ? to_size(args[1], "k") : 2;
        for (const auto& c : density_constants(static_cast<std::int64_t>(k)))
            out << c.graph << ' ' << to_string(c.lower) << ' ' << to_string(c.upper) << '\n';
        return exit_ok;
    }
    throw InputError("unknown family '" + id + "'");
}

Graph read_tree(Inputs& in, const std::string& path)
{
    Graph t = parse_edge_list(in.read(path));
    if (!is_tree(t))
        throw InputError("input graph is not a tree");
    return t;
}

int cmd_tree(std::ostream& out, Inputs& in, const std::string& sub, const std::string& arg, bool adjacency)
{
    in.feed(sub);
    if (sub == "classify-min") {
        Graph t = read_tree(in, arg);
        auto c = classify_tmin(t);
        out << "order " << t.order() << '\n' << "residue " << c.residue << '\n';
        out << "member " << (c.member ? "yes" : "no") << '\n';
        if (c.member)
            print_set(out, "witness", c.witness);
        return c.member ? exit_ok : exit_negative;
    }
    if (sub == "classify-max") {
        Graph t = read_tree(in, arg);
        const bool m = is_tmax(t);
        out << "order " << t.order() << '\n' << "member " << (m ? "yes" : "no") << '\n';
        return m ? exit_ok : exit_negative;
    }
    if (sub == "enum-min" || sub == "enum-max") {
        in.feed(arg);
        const auto n = to_size(arg, "n");
        std::vector<std::pair<std::string, Graph>> trees;
        if (sub == "enum-min")
            for (auto& m : enumerate_tmin(n))
                trees.emplace_back(m.code, m.tree);
        else
            for (auto& m : enumerate_tmax(n))
                trees.emplace_back(m.code, m.tree);
        for (const auto& [code, tree] : trees) {
            out << code << '\n';
            if (adjacency)
                out << render_edge_list(tree);
        }
        out << "count " << trees.size() << '\n';
        return exit_ok;
    }
    throw InputError("unknown tree subcommand '" + sub + "'");
}

int cmd_reduce(std::ostream& out, Inputs& in, const Options& o, const std::string& path, bool solve, bool roles)
{
    SatInstance phi = parse_dimacs_cnf(in.read(path));
    auto art = build_reduction(phi);
    out << "variables " << phi.variables << '\n' << "clauses " << phi.clauses.size() << '\n';
    out << "vertices " << art.graph.order() << '\n' << "edges " << art.graph.size() << '\n';
    out << "K " << art.K << '\n';
    if (roles)
        out << render_role_map(art);
    if (!solve) {
        out << render_edge_list(art.graph);
        return exit_ok;
    }
    auto d = decide_via_redld(phi, budget_of(o));
    if (d.status == SolveStatus::budget_exceeded) {
        out << "budget exceeded\n";
        return exit_budget;
    }
    out << "optimum " << d.optimum << '\n';
    out << (d.satisfiable ? "SAT" : "UNSAT") << '\n';
    if (d.assignment) {
        out << "assignment";
        for (std::size_t i = 0; i < d.assignment->size(); ++i)
            out << ' ' << ((*d.assignment)[i] ? "" : "-") << i + 1;
        out << '\n';
    }
    return d.satisfiable ? exit_ok : exit_negative;
}

void print_pattern_facts(std::ostream& out, const PeriodicPattern& p)
{
    out << "density " << to_string(density(p)) << '\n';
    auto hist = share_histogram(p);
    out << "shares";
    for (const auto& [value, count] : hist)
        out << ' ' << to_string(value) << 'x' << count;
    out << '\n' << "average-share " << to_string(average_share(hist)) << '\n';
}

int cmd_grid(std::ostream& out, Inputs& in, const Options& o, const std::vector<std::string>& args)
{
    if (args.empty())
        throw InputError("grid needs 'verify FILE' or 'search KIND MAX_PERIOD TARGET'");
    if (args[0] == "verify") {
        if (args.size() != 2)
            throw InputError("grid verify takes one pattern file");
        auto p = parse_pattern(in.read(args[1]));
        auto report = verify_periodic(p);
        out << to_text(report);
        if (!report.ok())
            return exit_negative;
        print_pattern_facts(out, p);
        return exit_ok;
    }
    if (args[0] == "search") {
        if (args.size() != 4)
            throw InputError("grid search takes KIND MAX_PERIOD TARGET");
        for (const auto& a : args)
            in.feed(a);
        const auto kind = parse_lattice_kind(args[1]);
        const auto period = to_size(args[2], "max period");
        Rational target;
        try {
            target = parse_rational(args[3]);
        } catch (const std::exception&) {
            throw InputError("bad target density '" + args[3] + "'");
        }
        PatternSearchOptions opts;
        opts.seed = o.seed;
        auto p = pattern_search(kind, period, target, opts);
        if (!p) {
            out << "none\n";
            return exit_negative;
        }
        out << render_pattern(*p);
        print_pattern_facts(out, *p);
        return exit_ok;
    }
    throw InputError("unknown grid subcommand '" + args[0] + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Redundant locating-dominating sets: verify, solve, classify, construct."};
    app.require_subcommand(1);
    Options o;
    app.add_option("--mode", o.mode, "ld, redld or redld-def");
    app.add_option("--budget-nodes", o.budget_nodes, "search node limit (0 = none)");
    app.add_option("--budget-seconds", o.budget_seconds, "wall-clock limit (0 = none)");
    app.add_option("--threads", o.threads, "worker count (accepted; runs are single-threaded)");
    app.add_option("--seed", o.seed, "seed for randomized search")->capture_default_str();
    app.add_option("--format", o.format, "text or csv")->capture_default_str();

    std::string graph_path, detectors, tree_sub, tree_arg, cnf_path;
    std::vector<std::string> family_args, grid_args;
    bool adjacency = false, solve = false, roles = false;

    auto* verify = app.add_subcommand("verify", "check a detector set");
    verify->add_option("graph", graph_path, "edge-list file or -")->required();
    verify->add_option("detectors", detectors, "file or literal list of 0-based vertices")->required();

    auto* solve_cmd = app.add_subcommand("solve", "minimum LD or RED:LD set");
    solve_cmd->add_option("graph", graph_path, "edge-list file or -")->required();

    auto* family = app.add_subcommand("family", "closed forms and constructions");
    family->add_option("args", family_args, "id and parameters")->required();

    auto* tree = app.add_subcommand("tree", "extremal tree families");
    tree->add_option("sub", tree_sub, "classify-min, classify-max, enum-min, enum-max")->required();
    tree->add_option("arg", tree_arg, "tree file or n")->required();
    tree->add_flag("--adjacency", adjacency, "also dump each tree's edge list");

    auto* reduce = app.add_subcommand("reduce", "3-SAT to RED:LD reduction");
    reduce->add_option("cnf", cnf_path, "DIMACS file or -")->required();
    reduce->add_flag("--solve", solve, "decide satisfiability through the solver");
    reduce->add_flag("--roles", roles, "print the vertex role map");

    auto* grid = app.add_subcommand("grid", "periodic patterns on infinite grids");
    grid->add_option("args", grid_args, "verify FILE | search KIND MAX_PERIOD TARGET")->required();

    for (auto* sub : {verify, solve_cmd, family, tree, reduce, grid})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    std::ostringstream out;
    Inputs in;
    const auto start = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
        if (*verify)
            code = cmd_verify(out, in, o, graph_path, detectors);
        else if (*solve_cmd)
            code = cmd_solve(out, in, o, graph_path);
        else if (*family)
            code = cmd_family(out, in, o, family_args);
        else if (*tree)
            code = cmd_tree(out, in, tree_sub, tree_arg, adjacency);
        else if (*reduce)
            code = cmd_reduce(out, in, o, cnf_path, solve, roles);
        else if (*grid)
            code = cmd_grid(out, in, o, grid_args);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::cout << "command";
    for (int i = 1; i < argc; ++i)
        std::cout << ' ' << argv[i];
    std::cout << '\n' << "inputs " << in.digest() << '\n' << out.str();
    std::cerr << "time " << std::fixed << std::setprecision(3) << seconds << " s\n";
    return code;
}
