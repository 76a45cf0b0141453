#include "pfc/io.hpp"
#include "pfc/mutation.hpp"
#include "pfc/reductions.hpp"
#include "pfc/synthesize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace pfc;

namespace {

enum Exit { Ok = 0, No = 1, Usage = 2, Unknown = 3 };

struct Options {
    std::uint64_t budget = 0;
    std::uint64_t seed = 1;
};

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An instance file is a full certificate, a bare digraph, or DOT source; pattern and
// k given on the command line win over the file.
ReductionCertificate load_instance(const std::string& path, const std::string& pattern, int k) {
    ReductionCertificate c;
    if (path.size() > 4 && path.ends_with(".dot")) {
        std::ifstream in(path);
        if (!in) throw usage_error("cannot open " + path);
        c.instance.graph = digraph_from_dot(in, path);
        if (pattern.empty() || k == 0) throw usage_error(path + ": DOT input needs --pattern and -k");
        c.pattern = PathPattern::parse(pattern);
        c.k = k;
        return c;
    }
    json j = read_json_file(path);
    if (j.contains("digraph")) {
        c = certificate_from_json(j, path);
    } else {
        c.instance.graph = digraph_from_json(j, path);
        if (auto e = embedding_from_json(j)) c.instance.embedding = *e;
        if (pattern.empty() || k == 0) throw usage_error(path + ": bare digraph needs --pattern and -k");
    }
    if (!pattern.empty()) c.pattern = PathPattern::parse(pattern);
    if (k != 0) c.k = k;
    return c;
}

Sat3Formula load_sat3(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    return to_sat3(read_dimacs(in, path), path);
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_text_file(path, text);
}

int cmd_patterns(std::size_t n) {
    if (n == 0) throw usage_error("patterns: n must be at least 1");
    for (const auto& p : enumerate_orientations(n)) std::cout << p.str() << "\n";
    return Ok;
}

int cmd_classify(const std::string& pattern, int k) {
    PathPattern p = PathPattern::parse(pattern);
    std::cout << describe(classify_problem(p, k), p) << "\n";
    return Ok;
}

struct ReduceArgs {
    std::string from = "sat3";
    std::string input;
    std::string variant;
    std::string pattern;
    std::vector<int> random;
    std::string output;
    std::string dot;
    bool report = false;
};

int cmd_reduce(const ReduceArgs& a, const Options& o) {
    ReductionCertificate c;
    if (a.from == "sat3") {
        Sat3Formula f;
        if (!a.random.empty()) {
            if (a.random.size() != 2 || a.random[0] < 1 || a.random[1] < 1) throw usage_error("--random takes VARS CLAUSES");
            std::mt19937_64 rng(o.seed);
            f.variable_count = a.random[0];
            std::uniform_int_distribution<int> var(1, a.random[0]);
            for (int j = 0; j < a.random[1]; ++j) {
                std::array<int, 3> cl;
                for (int& lit : cl) lit = var(rng) * (rng() % 2 ? 1 : -1);
                f.clauses.push_back(cl);
            }
        } else {
            if (a.input.empty()) throw usage_error("reduce: --input or --random is required");
            f = load_sat3(a.input);
        }
        if (!a.pattern.empty()) c = chain_from_sat3(PathPattern::parse(a.pattern), f);
        else c = sat3_to_2col(f, parse_sat_variant(a.variant.empty() ? "p3" : a.variant));
    } else if (a.from == "planar3col") {
        if (a.input.empty()) throw usage_error("reduce: --input is required");
        EmbeddedDigraph g = planar_graph_from_json(read_json_file(a.input), a.input);
        if (!a.pattern.empty()) c = chain_from_planar3col(PathPattern::parse(a.pattern), g);
        else c = planar3col_to_3col(g, parse_color_variant(a.variant.empty() ? "v3" : a.variant));
    } else {
        throw usage_error("reduce: --from must be sat3 or planar3col");
    }
    write_or_print(a.output, to_json(c).dump() + "\n");
    if (!a.dot.empty()) write_text_file(a.dot, to_dot(c.instance.graph));
    if (a.report) std::cerr << reduction_report(c);
    return Ok;
}

struct SolveArgs {
    std::string input;
    std::string pattern;
    int k = 0;
    std::string output;
    std::string engine = "auto";
};

int cmd_solve(const SolveArgs& a, const Options& o) {
    ReductionCertificate c = load_instance(a.input, a.pattern, a.k);
    SolveOptions opt;
    opt.node_budget = o.budget;
    if (a.engine == "backtracking") opt.engine = Engine::Backtracking;
    else if (a.engine == "cdcl") opt.engine = Engine::ClauseLearning;
    else if (a.engine != "auto") throw usage_error("solve: --engine must be auto, backtracking or cdcl");
    SolveResult r = solve_exact(c.instance.graph, c.pattern, c.k, opt);
    if (r.status == SolveStatus::Unknown) {
        std::cout << "unknown (budget exhausted after " << r.nodes << " nodes)\n";
        return Unknown;
    }
    if (!r.colorable()) {
        std::cout << "uncolorable\n";
        return No;
    }
    std::cout << "colorable\n";
    if (c.truth_vertex && !c.literal_vertices.empty()) {
        auto assignment = decode_assignment(c, *r.coloring);
        std::cout << "assignment";
        for (std::size_t i = 0; i < assignment.size(); ++i) std::cout << ' ' << (assignment[i] ? "" : "-") << i + 1;
        std::cout << "\n";
    }
    if (!a.output.empty()) write_text_file(a.output, to_json(*r.coloring).dump() + "\n");
    return Ok;
}

int cmd_verify(const std::string& input, const std::string& coloring, const std::string& pattern, int k) {
    ReductionCertificate c = load_instance(input, pattern, k);
    bool ok = true;
    if (!is_acyclic(c.instance.graph)) {
        std::cout << "digraph has a directed cycle\n";
        ok = false;
    }
    if (c.instance.embedding.rotation.size() == c.instance.graph.vertex_count() && !verify_embedding(c.instance)) {
        std::cout << "embedding is not planar\n";
        ok = false;
    }
    if (!coloring.empty()) {
        Coloring col = coloring_from_json(read_json_file(coloring), coloring);
        if (col.k != c.k) throw usage_error(coloring + ": coloring uses k=" + std::to_string(col.k) + ", instance has k=" + std::to_string(c.k));
        Verification v = verify_coloring(c.instance.graph, col, c.pattern);
        if (!v.ok()) {
            std::cout << "monochromatic copy of " << c.pattern.str() << ":";
            for (vertex_t x : *v.witness) std::cout << ' ' << x;
            std::cout << "\n";
            ok = false;
        }
    }
    if (ok) std::cout << "ok\n";
    return ok ? Ok : No;
}

int cmd_gadget_check(std::vector<std::string> ids, const std::string& output, bool mutations, const Options& o) {
    if (ids.empty()) ids = gadget_ids();
    bool all = true;
    json out = json::array();
    for (const auto& id : ids) {
        Gadget g = build_gadget(id);
        ContractReport r = check_contract(g, o.budget);
        all = all && r.passed();
        std::cout << (r.passed() ? "PASS " : "FAIL ") << id << " (" << g.digraph.vertex_count() << " vertices)\n";
        for (const auto& cl : r.clauses)
            if (!cl.pass) std::cout << "  " << cl.name << ": " << cl.detail << "\n";
        json j = to_json(g, &r);
        if (mutations) {
            MutationReport m = mutation_analysis(g, o.budget);
            std::cout << "  mutants " << m.total() << ", killed " << m.killed() << ", equivalent " << m.equivalent() << "\n";
            j["mutants"] = {{"total", m.total()}, {"killed", m.killed()}, {"equivalent", m.equivalent()}};
        }
        out.push_back(j);
    }
    if (!output.empty()) write_text_file(output, out.dump(1) + "\n");
    return all ? Ok : No;
}

int cmd_build_tower(const std::string& pattern, const std::string& output, const std::string& dot) {
    PathPattern p = PathPattern::parse(pattern);
    Gadget t = build_tower(p);
    ReductionCertificate c;
    c.instance = {t.digraph, t.embedding};
    c.pattern = p;
    c.k = 2;
    write_or_print(output, to_json(c).dump() + "\n");
    if (!dot.empty()) write_text_file(dot, to_dot(t.digraph, "tower"));
    std::cerr << "tower for " << p.str() << ": " << t.digraph.vertex_count() << " vertices, " << t.digraph.arc_count() << " arcs\n";
    return Ok;
}

int cmd_synth(const std::string& like, std::size_t max_vertices, const std::string& output, const Options& o) {
    Gadget model = build_gadget(like);
    SynthesisStats st;
    auto g = synthesize_gadget(model.contract, max_vertices, o.budget, &st);
    if (!g) {
        std::cout << "no gadget with at most " << max_vertices << " vertices (" << st.candidates << " candidates)\n";
        return No;
    }
    g->id = like + "_synthesized";
    std::cout << "found " << g->digraph.vertex_count() << " vertices after " << st.candidates << " candidates\n";
    ContractReport r = check_contract(*g);
    write_or_print(output, to_json(*g, &r).dump() + "\n");
    return Ok;
}

int cmd_export(const std::string& input, const std::string& format, const std::string& output, const std::string& pattern, int k) {
    ReductionCertificate c = load_instance(input, pattern, k);
    if (format == "dot") write_or_print(output, to_dot(c.instance.graph));
    else if (format == "dimacs") write_or_print(output, to_dimacs(encode_cnf(c.instance.graph, c.pattern, c.k).formula));
    else if (format == "varmap") write_or_print(output, to_json(encode_cnf(c.instance.graph, c.pattern, c.k).map).dump() + "\n");
    else if (format == "json") write_or_print(output, to_json(c).dump() + "\n");
    else if (format == "report") write_or_print(output, reduction_report(c));
    else throw usage_error("export: --format must be dot, dimacs, varmap, json or report");
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pattern-free coloring of planar digraphs: reductions, gadgets and solvers"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--budget", o.budget, "Cap on solver nodes, conflicts or candidates (exit 3 when hit)")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for random generation");

    std::size_t n = 0;
    auto* patterns = app.add_subcommand("patterns", "List orientations of the path on n vertices");
    patterns->add_option("n", n)->required();

    std::string pattern;
    int k = 0;
    auto* classify = app.add_subcommand("classify", "Complexity of pattern-free k-coloring");
    classify->add_option("pattern", pattern, "Orientation word over > and <, or . for one vertex")->required();
    classify->add_option("k", k)->required()->check(CLI::PositiveNumber);

    ReduceArgs ra;
    auto* reduce = app.add_subcommand("reduce", "Build an instance from a formula or a planar graph");
    reduce->add_option("--from", ra.from, "sat3 or planar3col")->capture_default_str();
    reduce->add_option("-i,--input", ra.input, "DIMACS file or planar graph JSON");
    reduce->add_option("--variant", ra.variant, "p3, v3, l4 (sat3) or v3, p3, edge (planar3col)");
    reduce->add_option("--pattern", ra.pattern, "Target pattern; runs the full chain");
    reduce->add_option("--random", ra.random, "Random formula with VARS CLAUSES (uses --seed)")->expected(2);
    reduce->add_option("-o,--output", ra.output, "Instance JSON (default stdout)");
    reduce->add_option("--dot", ra.dot, "Also write Graphviz source");
    reduce->add_flag("--report", ra.report, "Print gadget counts to stderr");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Decide pattern-free colorability of an instance");
    solve->add_option("input", sa.input)->required();
    solve->add_option("--pattern", sa.pattern);
    solve->add_option("-k", sa.k)->check(CLI::PositiveNumber);
    solve->add_option("-o,--output", sa.output, "Coloring JSON");
    solve->add_option("--engine", sa.engine, "auto, backtracking or cdcl")->capture_default_str();

    std::string input, coloring, output, dot, format = "json", like;
    auto* verify = app.add_subcommand("verify", "Check structure and, optionally, a coloring");
    verify->add_option("input", input)->required();
    verify->add_option("coloring", coloring);
    verify->add_option("--pattern", pattern);
    verify->add_option("-k", k)->check(CLI::PositiveNumber);

    std::vector<std::string> ids;
    bool mutations = false;
    auto* gadget_check = app.add_subcommand("gadget-check", "Check gadget contracts");
    gadget_check->add_option("ids", ids, "Gadget ids (default: whole catalog)");
    gadget_check->add_option("-o,--output", output, "Reports as JSON");
    gadget_check->add_flag("--mutations", mutations, "Also run single-arc-flip mutation analysis");

    auto* tower = app.add_subcommand("build-tower", "Build the tower for a pattern as a k=2 instance");
    tower->add_option("pattern", pattern)->required();
    tower->add_option("-o,--output", output);
    tower->add_option("--dot", dot);

    std::size_t max_vertices = 7;
    auto* synth = app.add_subcommand("synth", "Search for a smallest gadget with the contract of a catalog gadget");
    synth->add_option("like", like)->required();
    synth->add_option("--max-vertices", max_vertices)->capture_default_str();
    synth->add_option("-o,--output", output);

    auto* exp = app.add_subcommand("export", "Convert an instance to another format");
    exp->add_option("input", input)->required();
    exp->add_option("--format", format, "json, dot, dimacs, varmap or report")->capture_default_str();
    exp->add_option("-o,--output", output);
    exp->add_option("--pattern", pattern);
    exp->add_option("-k", k)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*patterns) return cmd_patterns(n);
        if (*classify) return cmd_classify(pattern, k);
        if (*reduce) return cmd_reduce(ra, o);
        if (*solve) return cmd_solve(sa, o);
        if (*verify) return cmd_verify(input, coloring, pattern, k);
        if (*gadget_check) return cmd_gadget_check(ids, output, mutations, o);
        if (*tower) return cmd_build_tower(pattern, output, dot);
        if (*synth) return cmd_synth(like, max_vertices, output, o);
        if (*exp) return cmd_export(input, format, output, pattern, k);
    } catch (const budget_exceeded& e) {
        std::cerr << "unknown: " << e.what() << "\n";
        return Unknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Usage;
    }
    return Usage;
}
