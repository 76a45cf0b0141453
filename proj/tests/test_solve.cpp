#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace pfc;

namespace {

bool truth_table(const CnfFormula& f) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << f.variable_count); ++mask) {
        std::vector<signed char> values(f.variable_count);
        for (int v = 0; v < f.variable_count; ++v) values[v] = (mask >> v & 1) ? 1 : -1;
        if (satisfies(f, values)) return true;
    }
    return false;
}

CnfFormula random_cnf(std::mt19937& rng, int vars, int clauses, int width) {
    CnfFormula f;
    f.variable_count = vars;
    for (int j = 0; j < clauses; ++j) {
        std::vector<int> c;
        int len = 1 + rng() % width;
        for (int i = 0; i < len; ++i) c.push_back(int(1 + rng() % vars) * (rng() % 2 ? 1 : -1));
        f.add_clause(c);
    }
    return f;
}

PathPattern random_pattern(std::mt19937& rng) {
    auto all = enumerate_orientations(2 + rng() % 3);
    PathPattern p = all[rng() % all.size()];
    return rng() % 2 ? p : reverse_pattern(p);
}

}  // namespace

TEST_CASE("DIMACS round trip and errors") {
    std::istringstream in("c comment\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n");
    CnfFormula f = read_dimacs(in);
    CHECK(f.variable_count == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1] == std::vector<int>{2, 3, -1});
    std::istringstream again(to_dimacs(f));
    CHECK(read_dimacs(again) == f);

    std::istringstream no_header("1 2 0\n");
    CHECK_THROWS_AS(read_dimacs(no_header, "x.cnf"), parse_error);
    std::istringstream range("p cnf 2 1\n1 3 0\n");
    try {
        read_dimacs(range, "x.cnf");
        FAIL("expected a parse error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("x.cnf:2") != std::string::npos);
    }
    std::istringstream count("p cnf 2 2\n1 2 0\n");
    CHECK_THROWS_AS(read_dimacs(count), parse_error);
    std::istringstream junk("p cnf 2 1\n1 a 0\n");
    CHECK_THROWS_AS(read_dimacs(junk), parse_error);
}

TEST_CASE("DPLL and clause learning agree with truth tables") {
    std::mt19937 rng(41);
    for (int t = 0; t < 400; ++t) {
        int vars = 1 + rng() % 10;
        CnfFormula f = random_cnf(rng, vars, 1 + rng() % (5 * vars), 3);
        bool expected = truth_table(f);
        DpllResult a = dpll_solve(f);
        DpllResult b = cdcl_solve(f);
        CHECK(bool(a) == expected);
        CHECK(bool(b) == expected);
        if (a) CHECK(satisfies(f, a.values));
        if (b) CHECK(satisfies(f, b.values));
    }
}

TEST_CASE("clause learning on larger random 3-SAT") {
    std::mt19937 rng(42);
    for (int t = 0; t < 30; ++t) {
        CnfFormula f = random_cnf(rng, 40, 170, 3);
        for (auto& c : f.clauses)
            while (c.size() < 3) c.push_back(int(1 + rng() % 40));
        DpllResult a = dpll_solve(f);
        DpllResult b = cdcl_solve(f);
        CHECK(a.status == b.status);
        if (b) CHECK(satisfies(f, b.values));
    }
}

TEST_CASE("pigeonhole is unsatisfiable") {
    int holes = 5, pigeons = 6;
    CnfFormula f;
    f.variable_count = holes * pigeons;
    auto var = [&](int p, int h) { return p * holes + h + 1; };
    for (int p = 0; p < pigeons; ++p) {
        std::vector<int> c;
        for (int h = 0; h < holes; ++h) c.push_back(var(p, h));
        f.add_clause(c);
    }
    for (int h = 0; h < holes; ++h)
        for (int p = 0; p < pigeons; ++p)
            for (int q = p + 1; q < pigeons; ++q) f.add_clause({-var(p, h), -var(q, h)});
    CHECK(cdcl_solve(f).status == SolveStatus::Unsatisfiable);
    CHECK(dpll_solve(f).status == SolveStatus::Unsatisfiable);
    CHECK(cdcl_solve(f, 5).status == SolveStatus::Unknown);
    CHECK(dpll_solve(f, 5).status == SolveStatus::Unknown);
}

TEST_CASE("exact solver agrees with exhaustive colorings") {
    std::mt19937 rng(43);
    for (int t = 0; t < 300; ++t) {
        Digraph d = testing::random_digraph(rng, 1 + rng() % 9, 0.5);
        PathPattern p = random_pattern(rng);
        int k = 1 + rng() % 3;
        bool expected = testing::brute_colorable(d, p, k);
        for (Engine engine : {Engine::Backtracking, Engine::ClauseLearning}) {
            SolveOptions o;
            o.engine = engine;
            SolveResult r = solve_exact(d, p, k, o);
            CHECK(r.colorable() == expected);
            if (r.coloring) CHECK(verify_coloring(d, *r.coloring, p).ok());
        }
        CHECK(bool(dpll_solve(encode_cnf(d, p, k).formula)) == expected);
    }
}

TEST_CASE("colorability is invariant under reversing the digraph and the pattern") {
    std::mt19937 rng(44);
    for (int t = 0; t < 150; ++t) {
        auto g = testing::random_planar_dag(rng, 3 + rng() % 10);
        PathPattern p = random_pattern(rng);
        int k = 2 + rng() % 2;
        CHECK(solve_exact(g.graph, p, k).colorable() == solve_exact(reverse(g.graph), reverse_pattern(p), k).colorable());
        CHECK(solve_exact(g.graph, p, k).colorable() == solve_exact(g.graph, traverse_backwards(p), k).colorable());
    }
}

TEST_CASE("domains restrict colors") {
    Digraph d = pattern_to_digraph(PathPattern(">>"));
    SolveOptions o;
    o.domains = {1u, 1u, 3u};
    for (Engine engine : {Engine::Backtracking, Engine::ClauseLearning}) {
        o.engine = engine;
        SolveResult r = solve_exact(d, PathPattern(">>"), 2, o);
        REQUIRE(r.coloring);
        CHECK(r.coloring->color == std::vector<int>{0, 0, 1});
    }
    o.domains = {1u, 1u, 1u};
    for (Engine engine : {Engine::Backtracking, Engine::ClauseLearning}) {
        o.engine = engine;
        CHECK(solve_exact(d, PathPattern(">>"), 2, o).status == SolveStatus::Unsatisfiable);
    }
    o.domains = {1u, 1u};
    CHECK_THROWS_AS(solve_exact(d, PathPattern(">>"), 2, o), std::invalid_argument);
}

TEST_CASE("edge pattern at k = 2 is bipartiteness") {
    std::mt19937 rng(45);
    for (int t = 0; t < 100; ++t) {
        Digraph d = testing::random_digraph(rng, 1 + rng() % 10, 0.3);
        CHECK(solve_exact(d, PathPattern(">"), 2).colorable() == is_bipartite(d));
    }
}

TEST_CASE("budget turns into unknown") {
    Digraph d = build_tower(PathPattern(">>")).digraph;
    SolveOptions o;
    o.node_budget = 1;
    o.engine = Engine::Backtracking;
    CHECK(solve_exact(d, PathPattern(">>"), 2, o).status == SolveStatus::Unknown);
    o.engine = Engine::Auto;
    o.node_budget = 0;
    CHECK(solve_exact(d, PathPattern(">>"), 2, o).status == SolveStatus::Unsatisfiable);
}

TEST_CASE("encoding shape") {
    Digraph d = pattern_to_digraph(PathPattern(">>"));
    Encoding e = encode_cnf(d, PathPattern(">>"), 3);
    CHECK(e.formula.variable_count == 9);
    // one at-least-one and three at-most-one clauses per vertex, one clause per copy and color
    CHECK(e.formula.clauses.size() == 3 * 4 + 3);
    CHECK_THROWS_AS(encode_cnf(d, PathPattern(">>"), 0), std::invalid_argument);
}

TEST_CASE("one color means pattern-free") {
    std::mt19937 rng(46);
    for (int t = 0; t < 50; ++t) {
        Digraph d = testing::random_digraph(rng, 1 + rng() % 7, 0.4);
        PathPattern p = random_pattern(rng);
        CHECK(solve_exact(d, p, 1).colorable() == enumerate_induced(d, p).empty());
    }
}
