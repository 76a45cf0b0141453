#include "support.hpp"

#include "pfc/mutation.hpp"
#include "pfc/planarity.hpp"

#include <catch_amalgamated.hpp>

using namespace pfc;

TEST_CASE("every catalog gadget meets its contract") {
    for (const auto& id : gadget_ids()) {
        INFO(id);
        Gadget g = build_gadget(id);
        ContractReport r = check_contract(g);
        for (const auto& cl : r.clauses) {
            INFO(cl.name << ": " << cl.detail);
            CHECK(cl.pass);
        }
        CHECK(is_acyclic(g.digraph));
        CHECK(verify_embedding(g.digraph, g.embedding));
        CHECK(g.level.size() == g.digraph.vertex_count());
        for (const auto& [name, v] : g.ports) CHECK(g.level[v] == 0);
    }
    CHECK(gadget_ids().size() == 11);
    CHECK_THROWS_AS(build_gadget("nonsense"), std::invalid_argument);
}

TEST_CASE("reversed gadgets meet the reversed contract") {
    for (const auto& id : gadget_ids()) {
        INFO(id);
        CHECK(check_contract(reverse(build_gadget(id))).passed());
    }
}

TEST_CASE("contract clauses match the gadget role") {
    Gadget neg = negator_p3();
    CHECK(neg.contract.forced_inequalities.size() == 1);
    CHECK(neg.contract.boundary_extension);
    Gadget ext = extender_v3();
    CHECK(ext.contract.forced_equalities.size() == 1);
    CHECK(ext.contract.isolated_ports);
    Gadget cl = clause_p3();
    REQUIRE(cl.contract.clause_rule);
    CHECK((*cl.contract.clause_rule)[0] == "t'");
    Gadget cx = crossover("l4");
    CHECK(cx.ports.size() == 4);
    CHECK(cx.contract.forced_equalities.size() == 2);
}

TEST_CASE("a bare arc is neither a negator nor an extender") {
    Gadget g;
    g.id = "arc";
    g.digraph = Digraph(2);
    g.digraph.add_arc(0, 1);
    g.embedding = incidence_rotation(g.digraph);
    g.ports = {{"x", 0}, {"y", 1}};
    g.contract = detail::two_port(p3_pattern(), false, true);
    ContractReport r = check_contract(g);
    CHECK_FALSE(r.passed());
    bool witnessed = false;
    for (const auto& c : r.clauses)
        if (!c.pass && c.witness) witnessed = verify_coloring(g.digraph, *c.witness, p3_pattern()).ok();
    CHECK(witnessed);
    g.contract = detail::two_port(p3_pattern(), true, true);
    CHECK_FALSE(check_contract(g).passed());
}

TEST_CASE("clause gadgets decide the disjunction exactly") {
    for (const Gadget& g : {clause_p3(), clause_v3()}) {
        INFO(g.id);
        std::vector<vertex_t> ports;
        for (const auto& name : *g.contract.clause_rule) ports.push_back(g.port(name));
        for (int mask = 0; mask < 16; ++mask) {
            SolveOptions o;
            o.domains.assign(g.digraph.vertex_count(), 3u);
            std::vector<int> col(4);
            for (int i = 0; i < 4; ++i) {
                col[i] = mask >> i & 1;
                o.domains[ports[i]] = 1u << col[i];
            }
            bool expected = col[0] == col[1] || col[0] == col[2] || col[0] == col[3];
            CHECK(solve_exact(g.digraph, g.contract.pattern, 2, o).colorable() == expected);
        }
    }
}

TEST_CASE("fans") {
    Gadget f = build_fan(PathPattern(">><"), 1);
    CHECK(f.digraph.vertex_count() == 5);
    CHECK(f.digraph.arc_count() == 3 + 4);
    CHECK(f.digraph.out(f.port("u")).size() == 4);
    CHECK(verify_embedding(f.digraph, f.embedding));
    CHECK_THROWS_AS(build_fan(PathPattern(">"), 1), std::invalid_argument);
    CHECK_THROWS_AS(build_fan(PathPattern()), std::invalid_argument);
}

TEST_CASE("tower sizes") {
    // one root, then (l+1) new vertices under every vertex of the previous level
    auto expected = [](std::size_t l) {
        std::size_t total = 1, level = 1;
        for (std::size_t d = 0; d < l; ++d) {
            level *= l + 1;
            total += level;
        }
        return total;
    };
    for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& p : enumerate_orientations(n)) {
            Gadget t = build_tower(p);
            CHECK(t.digraph.vertex_count() == expected(p.edge_count()));
            CHECK(is_acyclic(t.digraph));
            CHECK(verify_embedding(t.digraph, t.embedding));
        }
    CHECK(build_tower(PathPattern(">>")).digraph.vertex_count() == 13);
    CHECK(build_tower(PathPattern(">>>")).digraph.vertex_count() == 85);
}

TEST_CASE("small towers have no pattern-free 2-coloring") {
    for (std::size_t n = 2; n <= 3; ++n)
        for (const auto& p : enumerate_orientations(n)) {
            INFO(p.str());
            Gadget t = build_tower(p);
            CHECK_FALSE(testing::brute_colorable(t.digraph, p, 2));
            CHECK_FALSE(solve_exact(t.digraph, reverse_pattern(p), 2, {}).colorable() !=
                        solve_exact(reverse(t.digraph), p, 2, {}).colorable());
        }
}

TEST_CASE("sink-path tower has a 3-coloring with one vertex of the first color") {
    Coloring c = tower_special_3coloring(v3_pattern());
    Gadget t = build_tower(v3_pattern());
    CHECK(verify_coloring(t.digraph, c, v3_pattern()).ok());
    CHECK(std::count(c.color.begin(), c.color.end(), 0) == 1);
    CHECK_FALSE(solve_exact(t.digraph, v3_pattern(), 2).colorable());
}

TEST_CASE("mutation analysis of a negator") {
    Gadget g = negator_p3();
    MutationReport r = mutation_analysis(g);
    CHECK(r.total() == g.digraph.arc_count());
    for (const auto& m : r.mutants) {
        if (m.killed) CHECK_FALSE(m.failed_clause.empty());
        if (m.equivalent) CHECK_FALSE(m.killed);
    }
    CHECK(r.killed() + r.equivalent() <= r.total());
}

TEST_CASE("contract isomorphism") {
    Gadget g = negator_v3();
    CHECK(contract_isomorphic(g, g));
    Gadget swapped = g;
    std::swap(swapped.ports[0].second, swapped.ports[1].second);
    // swapping x and y is a symmetry of a two-port contract
    CHECK(contract_isomorphic(g, swapped));
    for (std::size_t e = 0; e < g.digraph.arc_count(); ++e) {
        Gadget m = flip_arc(g, e);
        if (contract_isomorphic(g, m)) CHECK(check_contract(m).passed());
    }
}

TEST_CASE("gadget drawings are planar in the Boost sense too") {
    for (const auto& id : gadget_ids()) CHECK(is_planar(build_gadget(id).digraph));
}
