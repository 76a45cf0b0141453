#ifndef PFC_MUTATION_HPP
#define PFC_MUTATION_HPP

#include "pfc/gadgets.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/vf2_sub_graph_iso.hpp>

#include <set>

namespace pfc {

// Single-arc-flip mutants of a gadget and whether check_contract rejects them.
// A mutant is equivalent when it is isomorphic to the original by a map that sends
// ports to ports along a symmetry of the contract; no check can tell those apart.
struct Mutant {
    std::size_t arc = 0;
    Arc original;
    bool equivalent = false;
    bool killed = false;
    std::string failed_clause;
};

struct MutationReport {
    std::string gadget;
    std::vector<Mutant> mutants;

    std::size_t total() const { return mutants.size(); }
    std::size_t killed() const {
        return std::count_if(mutants.begin(), mutants.end(), [](const Mutant& m) { return m.killed; });
    }
    std::size_t equivalent() const {
        return std::count_if(mutants.begin(), mutants.end(), [](const Mutant& m) { return m.equivalent; });
    }
};

namespace detail {

using PortGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::bidirectionalS, boost::property<boost::vertex_name_t, int>>;

inline PortGraph port_graph(const Gadget& g, const std::vector<int>& port_color) {
    PortGraph b(g.digraph.vertex_count());
    for (const Arc& a : g.digraph.arcs()) boost::add_edge(a.tail, a.head, b);
    for (vertex_t v = 0; v < g.digraph.vertex_count(); ++v) boost::put(boost::vertex_name, b, v, -1);
    for (std::size_t i = 0; i < g.ports.size(); ++i) boost::put(boost::vertex_name, b, g.ports[i].second, port_color[i]);
    return b;
}

// Port permutations that map the contract onto itself.
inline std::vector<std::vector<int>> contract_symmetries(const Gadget& g) {
    std::vector<std::string> names;
    for (const auto& [n, v] : g.ports) names.push_back(n);
    auto idx = [&](const std::string& n) { return int(std::find(names.begin(), names.end(), n) - names.begin()); };
    auto pairs = [&](const std::vector<std::pair<std::string, std::string>>& rel, const std::vector<int>& perm) {
        std::set<std::pair<int, int>> s;
        for (const auto& [a, b] : rel) {
            int x = perm[idx(a)], y = perm[idx(b)];
            s.insert({std::min(x, y), std::max(x, y)});
        }
        return s;
    };
    const GadgetContract& c = g.contract;
    std::vector<int> id(names.size());
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> perm = id;
    std::vector<std::vector<int>> out;
    do {
        bool ok = pairs(c.forced_equalities, perm) == pairs(c.forced_equalities, id) &&
                  pairs(c.forced_inequalities, perm) == pairs(c.forced_inequalities, id);
        if (c.clause_rule) {
            int t = idx((*c.clause_rule)[0]);
            ok = ok && perm[t] == t;
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

struct NeverStop {
    template <class A, class B>
    bool operator()(const A&, const B&) const { return false; }
};

}  // namespace detail

inline bool contract_isomorphic(const Gadget& a, const Gadget& b) {
    if (a.digraph.vertex_count() != b.digraph.vertex_count() || a.digraph.arc_count() != b.digraph.arc_count()) return false;
    if (a.ports.size() != b.ports.size()) return false;
    std::vector<int> id(a.ports.size());
    std::iota(id.begin(), id.end(), 0);
    auto x = detail::port_graph(a, id);
    for (const auto& perm : detail::contract_symmetries(a)) {
        auto y = detail::port_graph(b, perm);
        auto eq = boost::make_property_map_equivalent(boost::get(boost::vertex_name, x), boost::get(boost::vertex_name, y));
        if (boost::vf2_graph_iso(x, y, detail::NeverStop(), boost::get(boost::vertex_index, x), boost::get(boost::vertex_index, y),
                                 boost::vertex_order_by_mult(x), boost::always_equivalent(), eq))
            return true;
    }
    return false;
}

inline MutationReport mutation_analysis(const Gadget& g, std::uint64_t budget = 0) {
    MutationReport r{g.id, {}};
    for (std::size_t e = 0; e < g.digraph.arc_count(); ++e) {
        Gadget m = flip_arc(g, e);
        Mutant mu;
        mu.arc = e;
        mu.original = g.digraph.arc(e);
        mu.equivalent = is_acyclic(m.digraph) && contract_isomorphic(g, m);
        ContractReport rep = check_contract(m, budget);
        mu.killed = !rep.passed();
        for (const auto& cl : rep.clauses)
            if (!cl.pass) {
                mu.failed_clause = cl.name;
                break;
            }
        r.mutants.push_back(mu);
    }
    return r;
}

}  // namespace pfc

#endif
