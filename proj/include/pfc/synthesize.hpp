#ifndef PFC_SYNTHESIZE_HPP
#define PFC_SYNTHESIZE_HPP

#include "pfc/gadgets.hpp"
#include "pfc/planarity.hpp"

namespace pfc {

// Port names mentioned by a contract, in order of first appearance.
inline std::vector<std::string> contract_ports(const GadgetContract& c) {
    std::vector<std::string> names;
    auto note = [&](const std::string& n) {
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    };
    if (c.clause_rule)
        for (const auto& n : *c.clause_rule) note(n);
    for (const auto& [a, b] : c.forced_equalities) {
        note(a);
        note(b);
    }
    for (const auto& [a, b] : c.forced_inequalities) {
        note(a);
        note(b);
    }
    return names;
}

struct SynthesisStats {
    std::uint64_t candidates = 0;  // digraphs handed to check_contract
};

// Smallest gadget meeting the contract. Ports are vertices 0..p-1, interior vertices
// are numbered topologically, and candidates of one size are tried in lexicographic
// order of their arc choices (none, forward, backward per vertex pair).
inline std::optional<Gadget> synthesize_gadget(const GadgetContract& contract, std::size_t max_vertices, std::uint64_t budget = 0,
                                               SynthesisStats* stats = nullptr) {
    if (max_vertices > 12) throw std::invalid_argument("synthesize_gadget: max_vertices must be at most 12");
    auto names = contract_ports(contract);
    if (names.empty()) throw std::invalid_argument("synthesize_gadget: contract names no ports");
    for (const auto& eq : contract.forced_equalities)
        for (const auto& ne : contract.forced_inequalities)
            if ((eq.first == ne.first && eq.second == ne.second) || (eq.first == ne.second && eq.second == ne.first)) return std::nullopt;

    std::uint64_t seen = 0;
    std::size_t p = names.size();
    for (std::size_t n = std::max<std::size_t>(p, 1); n <= max_vertices; ++n) {
        std::vector<std::pair<vertex_t, vertex_t>> pairs;
        std::vector<int> choices;
        for (vertex_t u = 0; u < n; ++u)
            for (vertex_t v = u + 1; v < n; ++v) {
                pairs.push_back({u, v});
                choices.push_back(u >= p ? 2 : 3);
            }
        std::vector<int> state(pairs.size(), 0);
        while (true) {
            Digraph d(n);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (state[i] == 1) d.add_arc(pairs[i].first, pairs[i].second);
                else if (state[i] == 2) d.add_arc(pairs[i].second, pairs[i].first);
            }
            if (is_acyclic(d)) {
                if (auto emb = planar_embedding(d)) {
                    if (budget && seen >= budget) throw budget_exceeded("synthesize_gadget: candidate budget exceeded");
                    ++seen;
                    Gadget g;
                    g.id = "synthesized";
                    g.digraph = d;
                    for (std::size_t i = 0; i < p; ++i) {
                        g.ports.push_back({names[i], static_cast<vertex_t>(i)});
                        g.digraph.set_label(names[i], static_cast<vertex_t>(i));
                    }
                    g.embedding = *emb;
                    g.contract = contract;
                    g.level.assign(n, 1);
                    std::fill(g.level.begin(), g.level.begin() + p, 0);
                    if (check_contract(g).passed()) {
                        if (stats) stats->candidates = seen;
                        return g;
                    }
                }
            }
            std::size_t pos = pairs.size();
            while (pos-- > 0) {
                if (++state[pos] < choices[pos]) break;
                state[pos] = 0;
            }
            if (pos == std::size_t(-1)) break;
        }
    }
    if (stats) stats->candidates = seen;
    return std::nullopt;
}

}  // namespace pfc

#endif
