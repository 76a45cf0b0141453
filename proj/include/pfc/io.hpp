#ifndef PFC_IO_HPP
#define PFC_IO_HPP

#include "pfc/reductions.hpp"

#include <fstream>
#include <json.hpp>

namespace pfc {

using json = nlohmann::json;

inline json to_json(const Digraph& d, const RotationEmbedding* embedding = nullptr) {
    json j;
    j["n"] = d.vertex_count();
    j["arcs"] = json::array();
    for (const Arc& a : d.arcs()) j["arcs"].push_back({a.tail, a.head});
    j["labels"] = json::object();
    for (const auto& [name, v] : d.labels()) j["labels"][name] = v;
    if (embedding) j["rotation"] = embedding->rotation;
    return j;
}

inline json to_json(const EmbeddedDigraph& g) { return to_json(g.graph, &g.embedding); }

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

}  // namespace detail

inline Digraph digraph_from_json(const json& j, const std::string& where = "<json>") {
    std::size_t n = detail::field(j, "n", where).get<std::size_t>();
    Digraph d(n);
    for (const auto& arc : detail::field(j, "arcs", where)) {
        if (!arc.is_array() || arc.size() != 2) throw std::invalid_argument(where + ": arc entries must be [u, v]");
        d.add_arc(arc[0].get<vertex_t>(), arc[1].get<vertex_t>());
    }
    if (j.contains("labels"))
        for (const auto& [name, v] : j.at("labels").items()) d.set_label(name, v.get<vertex_t>());
    return d;
}

inline std::optional<RotationEmbedding> embedding_from_json(const json& j) {
    if (!j.contains("rotation")) return std::nullopt;
    return RotationEmbedding{j.at("rotation").get<std::vector<std::vector<std::size_t>>>()};
}

inline EmbeddedDigraph embedded_from_json(const json& j, const std::string& where = "<json>") {
    Digraph d = digraph_from_json(j, where);
    auto e = embedding_from_json(j);
    if (!e) throw std::invalid_argument(where + ": missing field \"rotation\"");
    detail::index_rotation(d, *e);
    return {std::move(d), std::move(*e)};
}

// Planar graph input: {"n", "edges", "rotation"}; edges are unordered pairs.
inline EmbeddedDigraph planar_graph_from_json(const json& j, const std::string& where = "<json>") {
    std::size_t n = detail::field(j, "n", where).get<std::size_t>();
    Digraph d(n);
    for (const auto& e : detail::field(j, "edges", where)) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument(where + ": edge entries must be [u, v]");
        d.add_arc(e[0].get<vertex_t>(), e[1].get<vertex_t>());
    }
    auto rot = embedding_from_json(j);
    if (!rot) throw std::invalid_argument(where + ": missing field \"rotation\"");
    detail::index_rotation(d, *rot);
    return {std::move(d), std::move(*rot)};
}

inline json planar_graph_to_json(const EmbeddedDigraph& g) {
    json j;
    j["n"] = g.graph.vertex_count();
    j["edges"] = json::array();
    for (const Arc& a : g.graph.arcs()) j["edges"].push_back({a.tail, a.head});
    j["rotation"] = g.embedding.rotation;
    return j;
}

inline json to_json(const Coloring& c) { return {{"k", c.k}, {"colors", c.color}}; }

inline Coloring coloring_from_json(const json& j, const std::string& where = "<json>") {
    Coloring c;
    c.k = detail::field(j, "k", where).get<int>();
    c.color = detail::field(j, "colors", where).get<std::vector<int>>();
    return c;
}

// Per vertex, the DIMACS variable of each color.
inline json to_json(const VarMap& m) {
    json j;
    j["k"] = m.k;
    j["vertices"] = m.vertex_count;
    j["variables"] = json::array();
    for (vertex_t v = 0; v < m.vertex_count; ++v) {
        json row = json::array();
        for (int c = 0; c < m.k; ++c) row.push_back(m.var(v, c));
        j["variables"].push_back(row);
    }
    return j;
}

inline json to_json(const ReductionCertificate& c) {
    json j;
    j["digraph"] = to_json(c.instance);
    j["pattern"] = c.pattern.str();
    j["k"] = c.k;
    json cert;
    if (c.truth_vertex) {
        cert["truth_vertex"] = *c.truth_vertex;
        cert["true_is_truth_color"] = c.true_is_truth_color;
    }
    cert["literals"] = json::object();
    for (const auto& [lit, v] : c.literal_vertices) cert["literals"][std::to_string(lit)] = v;
    cert["strips"] = c.strips;
    cert["crossings"] = c.crossings;
    cert["regions"] = json::array();
    for (const auto& r : c.gadget_regions) cert["regions"].push_back({{"id", r.id}, {"vertices", r.vertices}});
    j["certificate"] = cert;
    return j;
}

inline ReductionCertificate certificate_from_json(const json& j, const std::string& where = "<json>") {
    ReductionCertificate c;
    c.instance = embedded_from_json(detail::field(j, "digraph", where), where);
    c.pattern = PathPattern::parse(detail::field(j, "pattern", where).get<std::string>());
    c.k = detail::field(j, "k", where).get<int>();
    if (j.contains("certificate")) {
        const json& cert = j.at("certificate");
        if (cert.contains("truth_vertex")) {
            c.truth_vertex = cert.at("truth_vertex").get<vertex_t>();
            c.true_is_truth_color = cert.value("true_is_truth_color", true);
        }
        if (cert.contains("literals"))
            for (const auto& [lit, v] : cert.at("literals").items()) c.literal_vertices[std::stoi(lit)] = v.get<vertex_t>();
        c.strips = cert.value("strips", std::size_t(0));
        c.crossings = cert.value("crossings", std::size_t(0));
        if (cert.contains("regions"))
            for (const auto& r : cert.at("regions"))
                c.gadget_regions.push_back({r.at("id").get<std::string>(), r.at("vertices").get<std::vector<vertex_t>>()});
    }
    return c;
}

inline json to_json(const GadgetContract& c) {
    json j;
    j["k"] = c.k;
    j["pattern"] = c.pattern.str();
    j["forced_equalities"] = c.forced_equalities;
    j["forced_inequalities"] = c.forced_inequalities;
    j["boundary_extension"] = c.boundary_extension;
    j["isolated_ports"] = c.isolated_ports;
    if (c.clause_rule) j["clause_rule"] = *c.clause_rule;
    j["no_pattern_free_coloring"] = c.no_pattern_free_coloring;
    return j;
}

inline json to_json(const ContractReport& r) {
    json j;
    j["gadget"] = r.gadget;
    j["passed"] = r.passed();
    j["clauses"] = json::array();
    for (const auto& c : r.clauses) {
        json cl{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) cl["detail"] = c.detail;
        if (c.witness) cl["witness"] = c.witness->color;
        j["clauses"].push_back(cl);
    }
    return j;
}

inline json to_json(const Gadget& g, const ContractReport* report = nullptr) {
    json j;
    j["id"] = g.id;
    j["digraph"] = to_json(g.digraph, &g.embedding);
    j["ports"] = json::object();
    for (const auto& [name, v] : g.ports) j["ports"][name] = v;
    j["contract"] = to_json(g.contract);
    if (report) j["report"] = to_json(*report);
    return j;
}

// Graphviz source; labelled vertices are drawn as filled boxes.
inline std::string to_dot(const Digraph& d, const std::string& name = "instance") {
    std::map<vertex_t, std::string> names;
    for (const auto& [label, v] : d.labels()) names[v] += (names[v].empty() ? "" : ",") + label;
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        out << "  " << v;
        if (names.count(v)) out << " [label=\"" << v << ":" << names[v] << "\", shape=box, style=filled, fillcolor=lightblue]";
        out << ";\n";
    }
    for (const Arc& a : d.arcs()) out << "  " << a.tail << " -> " << a.head << ";\n";
    out << "}\n";
    return out.str();
}

// Reads back the vertex count and arcs written by to_dot.
inline Digraph digraph_from_dot(std::istream& in, const std::string& where = "<dot>") {
    std::string line;
    std::size_t lineno = 0;
    Digraph d;
    std::vector<std::pair<vertex_t, vertex_t>> arcs;
    std::vector<std::pair<std::string, vertex_t>> labels;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first == "digraph" || first == "}") continue;
        try {
            vertex_t u = static_cast<vertex_t>(std::stoul(first));
            std::string tok;
            if (ls >> tok && tok == "->") {
                std::string head;
                ls >> head;
                arcs.push_back({u, static_cast<vertex_t>(std::stoul(head))});
                continue;
            }
            while (d.vertex_count() <= u) d.add_vertex();
            auto q = line.find("label=\"");
            if (q != std::string::npos) {
                auto colon = line.find(':', q);
                auto end = line.find('"', q + 7);
                std::string list = line.substr(colon + 1, end - colon - 1);
                std::istringstream names(list);
                std::string n;
                while (std::getline(names, n, ',')) labels.push_back({n, u});
            }
        } catch (const std::logic_error&) {
            throw parse_error(where, lineno, "unrecognized DOT line");
        }
    }
    for (auto [u, v] : arcs) d.add_arc(u, v);
    for (const auto& [n, v] : labels) d.set_label(n, v);
    return d;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace pfc

#endif
