#ifndef PFC_GADGETS_HPP
#define PFC_GADGETS_HPP

#include "pfc/geometry.hpp"
#include "pfc/solve.hpp"

#include <array>

namespace pfc {

using PortList = std::vector<std::pair<std::string, vertex_t>>;

struct GadgetContract {
    int k = 2;
    PathPattern pattern;
    std::vector<std::pair<std::string, std::string>> forced_equalities;
    std::vector<std::pair<std::string, std::string>> forced_inequalities;
    // Every admissible port precoloring extends with all port-incident gadget edges bichromatic.
    bool boundary_extension = false;
    // All ports are sources of the gadget (or all are sinks) and every admissible port
    // precoloring extends.
    bool isolated_ports = false;
    // Ports (t', x', y', z'): a precoloring extends iff c(t') is among c(x'), c(y'), c(z').
    std::optional<std::array<std::string, 4>> clause_rule;
    bool no_pattern_free_coloring = false;
};

struct Gadget {
    std::string id;
    Digraph digraph;
    PortList ports;
    RotationEmbedding embedding;
    GadgetContract contract;
    // Local straight-line drawing; empty for gadgets that are embedded combinatorially.
    std::vector<Point> drawing;
    // Placement priority: ports 0, deeper nesting later. Reductions number vertices by it.
    std::vector<int> level;

    vertex_t port(const std::string& name) const {
        for (const auto& [n, v] : ports)
            if (n == name) return v;
        throw std::invalid_argument("gadget " + id + " has no port '" + name + "'");
    }
};

// Accumulates a straight-line drawing; the rotation system is read off the coordinates.
class DrawnBuilder {
public:
    Digraph graph;
    std::vector<Point> pos;
    std::vector<int> level;

    vertex_t add(Point p, int lvl) {
        pos.push_back(p);
        level.push_back(lvl);
        return graph.add_vertex();
    }

    std::size_t arc(vertex_t u, vertex_t v) { return graph.add_arc(u, v); }

    // Copies g through `map`; ports listed in `bind` are identified with existing vertices.
    std::vector<vertex_t> place(const Gadget& g, const Affine& map, const PortList& bind, int level_offset) {
        if (g.drawing.size() != g.digraph.vertex_count()) throw std::invalid_argument("gadget " + g.id + " has no drawing");
        std::vector<vertex_t> image(g.digraph.vertex_count(), ~vertex_t(0));
        for (const auto& [name, host] : bind) image[g.port(name)] = host;
        for (vertex_t v = 0; v < g.digraph.vertex_count(); ++v) {
            if (image[v] == ~vertex_t(0)) image[v] = add(map(g.drawing[v]), g.level[v] + level_offset);
        }
        for (const Arc& a : g.digraph.arcs()) arc(image[a.tail], image[a.head]);
        return image;
    }

    // Two-port gadget drawn along the segment from -> to, bulging to one side by `width`.
    std::vector<vertex_t> place_between(const Gadget& g, vertex_t from, vertex_t to, double width, int side, int level_offset) {
        Point a = pos.at(from), b = pos.at(to);
        Affine map{a, b - a, unit(left_normal(b - a)) * (width * side)};
        return place(g, map, {{"x", from}, {"y", to}}, level_offset);
    }

    struct Result {
        Digraph graph;
        std::vector<Point> pos;
        std::vector<int> level;
        RotationEmbedding embedding;
        std::vector<vertex_t> perm;  // builder vertex -> final vertex
    };

    // Renumbers vertices by (level, creation order).
    Result finish() const {
        std::size_t n = graph.vertex_count();
        std::vector<vertex_t> order(n);
        std::iota(order.begin(), order.end(), vertex_t(0));
        std::stable_sort(order.begin(), order.end(), [&](vertex_t a, vertex_t b) { return level[a] < level[b]; });
        Result r;
        r.perm.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) r.perm[order[i]] = static_cast<vertex_t>(i);
        r.graph = relabel(graph, r.perm);
        r.pos.resize(n);
        r.level.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            r.pos[r.perm[v]] = pos[v];
            r.level[r.perm[v]] = level[v];
        }
        r.embedding = embedding_from_drawing(r.graph, r.pos);
        return r;
    }

    Gadget to_gadget(std::string id, const PortList& ports, GadgetContract contract) const {
        Result r = finish();
        Gadget g{std::move(id), std::move(r.graph), {}, std::move(r.embedding), std::move(contract), std::move(r.pos), std::move(r.level)};
        for (const auto& [name, v] : ports) {
            g.ports.push_back({name, r.perm[v]});
            g.digraph.set_label(name, r.perm[v]);
        }
        return g;
    }
};

namespace detail {

struct Spec {
    std::vector<Point> points;
    std::vector<std::pair<vertex_t, vertex_t>> arcs;
};

inline Gadget literal_gadget(std::string id, const std::vector<std::string>& port_names, const Spec& s, GadgetContract contract) {
    DrawnBuilder b;
    for (std::size_t v = 0; v < s.points.size(); ++v) b.add(s.points[v], v < port_names.size() ? 0 : 1);
    for (auto [u, v] : s.arcs) b.arc(u, v);
    PortList ports;
    for (std::size_t i = 0; i < port_names.size(); ++i) ports.push_back({port_names[i], static_cast<vertex_t>(i)});
    return b.to_gadget(std::move(id), ports, std::move(contract));
}

inline GadgetContract two_port(const PathPattern& p, bool equal, bool bichromatic) {
    GadgetContract c;
    c.k = 2;
    c.pattern = p;
    (equal ? c.forced_equalities : c.forced_inequalities).push_back({"x", "y"});
    (bichromatic ? c.boundary_extension : c.isolated_ports) = true;
    return c;
}

inline GadgetContract crossing_contract(const PathPattern& p, bool bichromatic) {
    GadgetContract c;
    c.k = 2;
    c.pattern = p;
    c.forced_equalities = {{"x", "x'"}, {"y", "y'"}};
    (bichromatic ? c.boundary_extension : c.isolated_ports) = true;
    return c;
}

inline GadgetContract clause_contract(const PathPattern& p) {
    GadgetContract c;
    c.k = 2;
    c.pattern = p;
    c.clause_rule = std::array<std::string, 4>{"t'", "x'", "y'", "z'"};
    return c;
}

}  // namespace detail

inline const PathPattern& p3_pattern() {
    static const PathPattern p(">>");
    return p;
}
// Middle vertex a sink.
inline const PathPattern& v3_pattern() {
    static const PathPattern p("><");
    return p;
}
inline const PathPattern& l4_pattern() {
    static const PathPattern p(">><");
    return p;
}

// Two-port gadgets are drawn with x at (0,0), y at (1,0) and everything else in the
// open upper strip. Clause gadgets put t', x', y', z' at (0..3, 0) with the body below.

inline Gadget negator_p3() {
    // x -> x' -> {v1,v2,v3} -> y' -> y with v1 -> v2 -> v3.
    detail::Spec s{{{0, 0}, {1, 0}, {0.2, 0.5}, {0.5, 0.2}, {0.5, 0.5}, {0.5, 0.8}, {0.8, 0.5}},
                   {{0, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {4, 5}, {3, 6}, {4, 6}, {5, 6}, {6, 1}}};
    return detail::literal_gadget("negator_p3", {"x", "y"}, s, detail::two_port(p3_pattern(), false, true));
}

inline Gadget negator_v3() {
    // Both ports point into s, u, s'; s -> u <- s'.
    detail::Spec s{{{0, 0}, {1, 0}, {0.5, 0.2}, {0.5, 0.5}, {0.5, 0.8}},
                   {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {4, 3}}};
    return detail::literal_gadget("negator_v3", {"x", "y"}, s, detail::two_port(v3_pattern(), false, false));
}

inline Gadget clause_p3() {
    detail::Spec s{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {2.5, -1}, {1, -1}},
                   {{0, 5}, {5, 1}, {2, 4}, {2, 5}, {4, 3}, {5, 4}}};
    return detail::literal_gadget("clause_p3", {"t'", "x'", "y'", "z'"}, s, detail::clause_contract(p3_pattern()));
}

inline Gadget clause_v3() {
    detail::Spec s{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1.5, -0.5}, {2.5, -2}},
                   {{1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 0}, {5, 0}}};
    return detail::literal_gadget("clause_v3", {"t'", "x'", "y'", "z'"}, s, detail::clause_contract(v3_pattern()));
}

// Two negators meeting head to head at a middle vertex.
inline Gadget extender_from(const Gadget& negator, std::string id, bool bichromatic) {
    DrawnBuilder b;
    vertex_t x = b.add({0, 0}, 0);
    vertex_t y = b.add({1, 0}, 0);
    vertex_t m = b.add({0.5, 0}, 1);
    b.place(negator, {{0, 0}, {0.5, 0}, {0, 0.5}}, {{"x", x}, {"y", m}}, 1);
    b.place(negator, {{1, 0}, {-0.5, 0}, {0, 0.5}}, {{"x", y}, {"y", m}}, 1);
    return b.to_gadget(std::move(id), {{"x", x}, {"y", y}}, detail::two_port(negator.contract.pattern, true, bichromatic));
}

inline Gadget extender_p3() { return extender_from(negator_p3(), "extender_p3", true); }
inline Gadget extender_v3() { return extender_from(negator_v3(), "extender_v3", false); }

namespace detail {

// x, y (and w when given) -> z -> a -> b, z -> b; each of a, b is the sink root of a fan
// over an L4 path. Ports sit on the segment from (0,0) to (1,0), body above it.
inline Gadget l4_extender_body(bool middle_port) {
    DrawnBuilder b;
    vertex_t x = b.add({0, 0}, 0);
    vertex_t y = b.add({1, 0}, 0);
    std::optional<vertex_t> w;
    if (middle_port) w = b.add({0.5, 0}, 0);
    vertex_t z = b.add({0.5, 0.2}, 1);
    vertex_t ra = b.add({0.35, 0.45}, 1);
    vertex_t rb = b.add({0.65, 0.45}, 1);
    b.arc(x, z);
    b.arc(y, z);
    if (w) b.arc(*w, z);
    b.arc(z, ra);
    b.arc(z, rb);
    b.arc(ra, rb);
    const double pi = std::acos(-1.0);
    auto fan = [&](vertex_t root, double start, double step) {
        Point c = b.pos[root];
        std::vector<vertex_t> path;
        for (int i = 0; i < 4; ++i) {
            double ang = (start + step * i) * pi / 180;
            path.push_back(b.add(c + Point{std::cos(ang), std::sin(ang)} * 0.25, 1));
        }
        const auto& word = l4_pattern().word();
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (word[i] == '>') b.arc(path[i], path[i + 1]);
            else b.arc(path[i + 1], path[i]);
        }
        for (vertex_t v : path) b.arc(v, root);
    };
    fan(ra, 90, 30);
    fan(rb, 90, -30);
    if (!w) return b.to_gadget("extender_l4", {{"x", x}, {"y", y}}, two_port(l4_pattern(), true, true));
    GadgetContract c = two_port(l4_pattern(), true, true);
    c.forced_equalities.push_back({"x", "w"});
    return b.to_gadget("extender3_l4", {{"x", x}, {"w", *w}, {"y", y}}, c);
}

// Places a three-port extender with x at `from`, y at `to` and w at their midpoint;
// side picks the half-plane of the body.
inline void place_extender3(DrawnBuilder& b, const Gadget& e, vertex_t from, vertex_t mid, vertex_t to, double width, int side) {
    Point d = b.pos[to] - b.pos[from];
    b.place(e, {b.pos[from], d, left_normal(d) * (width * side)}, {{"x", from}, {"w", mid}, {"y", to}}, 1);
}

}  // namespace detail

inline Gadget extender_l4() { return detail::l4_extender_body(false); }

// q1 -> q2 -> q3 <- q4 with q1 = q2 = x and q3 = q4 = y.
inline Gadget negator_l4() {
    DrawnBuilder b;
    vertex_t x = b.add({0, 0}, 0);
    vertex_t y = b.add({1, 0}, 0);
    vertex_t q1 = b.add({0.2, 0.5}, 1);
    vertex_t q2 = b.add({0.4, 1.0}, 1);
    vertex_t q3 = b.add({0.6, 1.0}, 1);
    vertex_t q4 = b.add({0.8, 0.5}, 1);
    b.arc(q1, q2);
    b.arc(q2, q3);
    b.arc(q4, q3);
    Gadget ext = detail::l4_extender_body(true);
    detail::place_extender3(b, ext, x, q1, q2, 0.15, +1);
    detail::place_extender3(b, ext, y, q4, q3, 0.15, -1);
    return b.to_gadget("negator_l4", {{"x", x}, {"y", y}}, detail::two_port(l4_pattern(), false, true));
}

// Ports x(-1,0), x'(1,0), y(0,1), y'(0,-1). Core a, b, p, q with p, q negated, which forces
// c(a) != c(b); the x-line passes through a and b, the y-line through p and q.
inline Gadget crossover(const std::string& variant) {
    bool l4 = variant == "l4";
    Gadget neg = variant == "p3" ? negator_p3() : variant == "v3" ? negator_v3() : negator_l4();
    Gadget ext = variant == "p3" ? extender_p3() : variant == "v3" ? extender_v3() : extender_l4();
    DrawnBuilder b;
    vertex_t x = b.add({-1, 0}, 0);
    vertex_t xp = b.add({1, 0}, 0);
    vertex_t y = b.add({0, 1}, 0);
    vertex_t yp = b.add({0, -1}, 0);
    vertex_t a = b.add({-0.4, 0}, 1);
    vertex_t bb = b.add({0.4, 0}, 1);
    vertex_t p = b.add({0, 0.3}, 1);
    vertex_t q = b.add({0, -0.3}, 1);
    b.arc(a, p);
    b.arc(a, q);
    if (variant == "p3") {
        b.arc(p, bb);
        b.arc(q, bb);
    } else {
        b.arc(bb, p);
        b.arc(bb, q);
    }
    if (l4) {
        // Twin a' -> a with equal colors turns a -> r <- b into an L4 copy a' -> a -> r <- b.
        vertex_t twin = b.add({-0.7, 0}, 1);
        b.arc(twin, a);
        detail::place_extender3(b, detail::l4_extender_body(true), x, twin, a, 0.1, -1);
        b.place_between(neg, bb, xp, 0.1, +1, 1);
    } else {
        b.place_between(neg, x, a, 0.1, +1, 1);
        b.place_between(ext, bb, xp, 0.1, +1, 1);
    }
    b.place_between(ext, y, p, 0.1, +1, 1);
    b.place_between(neg, p, q, 0.05, +1, 1);
    b.place_between(neg, q, yp, 0.1, +1, 1);
    return b.to_gadget("crossover_" + variant, {{"x", x}, {"x'", xp}, {"y", y}, {"y'", yp}},
                       detail::crossing_contract(neg.contract.pattern, variant != "v3"));
}

inline const std::vector<std::string>& gadget_ids() {
    static const std::vector<std::string> ids{"negator_p3", "extender_p3", "crossover_p3", "clause_p3",
                                              "negator_v3", "extender_v3", "crossover_v3", "clause_v3",
                                              "extender_l4", "negator_l4", "crossover_l4"};
    return ids;
}

inline Gadget build_gadget(const std::string& id) {
    if (id == "negator_p3") return negator_p3();
    if (id == "extender_p3") return extender_p3();
    if (id == "crossover_p3") return crossover("p3");
    if (id == "clause_p3") return clause_p3();
    if (id == "negator_v3") return negator_v3();
    if (id == "extender_v3") return extender_v3();
    if (id == "crossover_v3") return crossover("v3");
    if (id == "clause_v3") return clause_v3();
    if (id == "extender_l4") return extender_l4();
    if (id == "negator_l4") return negator_l4();
    if (id == "crossover_l4") return crossover("l4");
    throw std::invalid_argument("unknown gadget id '" + id + "'");
}

// Root u plus a path v1..v(l+1) shaped like p; spokes carry letter `depth` of p's word.
inline Gadget build_fan(const PathPattern& p, std::size_t depth = 0) {
    std::size_t l = p.edge_count();
    if (l < 1) throw std::invalid_argument("build_fan needs a pattern with at least one arc");
    if (depth >= l) throw std::invalid_argument("build_fan: depth beyond pattern length");
    const double pi = std::acos(-1.0);
    DrawnBuilder b;
    vertex_t u = b.add({0, 0}, 0);
    std::vector<vertex_t> path;
    for (std::size_t i = 0; i <= l; ++i) {
        double ang = pi * (5.0 / 6 - (2.0 / 3) * double(i) / double(l));
        path.push_back(b.add({std::cos(ang), std::sin(ang)}, 0));
    }
    for (std::size_t i = 0; i < l; ++i) {
        if (p.forward(i)) b.arc(path[i], path[i + 1]);
        else b.arc(path[i + 1], path[i]);
    }
    for (vertex_t v : path) {
        if (p.forward(depth)) b.arc(u, v);
        else b.arc(v, u);
    }
    PortList ports{{"u", u}};
    for (std::size_t i = 0; i < path.size(); ++i) ports.push_back({"v" + std::to_string(i + 1), path[i]});
    GadgetContract c;
    c.k = 2;
    c.pattern = p;
    return b.to_gadget("fan", ports, c);
}

// Fans stacked l levels deep, each new fan rooted at a deepest vertex so that every
// root-to-leaf path reads p. Vertices are numbered breadth first.
inline Gadget build_tower(const PathPattern& p) {
    std::size_t l = p.edge_count();
    if (l < 1) throw std::invalid_argument("build_tower needs a pattern with at least one arc");
    Gadget first = build_fan(p, 0);
    EmbeddedDigraph tower{Digraph(first.digraph.vertex_count()), first.embedding};
    for (const Arc& a : first.digraph.arcs()) tower.graph.add_arc(a.tail, a.head);
    std::vector<vertex_t> parent(tower.graph.vertex_count(), 0);
    std::vector<vertex_t> frontier;
    for (vertex_t v = 1; v < tower.graph.vertex_count(); ++v) frontier.push_back(v);
    for (std::size_t depth = 1; depth < l; ++depth) {
        Gadget fan = build_fan(p, depth);
        auto fan_outer = largest_face(fan.digraph, fan.embedding);
        auto fan_corner = corner_in_face(fan.digraph, fan_outer, fan.port("u"));
        std::vector<vertex_t> next;
        for (vertex_t v : frontier) {
            auto outer = largest_face(tower.graph, tower.embedding);
            auto corner = corner_in_face(tower.graph, outer, v);
            auto map = attach_block(tower, v, corner, {fan.digraph, fan.embedding}, fan.port("u"), fan_corner);
            for (std::size_t i = 1; i <= l + 1; ++i) {
                vertex_t w = map[fan.port("v" + std::to_string(i))];
                parent.push_back(v);
                next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    // Each root-to-leaf walk must be an induced copy of p.
    for (vertex_t leaf : frontier) {
        InducedCopy walk{leaf};
        while (walk.back() != 0) walk.push_back(parent[walk.back()]);
        std::reverse(walk.begin(), walk.end());
        auto sub = induced_subdigraph(tower.graph, walk);
        Digraph expect = pattern_to_digraph(p);
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
            bool fwd = tower.graph.has_arc(walk[i], walk[i + 1]);
            if (fwd != p.forward(i)) throw std::logic_error("tower: root-to-leaf path does not read the pattern");
        }
        if (sub.graph.arc_count() != expect.arc_count()) throw std::logic_error("tower: root-to-leaf path is not induced");
    }
    Gadget g;
    g.id = "tower";
    g.digraph = std::move(tower.graph);
    g.embedding = std::move(tower.embedding);
    g.ports = {{"u", 0}};
    g.digraph.set_label("u", 0);
    g.level.assign(g.digraph.vertex_count(), 1);
    g.level[0] = 0;
    g.contract.k = 2;
    g.contract.pattern = p;
    g.contract.no_pattern_free_coloring = true;
    return g;
}

// A p-free 3-coloring of the tower in which exactly one vertex has color 0.
inline Coloring tower_special_3coloring(const PathPattern& p) {
    Gadget t = build_tower(p);
    ExactSolver solver(t.digraph, p, 3);
    std::size_t n = t.digraph.vertex_count();
    for (vertex_t x0 = 0; x0 < n; ++x0) {
        SolveOptions opt;
        opt.domains.assign(n, 0b110);
        opt.domains[x0] = 0b001;
        auto r = solver.solve(opt);
        if (r.colorable()) return *r.coloring;
    }
    throw std::logic_error("tower has no 3-coloring with a unique color-0 vertex");
}

struct ContractClause {
    std::string name;
    bool pass = false;
    std::string detail;
    std::optional<Coloring> witness;
};

struct ContractReport {
    std::string gadget;
    std::vector<ContractClause> clauses;

    bool passed() const {
        return std::all_of(clauses.begin(), clauses.end(), [](const ContractClause& c) { return c.pass; });
    }
};

namespace detail {

// Answers "is there a pattern-free coloring inside these domains?", by listing all
// colorings for small gadgets and by the exact solver otherwise.
class ContractOracle {
public:
    ContractOracle(const Digraph& d, const PathPattern& p, int k, std::uint64_t budget)
        : n_(d.vertex_count()), k_(k), solver_(d, p, k), budget_(budget) {
        double space = std::pow(double(k), double(n_));
        enumerate_ = n_ <= 20 && space <= double(1u << 20);
        if (!enumerate_) return;
        const auto& copies = solver_.copies();
        std::vector<int> c(n_, 0);
        while (true) {
            bool free = std::none_of(copies.begin(), copies.end(), [&](const InducedCopy& copy) {
                return std::all_of(copy.begin(), copy.end(), [&](vertex_t v) { return c[v] == c[copy[0]]; });
            });
            if (free) good_.push_back(c);
            std::size_t pos = 0;
            while (pos < n_ && ++c[pos] == k) c[pos++] = 0;
            if (pos == n_) break;
        }
    }

    bool enumerating() const { return enumerate_; }
    std::size_t free_colorings() const { return good_.size(); }

    std::optional<Coloring> find(const std::vector<std::uint32_t>& domains) {
        if (enumerate_) {
            for (const auto& c : good_) {
                bool ok = true;
                for (std::size_t v = 0; v < n_ && ok; ++v) ok = domains[v] >> c[v] & 1;
                if (ok) return Coloring{k_, c};
            }
            return std::nullopt;
        }
        SolveOptions opt;
        opt.domains = domains;
        opt.node_budget = budget_;
        auto r = solver_.solve(opt);
        if (r.status == SolveStatus::Unknown) throw budget_exceeded("contract check: solver budget exceeded");
        return r.coloring;
    }

private:
    std::size_t n_;
    int k_;
    ExactSolver solver_;
    std::uint64_t budget_;
    bool enumerate_ = false;
    std::vector<std::vector<int>> good_;
};

inline std::string port_text(const std::vector<std::string>& names, const std::vector<int>& colors) {
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i] + "=" + std::to_string(colors[i]);
    return s;
}

}  // namespace detail

inline ContractReport check_contract(const Gadget& g, std::uint64_t budget = 0) {
    ContractReport report{g.id, {}};
    const Digraph& d = g.digraph;
    const GadgetContract& c = g.contract;
    std::size_t n = d.vertex_count();
    std::uint32_t full = (1u << c.k) - 1;

    report.clauses.push_back({"acyclic", is_acyclic(d), "", std::nullopt});
    {
        ContractClause planar{"planar embedding", false, "", std::nullopt};
        try {
            planar.pass = verify_embedding(d, g.embedding);
            if (!planar.pass) planar.detail = "Euler characteristic differs from 2";
        } catch (const malformed_embedding& e) {
            planar.detail = e.what();
        }
        report.clauses.push_back(planar);
    }
    {
        std::set<vertex_t> distinct;
        for (const auto& [name, v] : g.ports) distinct.insert(v);
        report.clauses.push_back({"ports distinct", distinct.size() == g.ports.size(), "", std::nullopt});
    }

    detail::ContractOracle oracle(d, c.pattern, c.k, budget);
    auto pinned = [&](const std::vector<std::pair<vertex_t, int>>& fix) {
        std::vector<std::uint32_t> dom(n, full);
        for (auto [v, col] : fix) dom[v] &= 1u << col;
        return dom;
    };

    for (const auto& [a, b] : c.forced_equalities) {
        ContractClause cl{"forced equal (" + a + "," + b + ")", true, "", std::nullopt};
        for (int i = 0; i < c.k && cl.pass; ++i) {
            for (int j = 0; j < c.k && cl.pass; ++j) {
                if (i == j) continue;
                if (auto w = oracle.find(pinned({{g.port(a), i}, {g.port(b), j}}))) {
                    cl.pass = false;
                    cl.detail = "pattern-free coloring with " + a + "=" + std::to_string(i) + ", " + b + "=" + std::to_string(j);
                    cl.witness = w;
                }
            }
        }
        report.clauses.push_back(cl);
    }
    for (const auto& [a, b] : c.forced_inequalities) {
        ContractClause cl{"forced unequal (" + a + "," + b + ")", true, "", std::nullopt};
        for (int i = 0; i < c.k && cl.pass; ++i) {
            if (auto w = oracle.find(pinned({{g.port(a), i}, {g.port(b), i}}))) {
                cl.pass = false;
                cl.detail = "pattern-free coloring with " + a + "=" + b + "=" + std::to_string(i);
                cl.witness = w;
            }
        }
        report.clauses.push_back(cl);
    }

    std::vector<std::string> names;
    std::vector<vertex_t> verts;
    for (const auto& [name, v] : g.ports) {
        names.push_back(name);
        verts.push_back(v);
    }
    auto index_of = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
    };
    // Visits every port precoloring allowed by the forced relations.
    auto for_admissible = [&](auto&& visit) {
        std::vector<int> col(verts.size(), 0);
        while (true) {
            bool ok = true;
            for (const auto& [a, b] : c.forced_equalities) ok = ok && col[index_of(a)] == col[index_of(b)];
            for (const auto& [a, b] : c.forced_inequalities) ok = ok && col[index_of(a)] != col[index_of(b)];
            if (ok && !visit(col)) return;
            std::size_t pos = 0;
            while (pos < col.size() && ++col[pos] == c.k) col[pos++] = 0;
            if (pos == col.size()) return;
        }
    };

    if (c.boundary_extension) {
        ContractClause cl{"bichromatic extension", true, "", std::nullopt};
        for_admissible([&](const std::vector<int>& col) {
            std::vector<std::uint32_t> dom(n, full);
            for (std::size_t i = 0; i < verts.size(); ++i) dom[verts[i]] &= 1u << col[i];
            for (std::size_t i = 0; i < verts.size(); ++i)
                for (std::size_t e : d.incident(verts[i])) dom[d.other_end(e, verts[i])] &= ~(1u << col[i]);
            bool empty = std::any_of(dom.begin(), dom.end(), [](std::uint32_t m) { return m == 0; });
            if (empty || !oracle.find(dom)) {
                cl.pass = false;
                cl.detail = "no extension with bichromatic port edges for " + detail::port_text(names, col);
            }
            return cl.pass;
        });
        report.clauses.push_back(cl);
    }
    if (c.isolated_ports) {
        ContractClause cl{"isolated ports", true, "", std::nullopt};
        bool sources = std::all_of(verts.begin(), verts.end(), [&](vertex_t v) { return d.in(v).empty(); });
        bool sinks = std::all_of(verts.begin(), verts.end(), [&](vertex_t v) { return d.out(v).empty(); });
        if (!sources && !sinks) {
            cl.pass = false;
            cl.detail = "ports are neither all sources nor all sinks";
        }
        if (cl.pass) {
            for_admissible([&](const std::vector<int>& col) {
                std::vector<std::pair<vertex_t, int>> fix;
                for (std::size_t i = 0; i < verts.size(); ++i) fix.push_back({verts[i], col[i]});
                if (!oracle.find(pinned(fix))) {
                    cl.pass = false;
                    cl.detail = "no extension for " + detail::port_text(names, col);
                }
                return cl.pass;
            });
        }
        report.clauses.push_back(cl);
    }
    if (c.clause_rule) {
        ContractClause cl{"clause rule", true, "", std::nullopt};
        std::array<vertex_t, 4> pv;
        for (std::size_t i = 0; i < 4; ++i) pv[i] = g.port((*c.clause_rule)[i]);
        std::vector<std::string> rule_names((*c.clause_rule).begin(), (*c.clause_rule).end());
        std::vector<int> col(4, 0);
        while (cl.pass) {
            std::vector<std::pair<vertex_t, int>> fix;
            for (std::size_t i = 0; i < 4; ++i) fix.push_back({pv[i], col[i]});
            bool expect = col[0] == col[1] || col[0] == col[2] || col[0] == col[3];
            auto w = oracle.find(pinned(fix));
            if (w.has_value() != expect) {
                cl.pass = false;
                cl.detail = std::string(expect ? "missing" : "unexpected") + " extension for " + detail::port_text(rule_names, col);
                cl.witness = w;
            }
            std::size_t pos = 0;
            while (pos < 4 && ++col[pos] == c.k) col[pos++] = 0;
            if (pos == 4) break;
        }
        report.clauses.push_back(cl);
    }
    if (c.no_pattern_free_coloring) {
        auto w = oracle.find(std::vector<std::uint32_t>(n, full));
        report.clauses.push_back({"no pattern-free coloring", !w.has_value(), w ? "found a pattern-free coloring" : "", w});
    }
    return report;
}

// The same gadget with one arc reversed; used to test that check_contract is sharp.
inline Gadget flip_arc(const Gadget& g, std::size_t index) {
    Gadget m = g;
    m.digraph = Digraph(g.digraph.vertex_count());
    for (std::size_t e = 0; e < g.digraph.arc_count(); ++e) {
        const Arc& a = g.digraph.arc(e);
        if (e == index) m.digraph.add_arc(a.head, a.tail);
        else m.digraph.add_arc(a.tail, a.head);
    }
    for (const auto& [name, v] : g.digraph.labels()) m.digraph.set_label(name, v);
    return m;
}

inline Gadget reverse(const Gadget& g) {
    Gadget r = g;
    r.digraph = reverse(g.digraph);
    r.contract.pattern = reverse_pattern(g.contract.pattern);
    r.id = g.id + "_reversed";
    return r;
}

}  // namespace pfc

#endif
