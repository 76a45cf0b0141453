#ifndef PFC_DIGRAPH_HPP
#define PFC_DIGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace pfc {

using vertex_t = std::uint32_t;

struct Arc {
    vertex_t tail = 0;
    vertex_t head = 0;
    auto operator<=>(const Arc&) const = default;
};

class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simple digraph: no loops, no parallel and no anti-parallel arcs.
// Arc indices are stable and double as underlying-edge indices.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : out_(n), in_(n), incident_(n) {}

    std::size_t vertex_count() const { return out_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(std::size_t index) const { return arcs_.at(index); }

    vertex_t add_vertex() {
        out_.emplace_back();
        in_.emplace_back();
        incident_.emplace_back();
        return static_cast<vertex_t>(out_.size() - 1);
    }

    // Returns the first of `count` new vertices.
    vertex_t add_vertices(std::size_t count) {
        auto first = static_cast<vertex_t>(out_.size());
        for (std::size_t i = 0; i < count; ++i) add_vertex();
        return first;
    }

    std::size_t add_arc(vertex_t u, vertex_t v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("loop arc (" + std::to_string(u) + "," + std::to_string(u) + ")");
        if (has_arc(u, v)) throw std::invalid_argument("parallel arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (has_arc(v, u)) throw std::invalid_argument("anti-parallel arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
        std::size_t index = arcs_.size();
        arcs_.push_back({u, v});
        out_[u].push_back(v);
        in_[v].push_back(u);
        incident_[u].push_back(index);
        incident_[v].push_back(index);
        keys_.insert(key(u, v));
        return index;
    }

    bool has_arc(vertex_t u, vertex_t v) const { return keys_.count(key(u, v)) != 0; }
    bool adjacent(vertex_t u, vertex_t v) const { return has_arc(u, v) || has_arc(v, u); }

    std::span<const vertex_t> out(vertex_t v) const { return out_.at(v); }
    std::span<const vertex_t> in(vertex_t v) const { return in_.at(v); }
    // Arc indices incident to v, in insertion order.
    std::span<const std::size_t> incident(vertex_t v) const { return incident_.at(v); }
    std::size_t degree(vertex_t v) const { return incident_.at(v).size(); }

    std::size_t arc_index(vertex_t u, vertex_t v) const {
        for (std::size_t e : incident_.at(u)) {
            if (arcs_[e].tail == u && arcs_[e].head == v) return e;
        }
        throw std::invalid_argument("no arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }

    vertex_t other_end(std::size_t e, vertex_t v) const {
        const Arc& a = arcs_.at(e);
        return a.tail == v ? a.head : a.tail;
    }

    void set_label(const std::string& name, vertex_t v) {
        check_vertex(v);
        labels_[name] = v;
    }
    std::optional<vertex_t> find_label(const std::string& name) const {
        auto it = labels_.find(name);
        if (it == labels_.end()) return std::nullopt;
        return it->second;
    }
    vertex_t label(const std::string& name) const {
        auto found = find_label(name);
        if (!found) throw std::invalid_argument("unknown label '" + name + "'");
        return *found;
    }
    const std::map<std::string, vertex_t>& labels() const { return labels_; }

    void check_vertex(vertex_t v) const {
        if (v >= out_.size()) {
            throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(out_.size()) + ")");
        }
    }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.arcs_ == b.arcs_ && a.out_.size() == b.out_.size() && a.labels_ == b.labels_;
    }

private:
    static std::uint64_t key(vertex_t u, vertex_t v) { return (std::uint64_t(u) << 32) | v; }

    std::vector<Arc> arcs_;
    std::vector<std::vector<vertex_t>> out_;
    std::vector<std::vector<vertex_t>> in_;
    std::vector<std::vector<std::size_t>> incident_;
    std::unordered_set<std::uint64_t> keys_;
    std::map<std::string, vertex_t> labels_;
};

// Kahn's algorithm; smallest available vertex first so the order is deterministic.
inline std::optional<std::vector<vertex_t>> topological_order(const Digraph& d) {
    std::vector<std::size_t> in_degree(d.vertex_count());
    for (const Arc& a : d.arcs()) ++in_degree[a.head];
    std::vector<vertex_t> ready;
    for (vertex_t v = 0; v < d.vertex_count(); ++v)
        if (in_degree[v] == 0) ready.push_back(v);
    std::reverse(ready.begin(), ready.end());
    std::vector<vertex_t> order;
    order.reserve(d.vertex_count());
    while (!ready.empty()) {
        vertex_t v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (vertex_t w : d.out(v)) {
            if (--in_degree[w] == 0) ready.push_back(w);
        }
    }
    if (order.size() != d.vertex_count()) return std::nullopt;
    return order;
}

inline bool is_acyclic(const Digraph& d) { return topological_order(d).has_value(); }

struct Edge {
    vertex_t u = 0;
    vertex_t v = 0;
    auto operator<=>(const Edge&) const = default;
};

// Underlying undirected edges, normalized u < v and sorted.
inline std::vector<Edge> underlying_graph(const Digraph& d) {
    std::vector<Edge> edges;
    edges.reserve(d.arc_count());
    for (const Arc& a : d.arcs()) edges.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head)});
    std::sort(edges.begin(), edges.end());
    return edges;
}

inline Digraph reverse(const Digraph& d) {
    Digraph r(d.vertex_count());
    for (const Arc& a : d.arcs()) r.add_arc(a.head, a.tail);
    for (const auto& [name, v] : d.labels()) r.set_label(name, v);
    return r;
}

struct InducedSubdigraph {
    Digraph graph;
    std::vector<vertex_t> original;  // new index -> vertex of the source digraph
};

inline InducedSubdigraph induced_subdigraph(const Digraph& d, std::span<const vertex_t> s) {
    std::vector<vertex_t> original(s.begin(), s.end());
    std::sort(original.begin(), original.end());
    original.erase(std::unique(original.begin(), original.end()), original.end());
    std::vector<std::int64_t> local(d.vertex_count(), -1);
    for (std::size_t i = 0; i < original.size(); ++i) {
        d.check_vertex(original[i]);
        local[original[i]] = static_cast<std::int64_t>(i);
    }
    InducedSubdigraph result{Digraph(original.size()), std::move(original)};
    for (const Arc& a : d.arcs()) {
        if (local[a.tail] >= 0 && local[a.head] >= 0) {
            result.graph.add_arc(static_cast<vertex_t>(local[a.tail]), static_cast<vertex_t>(local[a.head]));
        }
    }
    return result;
}

struct DisjointUnion {
    Digraph graph;
    vertex_t offset = 0;  // index of d2's vertex 0 in the union
};

inline DisjointUnion disjoint_union(const Digraph& d1, const Digraph& d2) {
    DisjointUnion result{d1, static_cast<vertex_t>(d1.vertex_count())};
    result.graph.add_vertices(d2.vertex_count());
    for (const Arc& a : d2.arcs()) result.graph.add_arc(a.tail + result.offset, a.head + result.offset);
    return result;
}

// Renames vertex v to perm[v]. Arc indices are preserved.
inline Digraph relabel(const Digraph& d, std::span<const vertex_t> perm) {
    if (perm.size() != d.vertex_count()) throw std::invalid_argument("relabel: permutation size mismatch");
    Digraph r(d.vertex_count());
    for (const Arc& a : d.arcs()) r.add_arc(perm[a.tail], perm[a.head]);
    for (const auto& [name, v] : d.labels()) r.set_label(name, perm[v]);
    return r;
}

struct Coloring {
    int k = 0;
    std::vector<int> color;

    bool operator==(const Coloring&) const = default;
};

inline void check_total(const Digraph& d, const Coloring& c) {
    if (c.k < 1) throw std::invalid_argument("coloring needs k >= 1");
    if (c.color.size() != d.vertex_count()) {
        throw std::invalid_argument("partial coloring: " + std::to_string(c.color.size()) + " colors for " +
                                    std::to_string(d.vertex_count()) + " vertices");
    }
    for (std::size_t v = 0; v < c.color.size(); ++v) {
        if (c.color[v] < 0 || c.color[v] >= c.k) {
            throw std::invalid_argument("color of vertex " + std::to_string(v) + " outside [0," + std::to_string(c.k) + ")");
        }
    }
}

// Proper 2-coloring of the underlying graph, if any.
inline std::optional<Coloring> bipartition(const Digraph& d) {
    Coloring c{2, std::vector<int>(d.vertex_count(), -1)};
    std::vector<vertex_t> stack;
    for (vertex_t s = 0; s < d.vertex_count(); ++s) {
        if (c.color[s] != -1) continue;
        c.color[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            vertex_t v = stack.back();
            stack.pop_back();
            for (std::size_t e : d.incident(v)) {
                vertex_t w = d.other_end(e, v);
                if (c.color[w] == -1) {
                    c.color[w] = 1 - c.color[v];
                    stack.push_back(w);
                } else if (c.color[w] == c.color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return c;
}

inline bool is_bipartite(const Digraph& d) { return bipartition(d).has_value(); }

// Connected components of the underlying graph; returns component id per vertex.
inline std::vector<std::size_t> weak_components(const Digraph& d, std::size_t* count = nullptr) {
    std::vector<std::size_t> comp(d.vertex_count(), SIZE_MAX);
    std::size_t next = 0;
    std::vector<vertex_t> stack;
    for (vertex_t s = 0; s < d.vertex_count(); ++s) {
        if (comp[s] != SIZE_MAX) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            vertex_t v = stack.back();
            stack.pop_back();
            for (std::size_t e : d.incident(v)) {
                vertex_t w = d.other_end(e, v);
                if (comp[w] == SIZE_MAX) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

}  // namespace pfc

#endif
