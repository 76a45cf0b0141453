#ifndef PFC_TEST_SUPPORT_HPP
#define PFC_TEST_SUPPORT_HPP

#include "pfc/geometry.hpp"
#include "pfc/reductions.hpp"

#include <random>

namespace pfc::testing {

// Random points joined by non-crossing straight segments; arcs point from the lower to
// the higher index of a random priority, so the result is acyclic.
inline EmbeddedDigraph random_planar_dag(std::mt19937& rng, std::size_t n, double density = 0.6) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> pos(n);
    for (auto& p : pos) p = {unit(rng), unit(rng)};
    std::vector<std::size_t> rank(n);
    std::iota(rank.begin(), rank.end(), std::size_t(0));
    std::shuffle(rank.begin(), rank.end(), rng);
    std::vector<std::pair<vertex_t, vertex_t>> pairs;
    for (vertex_t u = 0; u < n; ++u)
        for (vertex_t v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::shuffle(pairs.begin(), pairs.end(), rng);
    Digraph d(n);
    std::vector<std::pair<vertex_t, vertex_t>> segments;
    for (auto [u, v] : pairs) {
        if (unit(rng) > density) continue;
        bool clear = true;
        for (auto [a, b] : segments) {
            if (a == u || a == v || b == u || b == v) continue;
            if (segment_crossing(pos[u], pos[v], pos[a], pos[b]) || segment_distance(pos[u], pos[v], pos[a], pos[b]) < 1e-9) clear = false;
        }
        for (vertex_t w = 0; w < n && clear; ++w)
            if (w != u && w != v && point_segment_distance(pos[w], pos[u], pos[v]) < 1e-6) clear = false;
        if (!clear) continue;
        segments.push_back({u, v});
        if (rank[u] < rank[v]) d.add_arc(u, v);
        else d.add_arc(v, u);
    }
    RotationEmbedding e = embedding_from_drawing(d, pos);
    return {std::move(d), std::move(e)};
}

// Any simple digraph without anti-parallel pairs; may contain directed cycles.
inline Digraph random_digraph(std::mt19937& rng, std::size_t n, double p) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Digraph d(n);
    for (vertex_t u = 0; u < n; ++u)
        for (vertex_t v = u + 1; v < n; ++v) {
            double r = unit(rng);
            if (r < p / 2) d.add_arc(u, v);
            else if (r < p) d.add_arc(v, u);
        }
    return d;
}

inline Sat3Formula random_sat3(std::mt19937& rng, int variables, int clauses) {
    Sat3Formula f{variables, {}};
    std::uniform_int_distribution<int> var(1, variables);
    for (int j = 0; j < clauses; ++j) {
        std::array<int, 3> c;
        for (int& lit : c) lit = var(rng) * (rng() % 2 ? 1 : -1);
        f.clauses.push_back(c);
    }
    return f;
}

// Pattern-free k-colorability by listing every coloring.
inline bool brute_colorable(const Digraph& d, const PathPattern& p, int k) {
    auto copies = brute_enumerate_induced(d, p);
    std::size_t n = d.vertex_count();
    std::vector<int> c(n, 0);
    while (true) {
        bool ok = true;
        for (const auto& copy : copies) {
            bool mono = true;
            for (vertex_t v : copy) mono = mono && c[v] == c[copy[0]];
            if (mono) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
        std::size_t i = 0;
        while (i < n && ++c[i] == k) c[i++] = 0;
        if (i == n) return false;
    }
}

// Planar graph as an embedded digraph with arcs from lower to higher index, embedded
// from explicit coordinates.
inline EmbeddedDigraph drawn_graph(const std::vector<Point>& pos, const std::vector<std::pair<vertex_t, vertex_t>>& edges) {
    Digraph d(pos.size());
    for (auto [u, v] : edges) d.add_arc(std::min(u, v), std::max(u, v));
    RotationEmbedding e = embedding_from_drawing(d, pos);
    return {std::move(d), std::move(e)};
}

// Wheel with a hub at the origin and `rim` vertices on the unit circle.
inline EmbeddedDigraph wheel(std::size_t rim) {
    std::vector<Point> pos{{0, 0}};
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < rim; ++i) {
        pos.push_back({std::cos(2 * pi * i / rim), std::sin(2 * pi * i / rim)});
        edges.push_back({0, static_cast<vertex_t>(i + 1)});
        edges.push_back({static_cast<vertex_t>(i + 1), static_cast<vertex_t>((i + 1) % rim + 1)});
    }
    return drawn_graph(pos, edges);
}

}  // namespace pfc::testing

#endif
