#ifndef PFC_INDUCED_HPP
#define PFC_INDUCED_HPP

#include "pfc/path_pattern.hpp"

#include <cmath>
#include <functional>

namespace pfc {

// Vertices in pattern order: tuple[i] plays path vertex i.
using InducedCopy = std::vector<vertex_t>;

namespace detail {

inline bool keep_orientation(const PathPattern& p, const InducedCopy& copy) {
    if (!is_self_mirror(p)) return true;
    return !std::lexicographical_compare(copy.rbegin(), copy.rend(), copy.begin(), copy.end());
}

// Extends a partial path one vertex at a time. Each candidate must carry the right
// arc to the previous vertex and be non-adjacent to every earlier one.
template <class Filter, class Visit>
bool extend_copies(const Digraph& d, const PathPattern& p, InducedCopy& copy, std::vector<char>& used, const Filter& allowed,
                   const Visit& visit) {
    std::size_t i = copy.size();
    if (i == p.vertex_count()) {
        if (!keep_orientation(p, copy)) return false;
        return visit(copy);
    }
    vertex_t last = copy.back();
    auto candidates = p.forward(i - 1) ? d.out(last) : d.in(last);
    for (vertex_t w : candidates) {
        if (used[w] || !allowed(w)) continue;
        bool induced = true;
        for (std::size_t j = 0; j + 1 < i && induced; ++j) induced = !d.adjacent(copy[j], w);
        if (!induced) continue;
        copy.push_back(w);
        used[w] = 1;
        bool stop = extend_copies(d, p, copy, used, allowed, visit);
        used[w] = 0;
        copy.pop_back();
        if (stop) return true;
    }
    return false;
}

}  // namespace detail

// Calls visit(copy) for each induced copy whose vertices pass `allowed`; stops when visit returns true.
template <class Filter, class Visit>
void for_each_induced(const Digraph& d, const PathPattern& p, const Filter& allowed, const Visit& visit) {
    InducedCopy copy;
    std::vector<char> used(d.vertex_count(), 0);
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        if (!allowed(v)) continue;
        copy.assign(1, v);
        used[v] = 1;
        bool stop = p.vertex_count() == 1 ? visit(copy) : detail::extend_copies(d, p, copy, used, allowed, visit);
        used[v] = 0;
        if (stop) return;
    }
}

inline std::vector<InducedCopy> enumerate_induced(const Digraph& d, const PathPattern& p) {
    std::vector<InducedCopy> out;
    for_each_induced(d, p, [](vertex_t) { return true; }, [&](const InducedCopy& c) {
        out.push_back(c);
        return false;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// Independent oracle: every n-tuple is tested against the full pairwise adjacency pattern.
inline std::vector<InducedCopy> brute_enumerate_induced(const Digraph& d, const PathPattern& p, double budget = 1e8) {
    std::size_t n = p.vertex_count();
    std::size_t nv = d.vertex_count();
    std::vector<InducedCopy> out;
    if (n > nv) return out;
    if (std::pow(double(nv), double(n)) > budget) throw budget_exceeded("brute_enumerate_induced: tuple budget exceeded");
    Digraph shape = pattern_to_digraph(p);
    InducedCopy t(n, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (i == j) continue;
                if (t[i] == t[j]) ok = false;
                else ok = d.has_arc(t[i], t[j]) == shape.has_arc(vertex_t(i), vertex_t(j));
            }
        }
        if (ok && detail::keep_orientation(p, t)) out.push_back(t);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++t[pos] < nv) break;
            t[pos] = 0;
            if (pos == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
        }
    }
}

inline std::optional<InducedCopy> find_monochromatic(const Digraph& d, const Coloring& c, const PathPattern& p) {
    check_total(d, c);
    std::optional<InducedCopy> found;
    for (int color = 0; color < c.k && !found; ++color) {
        for_each_induced(d, p, [&](vertex_t v) { return c.color[v] == color; }, [&](const InducedCopy& copy) {
            found = copy;
            return true;
        });
    }
    return found;
}

}  // namespace pfc

#endif
