#ifndef PFC_EMBEDDING_HPP
#define PFC_EMBEDDING_HPP

#include "pfc/digraph.hpp"

#include <set>

namespace pfc {

// Per vertex, the cyclic order of incident arc indices.
struct RotationEmbedding {
    std::vector<std::vector<std::size_t>> rotation;
    bool operator==(const RotationEmbedding&) const = default;
};

struct EmbeddedDigraph {
    Digraph graph;
    RotationEmbedding embedding;
};

class malformed_embedding : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A dart is an arc traversed in one direction.
struct Dart {
    std::size_t arc = 0;
    bool forward = true;  // tail -> head
    bool operator==(const Dart&) const = default;
};

namespace detail {

struct RotationIndex {
    std::vector<std::size_t> at_tail;
    std::vector<std::size_t> at_head;
};

inline RotationIndex index_rotation(const Digraph& d, const RotationEmbedding& e) {
    if (e.rotation.size() != d.vertex_count()) {
        throw malformed_embedding("rotation covers " + std::to_string(e.rotation.size()) + " vertices, digraph has " +
                                  std::to_string(d.vertex_count()));
    }
    RotationIndex idx{std::vector<std::size_t>(d.arc_count(), SIZE_MAX), std::vector<std::size_t>(d.arc_count(), SIZE_MAX)};
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        const auto& rot = e.rotation[v];
        for (std::size_t p = 0; p < rot.size(); ++p) {
            std::size_t arc = rot[p];
            if (arc >= d.arc_count()) throw malformed_embedding("rotation of vertex " + std::to_string(v) + " names unknown edge " + std::to_string(arc));
            const Arc& a = d.arc(arc);
            std::size_t* slot = nullptr;
            if (a.tail == v) slot = &idx.at_tail[arc];
            else if (a.head == v) slot = &idx.at_head[arc];
            else throw malformed_embedding("edge " + std::to_string(arc) + " is not incident to vertex " + std::to_string(v));
            if (*slot != SIZE_MAX) throw malformed_embedding("edge " + std::to_string(arc) + " duplicated at vertex " + std::to_string(v));
            *slot = p;
        }
    }
    for (std::size_t arc = 0; arc < d.arc_count(); ++arc) {
        if (idx.at_tail[arc] == SIZE_MAX || idx.at_head[arc] == SIZE_MAX) {
            throw malformed_embedding("edge " + std::to_string(arc) + " missing from a rotation");
        }
    }
    return idx;
}

inline vertex_t dart_head(const Digraph& d, Dart x) { return x.forward ? d.arc(x.arc).head : d.arc(x.arc).tail; }
inline vertex_t dart_tail(const Digraph& d, Dart x) { return x.forward ? d.arc(x.arc).tail : d.arc(x.arc).head; }

}  // namespace detail

// Face boundary walks. Successor of dart u->v leaves v along the edge after (u,v) in v's rotation.
inline std::vector<std::vector<Dart>> faces(const Digraph& d, const RotationEmbedding& e) {
    auto idx = detail::index_rotation(d, e);
    std::vector<char> seen(2 * d.arc_count(), 0);
    std::vector<std::vector<Dart>> result;
    for (std::size_t start = 0; start < 2 * d.arc_count(); ++start) {
        if (seen[start]) continue;
        std::vector<Dart> walk;
        std::size_t cur = start;
        while (!seen[cur]) {
            seen[cur] = 1;
            Dart x{cur / 2, cur % 2 == 0};
            walk.push_back(x);
            vertex_t v = detail::dart_head(d, x);
            std::size_t p = x.forward ? idx.at_head[x.arc] : idx.at_tail[x.arc];
            const auto& rot = e.rotation[v];
            std::size_t next_arc = rot[(p + 1) % rot.size()];
            bool forward = d.arc(next_arc).tail == v;
            cur = 2 * next_arc + (forward ? 0 : 1);
        }
        result.push_back(std::move(walk));
    }
    return result;
}

// Euler's formula per component: V - E + F = 2, an isolated vertex bounding one face.
// Throws malformed_embedding when the rotation is not a permutation of incident edges.
inline bool verify_embedding(const Digraph& d, const RotationEmbedding& e) {
    auto face_list = faces(d, e);
    std::size_t count = 0;
    auto comp = weak_components(d, &count);
    std::vector<long long> chi(count, 0);
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        chi[comp[v]] += 1;
        if (d.degree(v) == 0) chi[comp[v]] += 1;
    }
    for (const Arc& a : d.arcs()) chi[comp[a.tail]] -= 1;
    for (const auto& f : face_list) chi[comp[detail::dart_tail(d, f.front())]] += 1;
    return std::all_of(chi.begin(), chi.end(), [](long long x) { return x == 2; });
}

inline bool verify_embedding(const EmbeddedDigraph& g) { return verify_embedding(g.graph, g.embedding); }

inline RotationEmbedding relabel(const RotationEmbedding& e, std::span<const vertex_t> perm) {
    RotationEmbedding r{std::vector<std::vector<std::size_t>>(e.rotation.size())};
    for (std::size_t v = 0; v < e.rotation.size(); ++v) r.rotation[perm[v]] = e.rotation[v];
    return r;
}

inline EmbeddedDigraph relabel(const EmbeddedDigraph& g, std::span<const vertex_t> perm) {
    return {relabel(g.graph, perm), relabel(g.embedding, perm)};
}

inline EmbeddedDigraph reverse(const EmbeddedDigraph& g) { return {reverse(g.graph), g.embedding}; }

// Any rotation of a forest is planar; incidence order is used.
inline RotationEmbedding incidence_rotation(const Digraph& d) {
    RotationEmbedding e;
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        auto inc = d.incident(v);
        e.rotation.emplace_back(inc.begin(), inc.end());
    }
    return e;
}

// The face with the most distinct vertices; ties go to the first found.
inline std::vector<Dart> largest_face(const Digraph& d, const RotationEmbedding& e) {
    std::vector<Dart> best;
    std::size_t best_size = 0;
    for (auto& f : faces(d, e)) {
        std::set<vertex_t> vs;
        for (Dart x : f) vs.insert(detail::dart_head(d, x));
        if (vs.size() > best_size) {
            best_size = vs.size();
            best = f;
        }
    }
    return best;
}

// Arc of the first dart of `face` that enters v, i.e. a corner of v in that face.
inline std::optional<std::size_t> corner_in_face(const Digraph& d, const std::vector<Dart>& face, vertex_t v) {
    for (Dart x : face)
        if (detail::dart_head(d, x) == v) return x.arc;
    return std::nullopt;
}

namespace detail {

// Cyclic sequence starting right after `after` (or as stored when absent).
inline std::vector<std::size_t> cut_rotation(const std::vector<std::size_t>& rot, std::optional<std::size_t> after) {
    if (!after || rot.empty()) return rot;
    auto it = std::find(rot.begin(), rot.end(), *after);
    if (it == rot.end()) throw malformed_embedding("corner edge not incident to vertex");
    std::vector<std::size_t> out(it + 1, rot.end());
    out.insert(out.end(), rot.begin(), it + 1);
    return out;
}

inline void insert_after(std::vector<std::size_t>& rot, std::optional<std::size_t> after, std::span<const std::size_t> items) {
    auto pos = rot.end();
    if (after && !rot.empty()) {
        pos = std::find(rot.begin(), rot.end(), *after);
        if (pos == rot.end()) throw malformed_embedding("corner edge not incident to vertex");
        ++pos;
    }
    rot.insert(pos, items.begin(), items.end());
}

}  // namespace detail

// Glues `block` into `host` by identifying block_apex with host_vertex. The block's
// apex corner (after block_corner) is opened into the host corner after host_corner,
// which merges the two faces and keeps the embedding planar.
// Returns block vertex -> host vertex.
inline std::vector<vertex_t> attach_block(EmbeddedDigraph& host, vertex_t host_vertex, std::optional<std::size_t> host_corner,
                                          const EmbeddedDigraph& block, vertex_t block_apex,
                                          std::optional<std::size_t> block_corner) {
    host.graph.check_vertex(host_vertex);
    std::vector<vertex_t> map(block.graph.vertex_count());
    for (vertex_t v = 0; v < block.graph.vertex_count(); ++v) {
        if (v == block_apex) {
            map[v] = host_vertex;
        } else {
            map[v] = host.graph.add_vertex();
            host.embedding.rotation.emplace_back();
        }
    }
    std::size_t arc_offset = host.graph.arc_count();
    for (const Arc& a : block.graph.arcs()) host.graph.add_arc(map[a.tail], map[a.head]);
    for (vertex_t v = 0; v < block.graph.vertex_count(); ++v) {
        if (v == block_apex) continue;
        auto& rot = host.embedding.rotation[map[v]];
        for (std::size_t arc : block.embedding.rotation[v]) rot.push_back(arc + arc_offset);
    }
    auto apex_seq = detail::cut_rotation(block.embedding.rotation[block_apex], block_corner);
    for (auto& arc : apex_seq) arc += arc_offset;
    detail::insert_after(host.embedding.rotation[host_vertex], host_corner, apex_seq);
    for (const auto& [name, v] : block.graph.labels()) {
        if (!host.graph.find_label(name)) host.graph.set_label(name, map[v]);
    }
    return map;
}

// Adds one apex adjacent to every vertex of a connected embedded digraph whose
// vertices all lie on one face. Apex is the new last vertex; arcs point away from
// the apex when apex_is_tail.
inline EmbeddedDigraph cone(const EmbeddedDigraph& g, bool apex_is_tail) {
    EmbeddedDigraph r = g;
    vertex_t apex = r.graph.add_vertex();
    r.embedding.rotation.emplace_back();
    auto link = [&](vertex_t v) {
        return apex_is_tail ? r.graph.add_arc(apex, v) : r.graph.add_arc(v, apex);
    };
    if (g.graph.vertex_count() == 1) {
        std::size_t e = link(0);
        r.embedding.rotation[0].push_back(e);
        r.embedding.rotation[apex].push_back(e);
        return r;
    }
    auto face = largest_face(g.graph, g.embedding);
    std::vector<char> done(g.graph.vertex_count(), 0);
    std::vector<std::size_t> apex_rot;
    for (Dart x : face) {
        vertex_t v = detail::dart_head(g.graph, x);
        if (done[v]) continue;
        done[v] = 1;
        std::size_t e = link(v);
        detail::insert_after(r.embedding.rotation[v], x.arc, std::span<const std::size_t>(&e, 1));
        apex_rot.push_back(e);
    }
    if (std::find(done.begin(), done.end(), 0) != done.end()) {
        throw std::invalid_argument("cone: not all vertices lie on one face");
    }
    std::reverse(apex_rot.begin(), apex_rot.end());
    r.embedding.rotation[apex] = std::move(apex_rot);
    return r;
}

inline EmbeddedDigraph disjoint_union(const EmbeddedDigraph& a, const EmbeddedDigraph& b) {
    auto u = disjoint_union(a.graph, b.graph);
    EmbeddedDigraph r{std::move(u.graph), a.embedding};
    std::size_t arc_offset = a.graph.arc_count();
    for (const auto& rot : b.embedding.rotation) {
        std::vector<std::size_t> shifted;
        for (std::size_t arc : rot) shifted.push_back(arc + arc_offset);
        r.embedding.rotation.push_back(std::move(shifted));
    }
    return r;
}

}  // namespace pfc

#endif
