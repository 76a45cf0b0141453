#ifndef PFC_PLANARITY_HPP
#define PFC_PLANARITY_HPP

#include "pfc/embedding.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

namespace pfc {

// Planar rotation system of the underlying graph, or nullopt when it is not planar.
inline std::optional<RotationEmbedding> planar_embedding(const Digraph& d) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::property<boost::vertex_index_t, int>,
                                        boost::property<boost::edge_index_t, int>>;
    using EdgeDesc = boost::graph_traits<Graph>::edge_descriptor;
    Graph g(d.vertex_count());
    for (std::size_t e = 0; e < d.arc_count(); ++e) {
        auto [desc, ok] = boost::add_edge(d.arc(e).tail, d.arc(e).head, g);
        (void)ok;
        boost::put(boost::edge_index, g, desc, static_cast<int>(e));
    }
    std::vector<std::vector<EdgeDesc>> storage(d.vertex_count());
    auto emb = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, g));
    if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g, boost::boyer_myrvold_params::embedding = emb)) {
        return std::nullopt;
    }
    RotationEmbedding r;
    r.rotation.resize(d.vertex_count());
    for (vertex_t v = 0; v < d.vertex_count(); ++v)
        for (const EdgeDesc& e : storage[v]) r.rotation[v].push_back(static_cast<std::size_t>(boost::get(boost::edge_index, g, e)));
    return r;
}

inline bool is_planar(const Digraph& d) { return planar_embedding(d).has_value(); }

}  // namespace pfc

#endif
