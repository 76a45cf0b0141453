#ifndef PFC_REDUCTIONS_HPP
#define PFC_REDUCTIONS_HPP

#include "pfc/gadgets.hpp"

#include <sstream>

namespace pfc {

struct Sat3Formula {
    int variable_count = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const {
        if (variable_count < 0) throw std::invalid_argument("negative variable count");
        for (const auto& c : clauses)
            for (int lit : c) {
                if (lit == 0) throw std::invalid_argument("literal 0 in clause");
                if (std::abs(lit) > variable_count) throw std::invalid_argument("literal beyond variable count");
            }
    }
};

inline Sat3Formula to_sat3(const CnfFormula& f, const std::string& source = "<cnf>") {
    Sat3Formula s{f.variable_count, {}};
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        if (f.clauses[i].size() != 3) {
            throw std::invalid_argument(source + ": clause " + std::to_string(i + 1) + " has " + std::to_string(f.clauses[i].size()) +
                                        " literals, 3-SAT needs exactly 3");
        }
        s.clauses.push_back({f.clauses[i][0], f.clauses[i][1], f.clauses[i][2]});
    }
    return s;
}

inline CnfFormula to_cnf(const Sat3Formula& f) {
    CnfFormula c;
    c.variable_count = f.variable_count;
    for (const auto& cl : f.clauses) c.add_clause({cl[0], cl[1], cl[2]});
    return c;
}

// assignment[i] is the value of variable i+1.
inline bool evaluate(const Sat3Formula& f, const std::vector<bool>& assignment) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int lit : c) sat = sat || (assignment.at(std::abs(lit) - 1) == (lit > 0));
        if (!sat) return false;
    }
    return true;
}

inline bool truth_table_satisfiable(const Sat3Formula& f) {
    if (f.variable_count > 24) throw std::invalid_argument("truth table too large");
    std::vector<bool> a(f.variable_count);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << f.variable_count); ++mask) {
        for (int i = 0; i < f.variable_count; ++i) a[i] = mask >> i & 1;
        if (evaluate(f, a)) return true;
    }
    return false;
}

struct GadgetRegion {
    std::string id;
    std::vector<vertex_t> vertices;  // gadget-owned vertices, ports excluded
};

struct ReductionCertificate {
    EmbeddedDigraph instance;
    PathPattern pattern;
    int k = 2;
    std::map<int, vertex_t> literal_vertices;  // +i -> x_i, -i -> not x_i
    std::optional<vertex_t> truth_vertex;      // t
    bool true_is_truth_color = true;           // literal true iff its color equals c(t)
    std::vector<GadgetRegion> gadget_regions;
    std::size_t strips = 0;
    std::size_t crossings = 0;

    // Color meaning "true" under coloring c.
    int truth_color(const Coloring& c) const {
        int ct = c.color.at(*truth_vertex);
        return true_is_truth_color ? ct : 1 - ct;
    }
};

inline std::vector<bool> decode_assignment(const ReductionCertificate& cert, const Coloring& c) {
    if (!cert.truth_vertex) throw std::invalid_argument("certificate has no truth vertex");
    int truth = cert.truth_color(c);
    int n = 0;
    for (const auto& [lit, v] : cert.literal_vertices) n = std::max(n, std::abs(lit));
    std::vector<bool> a(n);
    for (int i = 1; i <= n; ++i) a[i - 1] = c.color.at(cert.literal_vertices.at(i)) == truth;
    return a;
}

inline std::string reduction_report(const ReductionCertificate& cert) {
    std::map<std::string, std::size_t> counts;
    for (const auto& r : cert.gadget_regions) ++counts[r.id];
    std::ostringstream out;
    out << "pattern " << cert.pattern.str() << ", k=" << cert.k << "\n";
    out << "vertices " << cert.instance.graph.vertex_count() << ", arcs " << cert.instance.graph.arc_count() << "\n";
    out << "strips " << cert.strips << ", crossings replaced " << cert.crossings << "\n";
    for (const auto& [id, n] : counts) out << "  " << id << " x" << n << "\n";
    return out.str();
}

enum class SatVariant { P3, V3, L4 };

inline SatVariant parse_sat_variant(const std::string& s) {
    if (s == "p3" || s == "P3") return SatVariant::P3;
    if (s == "v3" || s == "V3") return SatVariant::V3;
    if (s == "l4" || s == "L4") return SatVariant::L4;
    throw std::invalid_argument("unknown variant '" + s + "' (expected p3, v3 or l4)");
}

// Two horizontal lines with anchor vertices; strips join an anchor on line 1 to one on
// line 2. Strips cross exactly when their endpoint orders interleave.
struct TwoLineLayout {
    std::vector<double> line1;  // x-coordinates, strictly increasing
    std::vector<double> line2;
    std::vector<std::pair<std::size_t, std::size_t>> strips;
};

inline bool strips_interleave(const TwoLineLayout& L, std::size_t i, std::size_t j) {
    auto [a1, b1] = L.strips[i];
    auto [a2, b2] = L.strips[j];
    return (a1 < a2 && b1 > b2) || (a1 > a2 && b1 < b2);
}

inline std::vector<std::pair<std::size_t, std::size_t>> strip_crossings(const TwoLineLayout& L) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < L.strips.size(); ++i)
        for (std::size_t j = i + 1; j < L.strips.size(); ++j)
            if (strips_interleave(L, i, j)) out.push_back({i, j});
    return out;
}

namespace detail {

struct Strip {
    vertex_t top;
    vertex_t bottom;
};

struct PlanarizeResult {
    std::vector<std::vector<vertex_t>> chain;  // per strip: top, crossover ports..., bottom
    std::size_t crossings = 0;
};

// Replaces every strip crossing by a crossover and every remaining strip piece by an
// extender. Anchors already exist in `b`; crossover ports are created here in
// top-to-bottom sweep order so that solvers meet them in the order values flow.
inline PlanarizeResult planarize(DrawnBuilder& b, const std::vector<Strip>& strips, const std::vector<std::pair<std::size_t, std::size_t>>& cross,
                                 const Gadget& crossover_gadget, const Gadget& extender, double width_factor,
                                 std::vector<GadgetRegion>& regions) {
    struct Crossing {
        std::size_t i, j;
        Point at;
        double ti, tj;
    };
    std::vector<Crossing> cs;
    for (auto [i, j] : cross) {
        Point a1 = b.pos[strips[i].top], b1 = b.pos[strips[i].bottom];
        Point a2 = b.pos[strips[j].top], b2 = b.pos[strips[j].bottom];
        auto hit = segment_crossing(a1, b1, a2, b2);
        if (!hit) throw std::logic_error("interleaving strips do not cross geometrically");
        cs.push_back({i, j, a1 + (b1 - a1) * hit->first, hit->first, hit->second});
    }
    // Crossover radius: a quarter of the clearance around every crossing.
    double clear = 1.0;
    for (std::size_t c = 0; c < cs.size(); ++c) {
        for (std::size_t s = 0; s < strips.size(); ++s) {
            if (s == cs[c].i || s == cs[c].j) continue;
            clear = std::min(clear, point_segment_distance(cs[c].at, b.pos[strips[s].top], b.pos[strips[s].bottom]));
        }
        for (std::size_t s : {cs[c].i, cs[c].j}) {
            clear = std::min(clear, norm(cs[c].at - b.pos[strips[s].top]));
            clear = std::min(clear, norm(cs[c].at - b.pos[strips[s].bottom]));
        }
        for (std::size_t o = 0; o < cs.size(); ++o)
            if (o != c) clear = std::min(clear, norm(cs[c].at - cs[o].at));
    }
    if (clear < 1e-9) throw std::logic_error("degenerate strip layout");
    double eps = clear / 4;
    double width = eps * width_factor;

    std::vector<std::size_t> order(cs.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return cs[a].at.y > cs[c].at.y; });

    struct Ports {
        vertex_t x, xp, y, yp;
    };
    std::vector<Ports> ports(cs.size());
    for (std::size_t c : order) {
        Point e1 = unit(b.pos[strips[cs[c].i].bottom] - b.pos[strips[cs[c].i].top]) * eps;
        Point e2 = unit(b.pos[strips[cs[c].j].top] - b.pos[strips[cs[c].j].bottom]) * eps;
        Point p = cs[c].at;
        ports[c].x = b.add(p - e1, 0);
        ports[c].y = b.add(p + e2, 0);
        ports[c].xp = b.add(p + e1, 0);
        ports[c].yp = b.add(p - e2, 0);
    }
    PlanarizeResult r;
    r.crossings = cs.size();
    std::vector<std::vector<std::pair<double, std::pair<vertex_t, vertex_t>>>> along(strips.size());
    for (std::size_t c = 0; c < cs.size(); ++c) {
        along[cs[c].i].push_back({cs[c].ti, {ports[c].x, ports[c].xp}});
        along[cs[c].j].push_back({cs[c].tj, {ports[c].y, ports[c].yp}});
    }
    for (std::size_t s = 0; s < strips.size(); ++s) {
        std::sort(along[s].begin(), along[s].end());
        std::vector<vertex_t> chain{strips[s].top};
        for (const auto& [t, pr] : along[s]) {
            chain.push_back(pr.first);
            chain.push_back(pr.second);
        }
        chain.push_back(strips[s].bottom);
        r.chain.push_back(chain);
    }
    for (std::size_t c : order) {
        Point p = cs[c].at;
        Point e1 = b.pos[ports[c].xp] - p;
        Point e2 = b.pos[ports[c].y] - p;
        std::size_t before = b.graph.vertex_count();
        b.place(crossover_gadget, {p, e1, e2}, {{"x", ports[c].x}, {"x'", ports[c].xp}, {"y", ports[c].y}, {"y'", ports[c].yp}}, 2);
        GadgetRegion reg{crossover_gadget.id, {}};
        for (std::size_t v = before; v < b.graph.vertex_count(); ++v) reg.vertices.push_back(static_cast<vertex_t>(v));
        regions.push_back(std::move(reg));
    }
    for (const auto& chain : r.chain) {
        for (std::size_t i = 0; i + 1 < chain.size(); i += 2) {
            std::size_t before = b.graph.vertex_count();
            b.place_between(extender, chain[i], chain[i + 1], width, +1, 2);
            GadgetRegion reg{extender.id, {}};
            for (std::size_t v = before; v < b.graph.vertex_count(); ++v) reg.vertices.push_back(static_cast<vertex_t>(v));
            regions.push_back(std::move(reg));
        }
    }
    return r;
}

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::vector<GadgetRegion> map_regions(const std::vector<GadgetRegion>& regions, const std::vector<vertex_t>& perm) {
    std::vector<GadgetRegion> out;
    for (const auto& r : regions) {
        GadgetRegion m{r.id, {}};
        for (vertex_t v : r.vertices) m.vertices.push_back(perm[v]);
        std::sort(m.vertices.begin(), m.vertices.end());
        out.push_back(std::move(m));
    }
    return out;
}

// Smallest positive gap between distinct crossing points along any strip; guards
// against three strips meeting in one point.
inline double crossing_separation(const std::vector<Point>& top, const std::vector<Point>& bottom,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& cross) {
    std::vector<std::vector<double>> along(top.size());
    for (auto [i, j] : cross) {
        auto hit = segment_crossing(top[i], bottom[i], top[j], bottom[j]);
        if (!hit) return 0;
        along[i].push_back(hit->first);
        along[j].push_back(hit->second);
    }
    double best = 1;
    for (auto& a : along) {
        std::sort(a.begin(), a.end());
        for (std::size_t i = 0; i + 1 < a.size(); ++i) best = std::min(best, a[i + 1] - a[i]);
    }
    return best;
}

}  // namespace detail

// Compiles a 3-SAT formula into a planar acyclic digraph that is pattern-free
// 2-colorable iff the formula is satisfiable.
inline ReductionCertificate sat3_to_2col(const Sat3Formula& f, SatVariant variant) {
    f.validate();
    bool l4 = variant == SatVariant::L4;
    std::string tag = variant == SatVariant::P3 ? "p3" : variant == SatVariant::V3 ? "v3" : "l4";
    Gadget neg = build_gadget("negator_" + tag);
    Gadget ext = build_gadget("extender_" + tag);
    Gadget cross = build_gadget("crossover_" + tag);
    std::optional<Gadget> clause;
    if (!l4) clause = build_gadget("clause_" + tag);

    int n = f.variable_count;
    std::size_t m = f.clauses.size();
    TwoLineLayout layout;
    layout.line1.push_back(0);
    for (int i = 1; i <= n; ++i) {
        layout.line1.push_back(2 * i - 1);
        layout.line1.push_back(2 * i);
    }
    auto literal_anchor = [](int lit) { return static_cast<std::size_t>(lit > 0 ? 2 * lit - 1 : -2 * lit); };
    for (std::size_t j = 0; j < m; ++j) {
        // Evenly spaced anchors on both lines make some strip triples concurrent; a hashed
        // jitter on line 2 breaks those coincidences.
        for (std::size_t slot = 0; slot < 4; ++slot) {
            std::uint64_t h = detail::mix64(5 * j + slot);
            layout.line2.push_back(double(5 * j + slot) + 0.3 * double(h >> 11) / double(std::uint64_t(1) << 53));
        }
        std::size_t base = 4 * j;
        if (l4) {
            // Line 2 order: x4, x3, x2, x1 with x4 fed by t.
            layout.strips.push_back({0, base});
            for (std::size_t s = 0; s < 3; ++s) layout.strips.push_back({literal_anchor(f.clauses[j][2 - s]), base + 1 + s});
        } else {
            layout.strips.push_back({0, base});
            for (std::size_t s = 0; s < 3; ++s) layout.strips.push_back({literal_anchor(f.clauses[j][s]), base + 1 + s});
        }
    }
    auto crossings = strip_crossings(layout);

    // Pick a line-2 scale that keeps crossing points apart along every strip.
    double span1 = std::max(1.0, layout.line1.back());
    double height = std::max(2.0, span1 / 2);
    double scale = 1.0;
    const double scales[] = {1.3247179572, 1.2207440846, 1.4655712319, 1.1673039783, 1.3802775691, 1.5701473121};
    double best_sep = -1;
    for (double s : scales) {
        double sc = s * span1 / std::max(1.0, 5.0 * double(m));
        std::vector<Point> top, bottom;
        for (auto [a, b] : layout.strips) {
            top.push_back({layout.line1[a], 0});
            bottom.push_back({layout.line2[b] * sc, -height});
        }
        double sep = detail::crossing_separation(top, bottom, crossings);
        if (sep > best_sep) {
            best_sep = sep;
            scale = sc;
        }
        if (sep > 1e-4) break;
    }
    if (best_sep <= 1e-9) throw std::logic_error("sat3_to_2col: could not find a non-degenerate layout");

    double width = 0.05;
    for (int attempt = 0; attempt < 10; ++attempt, width /= 4) {
        DrawnBuilder b;
        ReductionCertificate cert;
        cert.pattern = neg.contract.pattern;
        cert.k = 2;
        cert.true_is_truth_color = !l4;
        std::vector<vertex_t> line1;
        line1.push_back(b.add({0, 0}, 0));
        b.graph.set_label("t", line1[0]);
        for (int i = 1; i <= n; ++i) {
            line1.push_back(b.add({layout.line1[2 * i - 1], 0}, 0));
            b.graph.set_label("x" + std::to_string(i), line1.back());
            line1.push_back(b.add({layout.line1[2 * i], 0}, 0));
            b.graph.set_label("~x" + std::to_string(i), line1.back());
        }
        std::vector<detail::Strip> strips;
        std::vector<GadgetRegion> regions;
        // Line-2 anchors sit one level below the skeleton so they follow every crossover port.
        std::vector<vertex_t> line2;
        for (double x : layout.line2) line2.push_back(b.add({x * scale, -height}, 1));
        for (auto [a, s] : layout.strips) strips.push_back({line1[a], line2[s]});
        auto planar = detail::planarize(b, strips, crossings, cross, ext, width, regions);
        cert.crossings = planar.crossings;
        cert.strips = layout.strips.size();

        for (int i = 1; i <= n; ++i) {
            std::size_t before = b.graph.vertex_count();
            b.place_between(neg, line1[2 * i - 1], line1[2 * i], 0.4, +1, 2);
            GadgetRegion reg{neg.id, {}};
            for (std::size_t v = before; v < b.graph.vertex_count(); ++v) reg.vertices.push_back(static_cast<vertex_t>(v));
            regions.push_back(std::move(reg));
        }
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t base = 4 * j;
            std::string c = "c" + std::to_string(j + 1) + ".";
            if (l4) {
                vertex_t x4 = line2[base], x3 = line2[base + 1], x2 = line2[base + 2], x1 = line2[base + 3];
                b.arc(x1, x2);
                b.arc(x2, x3);
                b.arc(x4, x3);
                b.graph.set_label(c + "x1", x1);
                b.graph.set_label(c + "x2", x2);
                b.graph.set_label(c + "x3", x3);
                b.graph.set_label(c + "x4", x4);
            } else {
                std::size_t before = b.graph.vertex_count();
                Point o = b.pos[line2[base]];
                b.place(*clause, {o, {scale, 0}, {0, 0.3 * scale}},
                        {{"t'", line2[base]}, {"x'", line2[base + 1]}, {"y'", line2[base + 2]}, {"z'", line2[base + 3]}}, 2);
                GadgetRegion reg{clause->id, {}};
                for (std::size_t v = before; v < b.graph.vertex_count(); ++v) reg.vertices.push_back(static_cast<vertex_t>(v));
                regions.push_back(std::move(reg));
                b.graph.set_label(c + "t'", line2[base]);
                b.graph.set_label(c + "x'", line2[base + 1]);
                b.graph.set_label(c + "y'", line2[base + 2]);
                b.graph.set_label(c + "z'", line2[base + 3]);
            }
        }
        DrawnBuilder::Result r;
        try {
            r = b.finish();
        } catch (const std::invalid_argument&) {
            continue;
        }
        cert.instance = {std::move(r.graph), std::move(r.embedding)};
        if (!verify_embedding(cert.instance)) continue;
        cert.gadget_regions = detail::map_regions(regions, r.perm);
        cert.truth_vertex = r.perm[line1[0]];
        for (int i = 1; i <= n; ++i) {
            cert.literal_vertices[i] = r.perm[line1[2 * i - 1]];
            cert.literal_vertices[-i] = r.perm[line1[2 * i]];
        }
        if (!is_acyclic(cert.instance.graph)) throw std::logic_error("sat3_to_2col produced a directed cycle");
        return cert;
    }
    throw std::logic_error("sat3_to_2col: could not produce a planar drawing");
}

inline ReductionCertificate reverse(const ReductionCertificate& c) {
    ReductionCertificate r = c;
    r.instance = reverse(c.instance);
    r.pattern = reverse_pattern(c.pattern);
    return r;
}

namespace detail {

// The gadget as a plain embedded digraph; port labels are dropped so that attached
// copies do not leak names into the host.
inline EmbeddedDigraph as_embedded(const Gadget& g) {
    Digraph d(g.digraph.vertex_count());
    for (const Arc& a : g.digraph.arcs()) d.add_arc(a.tail, a.head);
    return {std::move(d), g.embedding};
}

inline EmbeddedDigraph attach_everywhere(const EmbeddedDigraph& d, const std::vector<EmbeddedDigraph>& blocks) {
    EmbeddedDigraph out = d;
    for (vertex_t v = 0; v < d.graph.vertex_count(); ++v) {
        for (const auto& block : blocks) {
            vertex_t apex = static_cast<vertex_t>(block.graph.vertex_count() - 1);
            attach_block(out, v, std::nullopt, block, apex, std::nullopt);
        }
    }
    return out;
}

}  // namespace detail

// Per vertex v: l copies of t with all arcs v -> copy and l copies with copy -> v,
// where l is the number of leaves of t.
inline EmbeddedDigraph lift_leaf_2col(const EmbeddedDigraph& d, const TreePattern& t) {
    std::size_t l = t.leaf_count();
    if (l < 1) throw std::invalid_argument("lift_leaf_2col needs a tree with at least one leaf");
    EmbeddedDigraph tree{t.graph(), incidence_rotation(t.graph())};
    EmbeddedDigraph out_cone = cone(tree, true);
    EmbeddedDigraph in_cone = cone(tree, false);
    std::vector<EmbeddedDigraph> blocks(l, out_cone);
    blocks.insert(blocks.end(), l, in_cone);
    return detail::attach_everywhere(d, blocks);
}

// Per vertex v: one tower with arcs v -> tower and one with tower -> v.
inline EmbeddedDigraph lift_leaf_3col(const EmbeddedDigraph& d, const PathPattern& p) {
    if (p.vertex_count() < 4) throw std::invalid_argument("lift_leaf_3col needs a pattern on at least 4 vertices");
    Gadget tower = build_tower(p);
    EmbeddedDigraph t = detail::as_embedded(tower);
    return detail::attach_everywhere(d, {cone(t, true), cone(t, false)});
}

// Per vertex v: a copy of p4 with arcs v -> copy.
inline EmbeddedDigraph pendant_lift(const EmbeddedDigraph& d, const PathPattern& p4) {
    PathPattern c = canonical(p4);
    if (c.word() != ">>>" && c.word() != "><>") throw std::invalid_argument("pendant_lift expects the P4 or N4 orientation");
    Digraph path = pattern_to_digraph(p4);
    EmbeddedDigraph copy{path, incidence_rotation(path)};
    return detail::attach_everywhere(d, {cone(copy, true)});
}

enum class ColorVariant { V3, P3, Edge };

inline ColorVariant parse_color_variant(const std::string& s) {
    if (s == "v3" || s == "V3") return ColorVariant::V3;
    if (s == "p3" || s == "P3") return ColorVariant::P3;
    if (s == "edge") return ColorVariant::Edge;
    throw std::invalid_argument("unknown variant '" + s + "' (expected v3, p3 or edge)");
}

// Orients each edge from lower to higher index and hangs one tower below every vertex
// with arcs tower -> v. The V3 variant uses the middle-sink orientation "><".
inline ReductionCertificate planar3col_to_3col(const EmbeddedDigraph& g, ColorVariant variant) {
    if (!verify_embedding(g)) throw std::invalid_argument("planar3col_to_3col: embedding is not planar");
    Digraph oriented(g.graph.vertex_count());
    for (const Arc& a : g.graph.arcs()) oriented.add_arc(std::min(a.tail, a.head), std::max(a.tail, a.head));
    for (vertex_t v = 0; v < oriented.vertex_count(); ++v) oriented.set_label("g" + std::to_string(v), v);
    ReductionCertificate cert;
    cert.k = 3;
    cert.instance = {oriented, g.embedding};
    if (variant == ColorVariant::Edge) {
        cert.pattern = PathPattern(">");
        return cert;
    }
    cert.pattern = variant == ColorVariant::V3 ? v3_pattern() : p3_pattern();
    Gadget tower = build_tower(cert.pattern);
    EmbeddedDigraph block = cone(detail::as_embedded(tower), false);
    vertex_t apex = static_cast<vertex_t>(block.graph.vertex_count() - 1);
    for (vertex_t v = 0; v < oriented.vertex_count(); ++v) {
        auto map = attach_block(cert.instance, v, std::nullopt, block, apex, std::nullopt);
        GadgetRegion reg{"tower", {}};
        for (vertex_t w = 0; w < apex; ++w) reg.vertices.push_back(map[w]);
        cert.gadget_regions.push_back(std::move(reg));
    }
    return cert;
}

struct ChainStep {
    PathPattern pattern;
    std::string operation;  // how this pattern's instance is produced
};

inline std::vector<ChainStep> reduction_chain(const PathPattern& p, int k) {
    if ((k != 2 && k != 3) || classify_problem(p, k) != Verdict::NPHard) {
        throw std::invalid_argument("reduction_chain: (" + p.str() + ", k=" + std::to_string(k) + ") is not in the hard regime");
    }
    std::vector<ChainStep> steps;
    PathPattern cur = canonical(p);
    std::size_t base_max = k == 2 ? 4 : 3;
    while (cur.vertex_count() > base_max) {
        steps.push_back({cur, k == 2 ? "lift_leaf_2col" : "lift_leaf_3col"});
        cur = canonical(lrem(cur));
    }
    const std::string& w = cur.word();
    std::string base;
    if (k == 2) {
        if (w == ">>") base = "sat3_to_2col p3";
        else if (w == "><") base = "sat3_to_2col v3";
        else if (w == "<>") base = "reverse sat3_to_2col v3";
        else if (w == ">>>") base = "pendant_lift sat3_to_2col p3";
        else if (w == "><>") base = "pendant_lift sat3_to_2col v3";
        else if (w == ">><") base = "sat3_to_2col l4";
        else base = "reverse sat3_to_2col l4";
    } else {
        if (w == ">") base = "planar3col_to_3col edge";
        else if (w == ">>") base = "planar3col_to_3col p3";
        else if (w == "><") base = "planar3col_to_3col v3";
        else base = "reverse planar3col_to_3col v3";
    }
    steps.push_back({cur, base});
    return steps;
}

namespace detail {

inline ReductionCertificate lift_along(ReductionCertificate cert, const std::vector<ChainStep>& steps) {
    for (std::size_t i = steps.size() - 1; i-- > 0;) {
        const ChainStep& s = steps[i];
        if (s.operation == "lift_leaf_2col") cert.instance = lift_leaf_2col(cert.instance, TreePattern(s.pattern));
        else cert.instance = lift_leaf_3col(cert.instance, s.pattern);
        cert.pattern = s.pattern;
        cert.gadget_regions.clear();
    }
    return cert;
}

}  // namespace detail

// Theorem-1 pipeline: a formula becomes an instance for pattern p with k = 2.
inline ReductionCertificate chain_from_sat3(const PathPattern& p, const Sat3Formula& f) {
    auto steps = reduction_chain(p, 2);
    const std::string& w = steps.back().pattern.word();
    ReductionCertificate base;
    if (w == ">>") base = sat3_to_2col(f, SatVariant::P3);
    else if (w == "><") base = sat3_to_2col(f, SatVariant::V3);
    else if (w == "<>") base = reverse(sat3_to_2col(f, SatVariant::V3));
    else if (w == ">>>" || w == "><>") {
        base = sat3_to_2col(f, w == ">>>" ? SatVariant::P3 : SatVariant::V3);
        base.instance = pendant_lift(base.instance, steps.back().pattern);
        base.pattern = steps.back().pattern;
        base.gadget_regions.clear();
    } else if (w == ">><") base = sat3_to_2col(f, SatVariant::L4);
    else base = reverse(sat3_to_2col(f, SatVariant::L4));
    base.pattern = steps.back().pattern;
    return detail::lift_along(std::move(base), steps);
}

// Theorem-2 pipeline: a planar graph becomes an instance for pattern p with k = 3.
inline ReductionCertificate chain_from_planar3col(const PathPattern& p, const EmbeddedDigraph& g) {
    auto steps = reduction_chain(p, 3);
    const std::string& w = steps.back().pattern.word();
    ReductionCertificate base;
    if (w == ">") base = planar3col_to_3col(g, ColorVariant::Edge);
    else if (w == ">>") base = planar3col_to_3col(g, ColorVariant::P3);
    else if (w == "><") base = planar3col_to_3col(g, ColorVariant::V3);
    else base = reverse(planar3col_to_3col(g, ColorVariant::V3));
    base.pattern = steps.back().pattern;
    return detail::lift_along(std::move(base), steps);
}

}  // namespace pfc

#endif
