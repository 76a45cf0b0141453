#ifndef PFC_PATH_PATTERN_HPP
#define PFC_PATH_PATTERN_HPP

#include "pfc/digraph.hpp"

#include <string>
#include <string_view>

namespace pfc {

// Orientation of a path on n vertices as a word over {'>','<'}: letter i is the arc
// between path vertices i and i+1, '>' meaning i -> i+1. Ordering treats '>' < '<'.
class PathPattern {
public:
    PathPattern() = default;
    explicit PathPattern(std::string word) : word_(std::move(word)) {
        for (char ch : word_) {
            if (ch != '>' && ch != '<') throw std::invalid_argument("pattern letters must be '>' or '<', got '" + std::string(1, ch) + "'");
        }
    }

    // "." denotes the single-vertex pattern.
    static PathPattern parse(std::string_view text) {
        if (text == ".") return PathPattern();
        return PathPattern(std::string(text));
    }

    const std::string& word() const { return word_; }
    std::size_t vertex_count() const { return word_.size() + 1; }
    std::size_t edge_count() const { return word_.size(); }
    std::string str() const { return word_.empty() ? std::string(".") : word_; }
    bool forward(std::size_t i) const { return word_.at(i) == '>'; }

    bool operator==(const PathPattern&) const = default;
    friend bool operator<(const PathPattern& a, const PathPattern& b) {
        if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
        for (std::size_t i = 0; i < a.word_.size(); ++i) {
            if (a.word_[i] != b.word_[i]) return a.word_[i] == '>';
        }
        return false;
    }

private:
    std::string word_;
};

inline char flip_letter(char ch) { return ch == '>' ? '<' : '>'; }

// The same digraph read from the other end.
inline PathPattern traverse_backwards(const PathPattern& p) {
    std::string w(p.word().rbegin(), p.word().rend());
    for (char& ch : w) ch = flip_letter(ch);
    return PathPattern(std::move(w));
}

inline PathPattern canonical(const PathPattern& p) {
    PathPattern other = traverse_backwards(p);
    return other < p ? other : p;
}

// Isomorphic to itself read backwards, so each induced vertex set matches twice.
inline bool is_self_mirror(const PathPattern& p) { return traverse_backwards(p) == p; }

// Every arc reversed; not canonicalized.
inline PathPattern reverse_pattern(const PathPattern& p) {
    std::string w = p.word();
    for (char& ch : w) ch = flip_letter(ch);
    return PathPattern(std::move(w));
}

inline std::vector<PathPattern> enumerate_orientations(std::size_t n) {
    if (n == 0) throw std::invalid_argument("enumerate_orientations: n must be at least 1");
    std::size_t len = n - 1;
    if (len > 30) throw std::invalid_argument("enumerate_orientations: n too large");
    std::vector<PathPattern> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
        std::string w(len, '>');
        for (std::size_t i = 0; i < len; ++i)
            if (mask >> (len - 1 - i) & 1) w[i] = '<';
        PathPattern p(std::move(w));
        if (canonical(p) == p) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline PathPattern lrem(const PathPattern& p) {
    if (p.vertex_count() < 3) throw std::invalid_argument("lrem needs a pattern on at least 3 vertices");
    return PathPattern(p.word().substr(1, p.word().size() - 2));
}

inline Digraph pattern_to_digraph(const PathPattern& p) {
    Digraph d(p.vertex_count());
    for (std::size_t i = 0; i < p.edge_count(); ++i) {
        auto a = static_cast<vertex_t>(i);
        if (p.forward(i)) d.add_arc(a, a + 1);
        else d.add_arc(a + 1, a);
    }
    return d;
}

// Oriented tree used by the leaf lift.
class TreePattern {
public:
    explicit TreePattern(Digraph tree) : graph_(std::move(tree)) {
        std::size_t components = 0;
        weak_components(graph_, &components);
        if (graph_.vertex_count() == 0 || components != 1 || graph_.arc_count() + 1 != graph_.vertex_count()) {
            throw std::invalid_argument("TreePattern: underlying graph is not a tree");
        }
    }
    explicit TreePattern(const PathPattern& p) : TreePattern(pattern_to_digraph(p)) {}

    const Digraph& graph() const { return graph_; }
    std::size_t vertex_count() const { return graph_.vertex_count(); }
    std::size_t leaf_count() const {
        if (graph_.vertex_count() == 1) return 0;
        std::size_t n = 0;
        for (vertex_t v = 0; v < graph_.vertex_count(); ++v) n += graph_.degree(v) == 1;
        return n;
    }

private:
    Digraph graph_;
};

enum class Verdict { AlwaysColorable, PolynomialBipartite, TrivialSingleton, NPHard };

inline Verdict classify_problem(const PathPattern& p, int k) {
    if (k <= 0) throw std::invalid_argument("k must be at least 1");
    std::size_t n = p.vertex_count();
    if (n == 1 || k == 1) return Verdict::TrivialSingleton;
    if (k >= 4) return Verdict::AlwaysColorable;
    if (k == 2 && n == 2) return Verdict::PolynomialBipartite;
    return Verdict::NPHard;
}

inline std::string describe(Verdict v, const PathPattern& p) {
    switch (v) {
        case Verdict::AlwaysColorable: return "always colorable";
        case Verdict::PolynomialBipartite: return "polynomial: bipartiteness";
        case Verdict::NPHard: return "NP-hard (even for acyclic planar inputs)";
        case Verdict::TrivialSingleton:
            if (p.vertex_count() == 1) return "trivial: only the empty digraph is colorable";
            return "trivial: colorable iff the input is itself pattern-free";
    }
    return "";
}

}  // namespace pfc

#endif
