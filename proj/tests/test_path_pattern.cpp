#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace pfc;

namespace {

// Smallest adjacency matrix over all vertex orders; equal keys mean isomorphic digraphs.
std::string iso_key(const Digraph& d) {
    std::size_t n = d.vertex_count();
    std::vector<vertex_t> perm(n);
    std::iota(perm.begin(), perm.end(), vertex_t(0));
    std::string best;
    do {
        std::string key(n * n, '0');
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d.has_arc(perm[i], perm[j])) key[i * n + j] = '1';
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::size_t brute_class_count(std::size_t n) {
    std::set<std::string> keys;
    std::size_t len = n - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
        std::string w(len, '>');
        for (std::size_t i = 0; i < len; ++i)
            if (mask >> i & 1) w[i] = '<';
        keys.insert(iso_key(pattern_to_digraph(PathPattern(w))));
    }
    return keys.size();
}

}  // namespace

TEST_CASE("orientation counts for small paths") {
    CHECK(enumerate_orientations(1).size() == 1);
    CHECK(enumerate_orientations(2).size() == 1);
    CHECK(enumerate_orientations(3).size() == 3);
    CHECK(enumerate_orientations(4).size() == 4);
    CHECK(enumerate_orientations(5).size() == 10);
    CHECK_THROWS_AS(enumerate_orientations(0), std::invalid_argument);
}

TEST_CASE("orientation counts match isomorphism classes") {
    for (std::size_t n = 1; n <= 7; ++n) {
        INFO("n = " << n);
        CHECK(enumerate_orientations(n).size() == brute_class_count(n));
    }
}

TEST_CASE("listed orientations are pairwise non-isomorphic") {
    for (std::size_t n = 2; n <= 6; ++n) {
        std::set<std::string> keys;
        for (const auto& p : enumerate_orientations(n)) keys.insert(iso_key(pattern_to_digraph(p)));
        CHECK(keys.size() == enumerate_orientations(n).size());
    }
}

TEST_CASE("the four-vertex shapes") {
    std::vector<std::string> words;
    for (const auto& p : enumerate_orientations(4)) words.push_back(p.word());
    CHECK(words == std::vector<std::string>{">>>", ">><", "><>", "<>>"});
    std::vector<std::string> three;
    for (const auto& p : enumerate_orientations(3)) three.push_back(p.word());
    CHECK(three == std::vector<std::string>{">>", "><", "<>"});
}

TEST_CASE("canonical form is idempotent and invariant under traversal") {
    for (std::size_t n = 1; n <= 8; ++n) {
        std::size_t len = n - 1;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << len); ++mask) {
            std::string w(len, '>');
            for (std::size_t i = 0; i < len; ++i)
                if (mask >> i & 1) w[i] = '<';
            PathPattern p(w);
            CHECK(canonical(canonical(p)) == canonical(p));
            CHECK(canonical(traverse_backwards(p)) == canonical(p));
            CHECK(traverse_backwards(traverse_backwards(p)) == p);
            CHECK(reverse_pattern(reverse_pattern(p)) == p);
        }
    }
}

TEST_CASE("parsing") {
    CHECK(PathPattern::parse(".").vertex_count() == 1);
    CHECK(PathPattern::parse(">><").vertex_count() == 4);
    CHECK(PathPattern::parse(">><").str() == ">><");
    CHECK(PathPattern().str() == ".");
    CHECK_THROWS_AS(PathPattern::parse(">x<"), std::invalid_argument);
    CHECK_THROWS_AS(PathPattern::parse("->"), std::invalid_argument);
}

TEST_CASE("leaf removal") {
    CHECK(lrem(PathPattern(">><<")).word() == "><");
    CHECK(lrem(PathPattern("><")).vertex_count() == 1);
    CHECK_THROWS_AS(lrem(PathPattern(">")), std::invalid_argument);
}

TEST_CASE("pattern digraph is a path with the given arcs") {
    Digraph d = pattern_to_digraph(PathPattern("><<"));
    CHECK(d.vertex_count() == 4);
    CHECK(d.has_arc(0, 1));
    CHECK(d.has_arc(2, 1));
    CHECK(d.has_arc(3, 2));
    CHECK(TreePattern(PathPattern("><<")).leaf_count() == 2);
    CHECK(TreePattern(PathPattern::parse(".")).leaf_count() == 0);
}

TEST_CASE("tree patterns must be trees") {
    Digraph cyc(3);
    cyc.add_arc(0, 1);
    cyc.add_arc(1, 2);
    cyc.add_arc(0, 2);
    CHECK_THROWS_AS(TreePattern(cyc), std::invalid_argument);
    CHECK_THROWS_AS(TreePattern(Digraph(2)), std::invalid_argument);
    Digraph star(4);
    star.add_arc(0, 1);
    star.add_arc(0, 2);
    star.add_arc(3, 0);
    CHECK(TreePattern(star).leaf_count() == 3);
}

TEST_CASE("classification") {
    CHECK(classify_problem(PathPattern(">>"), 2) == Verdict::NPHard);
    CHECK(classify_problem(PathPattern(">"), 2) == Verdict::PolynomialBipartite);
    CHECK(classify_problem(PathPattern(">"), 3) == Verdict::NPHard);
    CHECK(classify_problem(PathPattern(">><"), 3) == Verdict::NPHard);
    for (const auto& p : enumerate_orientations(4)) CHECK(classify_problem(p, 4) == Verdict::AlwaysColorable);
    CHECK(classify_problem(PathPattern("><"), 1) == Verdict::TrivialSingleton);
    CHECK(classify_problem(PathPattern(), 3) == Verdict::TrivialSingleton);
    CHECK_THROWS_AS(classify_problem(PathPattern(">"), 0), std::invalid_argument);
    CHECK(describe(Verdict::NPHard, PathPattern(">>")) == "NP-hard (even for acyclic planar inputs)");
    CHECK(describe(Verdict::PolynomialBipartite, PathPattern(">")) == "polynomial: bipartiteness");
    CHECK(describe(Verdict::AlwaysColorable, PathPattern(">")) == "always colorable");
}
