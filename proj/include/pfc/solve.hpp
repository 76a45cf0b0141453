#ifndef PFC_SOLVE_HPP
#define PFC_SOLVE_HPP

#include "pfc/cdcl.hpp"
#include "pfc/induced.hpp"

#include <bit>

namespace pfc {

struct Verification {
    std::optional<InducedCopy> witness;
    bool ok() const { return !witness.has_value(); }
};

inline Verification verify_coloring(const Digraph& d, const Coloring& c, const PathPattern& p) {
    return {find_monochromatic(d, c, p)};
}

struct SolveResult {
    SolveStatus status = SolveStatus::Unknown;
    std::optional<Coloring> coloring;
    std::uint64_t nodes = 0;

    bool colorable() const { return status == SolveStatus::Satisfiable; }
};

enum class Engine { Auto, Backtracking, ClauseLearning };

struct SolveOptions {
    // Allowed colors per vertex as bit masks; empty means every color.
    std::vector<std::uint32_t> domains;
    std::uint64_t node_budget = 0;  // 0 = unlimited; nodes or conflicts depending on engine
    // Auto uses backtracking up to `backtracking_limit` vertices and clause learning beyond.
    Engine engine = Engine::Auto;
    std::size_t backtracking_limit = 256;
};

// Backtracking over vertex domains. Each induced copy keeps, per color, how many of
// its vertices cannot take that color and how many are pinned to it; a copy whose
// other vertices are all pinned to a color removes that color from the last one.
// Uncolored vertices that share no live copy are solved as independent components.
class ExactSolver {
public:
    ExactSolver(const Digraph& d, const PathPattern& p, int k) : ExactSolver(d, p, k, enumerate_induced(d, p)) {}

    ExactSolver(const Digraph& d, const PathPattern& p, int k, std::vector<InducedCopy> copies)
        : d_(d), p_(p), k_(k), copies_(std::move(copies)) {
        if (k < 1 || k > 32) throw std::invalid_argument("solver supports 1 <= k <= 32");
        full_ = k == 32 ? ~0u : ((1u << k) - 1);
        std::size_t n = d.vertex_count();
        std::vector<std::size_t> count(n + 1, 0);
        for (const auto& c : copies_)
            for (vertex_t v : c) ++count[v + 1];
        for (std::size_t v = 0; v < n; ++v) count[v + 1] += count[v];
        vc_start_ = count;
        vc_.assign(count[n], 0);
        for (std::size_t c = 0; c < copies_.size(); ++c)
            for (vertex_t v : copies_[c]) vc_[count[v]++] = static_cast<std::uint32_t>(c);
    }

    const std::vector<InducedCopy>& copies() const { return copies_; }

    SolveResult solve(const SolveOptions& options = {}) {
        std::size_t n = d_.vertex_count();
        budget_ = options.node_budget;
        nodes_ = 0;
        dom_.assign(n, full_);
        if (!options.domains.empty()) {
            if (options.domains.size() != n) throw std::invalid_argument("domains size mismatch");
            for (std::size_t v = 0; v < n; ++v) dom_[v] = options.domains[v] & full_;
        }
        missing_.assign(copies_.size() * k_, 0);
        pinned_.assign(copies_.size() * k_, 0);
        for (std::size_t c = 0; c < copies_.size(); ++c) {
            for (vertex_t v : copies_[c]) {
                for (int i = 0; i < k_; ++i) {
                    if (!(dom_[v] >> i & 1)) ++missing_[c * k_ + i];
                    if (dom_[v] == (1u << i)) ++pinned_[c * k_ + i];
                }
            }
        }
        trail_.clear();
        queued_.assign(copies_.size(), 0);
        queue_.clear();
        mark_.assign(n, 0);

        SolveResult r;
        bool ok = std::none_of(dom_.begin(), dom_.end(), [](std::uint32_t m) { return m == 0; });
        for (std::size_t c = 0; c < copies_.size() && ok; ++c) push(c);
        ok = ok && propagate();
        try {
            if (ok) {
                std::vector<vertex_t> all(n);
                std::iota(all.begin(), all.end(), vertex_t(0));
                ok = solve_scope(all);
            }
        } catch (const budget_exceeded&) {
            r.status = SolveStatus::Unknown;
            r.nodes = nodes_;
            return r;
        }
        r.nodes = nodes_;
        if (!ok) {
            r.status = SolveStatus::Unsatisfiable;
            return r;
        }
        Coloring col{k_, std::vector<int>(n)};
        for (std::size_t v = 0; v < n; ++v) col.color[v] = std::countr_zero(dom_[v]);
        if (!verify_coloring(d_, col, p_).ok()) throw std::logic_error("solver produced a coloring with a monochromatic copy");
        r.status = SolveStatus::Satisfiable;
        r.coloring = std::move(col);
        return r;
    }

private:
    bool fixed(vertex_t v) const { return std::has_single_bit(dom_[v]); }

    void push(std::size_t c) {
        if (!queued_[c]) {
            queued_[c] = 1;
            queue_.push_back(static_cast<std::uint32_t>(c));
        }
    }

    void account(vertex_t v, std::uint32_t from, std::uint32_t to, int sign) {
        for (std::size_t i = vc_start_[v]; i < vc_start_[v + 1]; ++i) {
            std::size_t base = std::size_t(vc_[i]) * k_;
            for (int col = 0; col < k_; ++col) {
                std::uint32_t bit = 1u << col;
                if ((from & bit) && !(to & bit)) missing_[base + col] += sign;
                pinned_[base + col] += sign * ((to == bit) - (from == bit));
            }
        }
    }

    bool restrict_to(vertex_t v, std::uint32_t mask) {
        std::uint32_t old = dom_[v];
        std::uint32_t now = old & mask;
        if (now == old) return true;
        trail_.push_back({v, old});
        dom_[v] = now;
        account(v, old, now, +1);
        if (now == 0) return false;
        for (std::size_t i = vc_start_[v]; i < vc_start_[v + 1]; ++i) push(vc_[i]);
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [v, old] = trail_.back();
            trail_.pop_back();
            account(v, old, dom_[v], -1);
            dom_[v] = old;
        }
    }

    bool propagate() {
        bool ok = true;
        std::size_t head = 0;
        while (ok && head < queue_.size()) {
            std::uint32_t c = queue_[head++];
            queued_[c] = 0;
            const auto& copy = copies_[c];
            std::size_t size = copy.size();
            for (int col = 0; col < k_ && ok; ++col) {
                std::size_t at = std::size_t(c) * k_ + col;
                if (missing_[at] != 0) continue;
                if (pinned_[at] == size) {
                    ok = false;
                } else if (pinned_[at] + 1 == size) {
                    for (vertex_t v : copy) {
                        if (dom_[v] != (1u << col)) {
                            ok = restrict_to(v, ~(1u << col));
                            break;
                        }
                    }
                }
            }
        }
        for (std::size_t i = head; i < queue_.size(); ++i) queued_[queue_[i]] = 0;
        queue_.clear();
        return ok;
    }

    bool live(std::size_t c) const {
        for (int col = 0; col < k_; ++col) {
            std::size_t at = c * k_ + col;
            if (missing_[at] == 0 && pinned_[at] + 1 < copies_[c].size()) return true;
        }
        return false;
    }

    // Groups the unfixed vertices of scope by shared live copies; smallest groups first.
    std::vector<std::vector<vertex_t>> components(const std::vector<vertex_t>& scope) {
        std::vector<std::vector<vertex_t>> out;
        std::vector<vertex_t> stack;
        for (vertex_t s : scope) {
            if (fixed(s) || mark_[s]) continue;
            std::vector<vertex_t> comp;
            mark_[s] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                vertex_t v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (std::size_t i = vc_start_[v]; i < vc_start_[v + 1]; ++i) {
                    std::size_t c = vc_[i];
                    if (!live(c)) continue;
                    for (vertex_t w : copies_[c]) {
                        if (!fixed(w) && !mark_[w]) {
                            mark_[w] = 1;
                            stack.push_back(w);
                        }
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        for (auto& comp : out)
            for (vertex_t v : comp) mark_[v] = 0;
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
        return out;
    }

    bool solve_scope(const std::vector<vertex_t>& scope) {
        for (const auto& comp : components(scope)) {
            if (!solve_component(comp)) return false;
        }
        return true;
    }

    bool solve_component(const std::vector<vertex_t>& comp) {
        auto first = std::find_if(comp.begin(), comp.end(), [&](vertex_t w) { return !fixed(w); });
        if (first == comp.end()) return solve_scope(comp);
        vertex_t v = *first;
        std::uint32_t options = dom_[v];
        std::size_t mark = trail_.size();
        for (int col = 0; col < k_; ++col) {
            if (!(options >> col & 1)) continue;
            ++nodes_;
            if (budget_ && nodes_ > budget_) throw budget_exceeded("solve_exact: node budget exceeded");
            if (restrict_to(v, 1u << col) && propagate() && solve_scope(comp)) return true;
            undo_to(mark);
        }
        return false;
    }

    const Digraph& d_;
    PathPattern p_;
    int k_;
    std::uint32_t full_ = 0;
    std::vector<InducedCopy> copies_;
    std::vector<std::size_t> vc_start_;
    std::vector<std::uint32_t> vc_;

    std::vector<std::uint32_t> dom_;
    std::vector<std::uint32_t> missing_;
    std::vector<std::uint32_t> pinned_;
    std::vector<std::pair<vertex_t, std::uint32_t>> trail_;
    std::vector<std::uint32_t> queue_;
    std::vector<char> queued_;
    std::vector<char> mark_;
    std::uint64_t budget_ = 0;
    std::uint64_t nodes_ = 0;
};

struct VarMap {
    int k = 0;
    std::size_t vertex_count = 0;
    int var(vertex_t v, int color) const { return static_cast<int>(v) * k + color + 1; }
};

struct Encoding {
    CnfFormula formula;
    VarMap map;
};

inline Encoding encode_cnf(const Digraph& d, const PathPattern& p, int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    Encoding e{{}, {k, d.vertex_count()}};
    e.formula.variable_count = static_cast<int>(d.vertex_count()) * k;
    for (vertex_t v = 0; v < d.vertex_count(); ++v) {
        std::vector<int> alo;
        for (int i = 0; i < k; ++i) alo.push_back(e.map.var(v, i));
        e.formula.add_clause(alo);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) e.formula.add_clause({-e.map.var(v, i), -e.map.var(v, j)});
    }
    for (const auto& copy : enumerate_induced(d, p)) {
        for (int i = 0; i < k; ++i) {
            std::vector<int> clause;
            for (vertex_t v : copy) clause.push_back(-e.map.var(v, i));
            e.formula.add_clause(std::move(clause));
        }
    }
    return e;
}

inline Coloring decode_coloring(const VarMap& map, const std::vector<signed char>& values) {
    Coloring c{map.k, std::vector<int>(map.vertex_count, 0)};
    for (vertex_t v = 0; v < map.vertex_count; ++v) {
        for (int i = 0; i < map.k; ++i) {
            if (values.at(map.var(v, i) - 1) == 1) {
                c.color[v] = i;
                break;
            }
        }
    }
    return c;
}

// Pins vertex colors by unit clauses, for solver-backed checks through the CNF route.
inline void add_domain_units(Encoding& e, const std::vector<std::uint32_t>& domains) {
    for (vertex_t v = 0; v < domains.size(); ++v)
        for (int i = 0; i < e.map.k; ++i)
            if (!(domains[v] >> i & 1)) e.formula.add_clause({-e.map.var(v, i)});
}

inline SolveResult solve_by_clause_learning(const Digraph& d, const PathPattern& p, int k, const SolveOptions& options) {
    Encoding e = encode_cnf(d, p, k);
    if (!options.domains.empty()) {
        if (options.domains.size() != d.vertex_count()) throw std::invalid_argument("domains size mismatch");
        add_domain_units(e, options.domains);
    }
    DpllResult res = cdcl_solve(e.formula, options.node_budget);
    SolveResult r;
    r.status = res.status;
    r.nodes = res.decisions;
    if (res.status == SolveStatus::Satisfiable) {
        r.coloring = decode_coloring(e.map, res.values);
        if (!verify_coloring(d, *r.coloring, p).ok()) throw std::logic_error("clause learning produced a coloring with a monochromatic copy");
    }
    return r;
}

inline SolveResult solve_exact(const Digraph& d, const PathPattern& p, int k, const SolveOptions& options = {}) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (options.domains.empty() && k == 2 && p.vertex_count() == 2) {
        SolveResult r;
        r.coloring = bipartition(d);
        r.status = r.coloring ? SolveStatus::Satisfiable : SolveStatus::Unsatisfiable;
        return r;
    }
    bool learn = options.engine == Engine::ClauseLearning ||
                 (options.engine == Engine::Auto && d.vertex_count() > options.backtracking_limit);
    if (learn) return solve_by_clause_learning(d, p, k, options);
    return ExactSolver(d, p, k).solve(options);
}

}  // namespace pfc

#endif
