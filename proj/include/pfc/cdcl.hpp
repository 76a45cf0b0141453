#ifndef PFC_CDCL_HPP
#define PFC_CDCL_HPP

#include "pfc/cnf.hpp"

#include <cmath>
#include <queue>

namespace pfc {

namespace detail {

// Conflict-driven clause learning: two watched literals, first-UIP learning with
// clause minimization, activity-ordered decisions, phase saving, Luby restarts and
// periodic removal of inactive learnt clauses.
class Cdcl {
public:
    Cdcl(const CnfFormula& f, std::uint64_t budget) : budget_(budget) {
        n_ = f.variable_count;
        value_.assign(n_, -1);
        level_.assign(n_, 0);
        reason_.assign(n_, -1);
        activity_.assign(n_, 0.0);
        phase_.assign(n_, 0);
        seen_.assign(n_, 0);
        watches_.resize(2 * n_);
        for (int v = 0; v < n_; ++v) heap_.push({0.0, v});
        for (const auto& clause : f.clauses) {
            std::vector<int> lits;
            for (int lit : clause) lits.push_back(encode(lit));
            std::sort(lits.begin(), lits.end());
            lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
            bool tautology = false;
            for (std::size_t i = 0; i + 1 < lits.size(); ++i) tautology = tautology || (lits[i] ^ 1) == lits[i + 1];
            if (tautology) continue;
            if (lits.empty()) {
                empty_ = true;
            } else if (lits.size() == 1) {
                units_.push_back(lits[0]);
            } else {
                add_clause(std::move(lits), false);
            }
        }
    }

    DpllResult run() {
        DpllResult r;
        r.status = search();
        r.decisions = conflicts_;
        if (r.status == SolveStatus::Satisfiable) {
            r.values.resize(n_);
            for (int v = 0; v < n_; ++v) r.values[v] = value_[v] == 1 ? 1 : -1;
        }
        return r;
    }

private:
    struct Clause {
        std::vector<int> lits;
        bool learnt;
        double activity;
        bool removed;
    };

    static int encode(int lit) { return 2 * (std::abs(lit) - 1) + (lit < 0); }
    static int var(int lit) { return lit >> 1; }
    // 1 true, 0 false, -1 unassigned
    int lit_value(int lit) const {
        int v = value_[var(lit)];
        return v < 0 ? -1 : v ^ (lit & 1);
    }

    int add_clause(std::vector<int> lits, bool learnt) {
        int id = static_cast<int>(clauses_.size());
        watches_[lits[0]].push_back(id);
        watches_[lits[1]].push_back(id);
        clauses_.push_back({std::move(lits), learnt, 0.0, false});
        if (learnt) learnts_.push_back(id);
        return id;
    }

    void assign(int lit, int reason) {
        int v = var(lit);
        value_[v] = (lit & 1) ? 0 : 1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(lit);
    }

    int decision_level() const { return static_cast<int>(limits_.size()); }

    // Returns the index of a conflicting clause, or -1.
    int propagate() {
        while (head_ < trail_.size()) {
            int falsified = trail_[head_++] ^ 1;
            auto& ws = watches_[falsified];
            std::size_t keep = 0;
            int conflict = -1;
            for (std::size_t i = 0; i < ws.size(); ++i) {
                int cid = ws[i];
                Clause& c = clauses_[cid];
                if (c.removed) continue;
                if (c.lits[0] == falsified) std::swap(c.lits[0], c.lits[1]);
                if (lit_value(c.lits[0]) == 1) {
                    ws[keep++] = cid;
                    continue;
                }
                bool moved = false;
                for (std::size_t j = 2; j < c.lits.size(); ++j) {
                    if (lit_value(c.lits[j]) != 0) {
                        std::swap(c.lits[1], c.lits[j]);
                        watches_[c.lits[1]].push_back(cid);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[keep++] = cid;
                if (lit_value(c.lits[0]) == 0) {
                    conflict = cid;
                    for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                    break;
                }
                assign(c.lits[0], cid);
            }
            ws.resize(keep);
            if (conflict >= 0) return conflict;
        }
        return -1;
    }

    void bump_var(int v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) {
            for (double& a : activity_) a *= 1e-100;
            var_inc_ *= 1e-100;
            std::priority_queue<std::pair<double, int>> fresh;
            for (int w = 0; w < n_; ++w)
                if (value_[w] < 0) fresh.push({activity_[w], w});
            heap_ = std::move(fresh);
        }
        if (value_[v] < 0) heap_.push({activity_[v], v});
    }

    void bump_clause(Clause& c) {
        c.activity += clause_inc_;
        if (c.activity > 1e20) {
            for (int id : learnts_) clauses_[id].activity *= 1e-20;
            clause_inc_ *= 1e-20;
        }
    }

    bool redundant(int lit, int abstract_levels) {
        std::vector<int> stack{lit};
        std::vector<int> added;
        while (!stack.empty()) {
            int v = var(stack.back());
            stack.pop_back();
            const Clause& c = clauses_[reason_[v]];
            for (std::size_t i = 1; i < c.lits.size(); ++i) {
                int w = var(c.lits[i]);
                if (seen_[w] || level_[w] == 0) continue;
                if (reason_[w] >= 0 && ((1 << (level_[w] & 31)) & abstract_levels)) {
                    seen_[w] = 1;
                    added.push_back(w);
                    stack.push_back(c.lits[i]);
                } else {
                    for (int a : added) seen_[a] = 0;
                    return false;
                }
            }
        }
        toclear_.insert(toclear_.end(), added.begin(), added.end());
        return true;
    }

    // First-UIP learnt clause; out[0] is the asserting literal.
    std::pair<std::vector<int>, int> analyze(int conflict) {
        std::vector<int> learnt{-1};
        int pending = 0;
        int lit = -1;
        std::size_t index = trail_.size();
        do {
            Clause& c = clauses_[conflict];
            if (c.learnt) bump_clause(c);
            for (std::size_t j = (lit == -1 ? 0 : 1); j < c.lits.size(); ++j) {
                int q = c.lits[j];
                int v = var(q);
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bump_var(v);
                if (level_[v] >= decision_level()) ++pending;
                else learnt.push_back(q);
            }
            while (!seen_[var(trail_[--index])]) {
            }
            lit = trail_[index];
            conflict = reason_[var(lit)];
            seen_[var(lit)] = 0;
            --pending;
        } while (pending > 0);
        learnt[0] = lit ^ 1;

        int abstract_levels = 0;
        for (std::size_t i = 1; i < learnt.size(); ++i) abstract_levels |= 1 << (level_[var(learnt[i])] & 31);
        std::vector<int> kept{learnt[0]};
        toclear_.clear();
        for (std::size_t i = 1; i < learnt.size(); ++i) toclear_.push_back(var(learnt[i]));
        for (std::size_t i = 1; i < learnt.size(); ++i) {
            int v = var(learnt[i]);
            if (reason_[v] < 0 || !redundant(learnt[i], abstract_levels)) kept.push_back(learnt[i]);
        }
        for (int v : toclear_) seen_[v] = 0;

        int back = 0;
        if (kept.size() > 1) {
            std::size_t best = 1;
            for (std::size_t i = 2; i < kept.size(); ++i)
                if (level_[var(kept[i])] > level_[var(kept[best])]) best = i;
            std::swap(kept[1], kept[best]);
            back = level_[var(kept[1])];
        }
        return {kept, back};
    }

    void backtrack(int level) {
        if (decision_level() <= level) return;
        std::size_t stop = limits_[level];
        while (trail_.size() > stop) {
            int v = var(trail_.back());
            phase_[v] = value_[v];
            value_[v] = -1;
            reason_[v] = -1;
            heap_.push({activity_[v], v});
            trail_.pop_back();
        }
        head_ = std::min(head_, trail_.size());
        limits_.resize(level);
    }

    int pick_branch() {
        while (!heap_.empty()) {
            auto [a, v] = heap_.top();
            heap_.pop();
            if (value_[v] < 0 && a == activity_[v]) return v;
        }
        for (int v = 0; v < n_; ++v)
            if (value_[v] < 0) return v;
        return -1;
    }

    bool locked(int id) const {
        const Clause& c = clauses_[id];
        int v = var(c.lits[0]);
        return value_[v] >= 0 && reason_[v] == id;
    }

    void reduce_learnts() {
        std::sort(learnts_.begin(), learnts_.end(), [&](int a, int b) { return clauses_[a].activity < clauses_[b].activity; });
        std::vector<int> keep;
        std::size_t half = learnts_.size() / 2;
        for (std::size_t i = 0; i < learnts_.size(); ++i) {
            int id = learnts_[i];
            if (i < half && clauses_[id].lits.size() > 2 && !locked(id)) {
                clauses_[id].removed = true;
                clauses_[id].lits.shrink_to_fit();
            } else {
                keep.push_back(id);
            }
        }
        learnts_ = std::move(keep);
        for (auto& ws : watches_)
            ws.erase(std::remove_if(ws.begin(), ws.end(), [&](int id) { return clauses_[id].removed; }), ws.end());
    }

    static double luby(double y, int x) {
        int size = 1, seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) >> 1;
            --seq;
            x = x % size;
        }
        return std::pow(y, seq);
    }

    SolveStatus search() {
        if (empty_) return SolveStatus::Unsatisfiable;
        for (int lit : units_) {
            int val = lit_value(lit);
            if (val == 0) return SolveStatus::Unsatisfiable;
            if (val < 0) assign(lit, -1);
        }
        if (propagate() >= 0) return SolveStatus::Unsatisfiable;
        int restarts = 0;
        double max_learnts = std::max<double>(clauses_.size() / 3.0, 2000.0);
        while (true) {
            std::uint64_t limit = static_cast<std::uint64_t>(100 * luby(2, restarts++));
            std::uint64_t local = 0;
            while (true) {
                int conflict = propagate();
                if (conflict >= 0) {
                    ++conflicts_;
                    ++local;
                    if (decision_level() == 0) return SolveStatus::Unsatisfiable;
                    if (budget_ && conflicts_ > budget_) return SolveStatus::Unknown;
                    auto [learnt, back] = analyze(conflict);
                    backtrack(back);
                    if (learnt.size() == 1) {
                        assign(learnt[0], -1);
                    } else {
                        int id = add_clause(learnt, true);
                        bump_clause(clauses_[id]);
                        assign(learnt[0], id);
                    }
                    var_inc_ /= 0.95;
                    clause_inc_ /= 0.999;
                    continue;
                }
                if (local >= limit) {
                    backtrack(0);
                    break;
                }
                if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts) {
                    reduce_learnts();
                    max_learnts *= 1.1;
                }
                int v = pick_branch();
                if (v < 0) return SolveStatus::Satisfiable;
                limits_.push_back(trail_.size());
                assign(2 * v + (phase_[v] == 1 ? 0 : 1), -1);
            }
        }
    }

    int n_ = 0;
    std::uint64_t budget_;
    std::uint64_t conflicts_ = 0;
    bool empty_ = false;
    std::vector<int> units_;
    std::vector<Clause> clauses_;
    std::vector<int> learnts_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> value_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<int> phase_;
    std::vector<char> seen_;
    std::vector<int> toclear_;
    std::vector<int> trail_;
    std::vector<std::size_t> limits_;
    std::size_t head_ = 0;
    std::priority_queue<std::pair<double, int>> heap_;
    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;
};

}  // namespace detail

// Clause-learning search; `budget` caps conflicts (0 = unlimited). The decisions field
// of the result counts conflicts.
inline DpllResult cdcl_solve(const CnfFormula& f, std::uint64_t budget = 0) { return detail::Cdcl(f, budget).run(); }

}  // namespace pfc

#endif
