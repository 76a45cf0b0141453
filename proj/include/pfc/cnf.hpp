#ifndef PFC_CNF_HPP
#define PFC_CNF_HPP

#include "pfc/digraph.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace pfc {

struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;

    void add_clause(std::vector<int> clause) {
        if (clause.empty()) throw std::invalid_argument("empty clause");
        for (int lit : clause) {
            if (lit == 0) throw std::invalid_argument("clause mentions variable 0");
            if (std::abs(lit) > variable_count) throw std::invalid_argument("clause mentions variable beyond variable_count");
        }
        clauses.push_back(std::move(clause));
    }
    bool operator==(const CnfFormula&) const = default;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}
};

inline void write_dimacs(std::ostream& out, const CnfFormula& f) {
    out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

inline std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    write_dimacs(out, f);
    return out.str();
}

inline CnfFormula read_dimacs(std::istream& in, const std::string& source = "<dimacs>") {
    CnfFormula f;
    bool header = false;
    long declared = 0;
    std::vector<int> current;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line);
        std::string first;
        if (!(words >> first)) continue;
        if (first == "c") continue;
        if (first == "%") break;
        if (first == "p") {
            std::string kind;
            long vars = -1, count = -1;
            if (header) throw parse_error(source, line_no, "duplicate header");
            if (!(words >> kind >> vars >> count) || kind != "cnf" || vars < 0 || count < 0) {
                throw parse_error(source, line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
            }
            header = true;
            f.variable_count = static_cast<int>(vars);
            declared = count;
            continue;
        }
        if (!header) throw parse_error(source, line_no, "clause before 'p cnf' header");
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            char* end = nullptr;
            long lit = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw parse_error(source, line_no, "not an integer: '" + tok + "'");
            if (lit == 0) {
                if (current.empty()) throw parse_error(source, line_no, "empty clause");
                f.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::labs(lit) > f.variable_count) throw parse_error(source, line_no, "literal " + tok + " exceeds declared variables");
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!header) throw parse_error(source, line_no, "missing 'p cnf' header");
    if (!current.empty()) throw parse_error(source, line_no, "last clause not terminated by 0");
    if (static_cast<long>(f.clauses.size()) != declared) {
        throw parse_error(source, line_no, "header declares " + std::to_string(declared) + " clauses, found " + std::to_string(f.clauses.size()));
    }
    return f;
}

enum class SolveStatus { Satisfiable, Unsatisfiable, Unknown };

struct DpllResult {
    SolveStatus status = SolveStatus::Unknown;
    // values[v-1] is +1 true, -1 false, 0 unassigned (free in every extension).
    std::vector<signed char> values;
    std::uint64_t decisions = 0;

    explicit operator bool() const { return status == SolveStatus::Satisfiable; }
};

namespace detail {

// DPLL with counter-based unit propagation, pure literals, and independent
// treatment of variable components that share no open clause.
class Dpll {
public:
    Dpll(const CnfFormula& f, std::uint64_t budget) : f_(f), budget_(budget) {
        value_.assign(f.variable_count + 1, 0);
        occurs_.resize(2 * (f.variable_count + 1));
        true_count_.assign(f.clauses.size(), 0);
        false_count_.assign(f.clauses.size(), 0);
        for (std::size_t c = 0; c < f.clauses.size(); ++c) {
            for (int lit : f.clauses[c]) occurs_[slot(lit)].push_back(c);
        }
    }

    DpllResult run() {
        DpllResult r;
        bool ok = true;
        for (std::size_t c = 0; c < f_.clauses.size() && ok; ++c) {
            if (f_.clauses[c].size() == 1) ok = enqueue(f_.clauses[c][0]);
        }
        ok = ok && propagate();
        if (ok) {
            std::vector<int> all;
            for (int v = 1; v <= f_.variable_count; ++v) all.push_back(v);
            try {
                ok = solve(all);
            } catch (const budget_exceeded&) {
                r.status = SolveStatus::Unknown;
                r.decisions = decisions_;
                return r;
            }
        }
        r.decisions = decisions_;
        r.status = ok ? SolveStatus::Satisfiable : SolveStatus::Unsatisfiable;
        if (ok) r.values.assign(value_.begin() + 1, value_.end());
        return r;
    }

private:
    static std::size_t slot(int lit) { return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0); }
    bool is_true(int lit) const { return value_[std::abs(lit)] == (lit > 0 ? 1 : -1); }

    bool enqueue(int lit) {
        int v = std::abs(lit);
        signed char want = lit > 0 ? 1 : -1;
        if (value_[v] == want) return true;
        if (value_[v] == -want) return false;
        value_[v] = want;
        trail_.push_back(lit);
        return true;
    }

    bool propagate() {
        while (head_ < trail_.size()) {
            int lit = trail_[head_++];
            for (std::size_t c : occurs_[slot(lit)]) ++true_count_[c];
            bool ok = true;
            for (std::size_t c : occurs_[slot(-lit)]) {
                ++false_count_[c];
                if (!ok || true_count_[c] > 0) continue;
                std::size_t len = f_.clauses[c].size();
                if (false_count_[c] == len) ok = false;
                else if (false_count_[c] + 1 == len) {
                    for (int other : f_.clauses[c]) {
                        if (value_[std::abs(other)] == 0) {
                            ok = enqueue(other);
                            break;
                        }
                    }
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            int lit = trail_.back();
            trail_.pop_back();
            if (head_ > trail_.size()) {
                for (std::size_t c : occurs_[slot(lit)]) --true_count_[c];
                for (std::size_t c : occurs_[slot(-lit)]) --false_count_[c];
            }
            value_[std::abs(lit)] = 0;
        }
        head_ = std::min(head_, trail_.size());
    }

    bool open(std::size_t c) const { return true_count_[c] == 0; }

    bool in_open_clause(int v) const {
        for (int lit : {v, -v})
            for (std::size_t c : occurs_[slot(lit)])
                if (open(c)) return true;
        return false;
    }

    // Unassigned variables of `scope` that still occur in open clauses, grouped by shared open clauses.
    std::vector<std::vector<int>> components(const std::vector<int>& scope) {
        std::vector<std::vector<int>> out;
        std::vector<int> stack;
        mark_.resize(f_.variable_count + 1, 0);
        for (int s : scope) {
            if (value_[s] != 0 || mark_[s]) continue;
            if (!in_open_clause(s)) continue;
            std::vector<int> comp;
            mark_[s] = 1;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comp.push_back(v);
                for (int lit : {v, -v}) {
                    for (std::size_t c : occurs_[slot(lit)]) {
                        if (!open(c)) continue;
                        for (int other : f_.clauses[c]) {
                            int w = std::abs(other);
                            if (value_[w] == 0 && !mark_[w]) {
                                mark_[w] = 1;
                                stack.push_back(w);
                            }
                        }
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
        for (auto& comp : out)
            for (int v : comp) mark_[v] = 0;
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
        return out;
    }

    bool pure_literals(const std::vector<int>& comp) {
        for (int v : comp) {
            if (value_[v] != 0) continue;
            bool pos = false, neg = false;
            for (std::size_t c : occurs_[slot(v)]) pos = pos || open(c);
            for (std::size_t c : occurs_[slot(-v)]) neg = neg || open(c);
            if (pos != neg && !enqueue(pos ? v : -v)) return false;
        }
        return propagate();
    }

    bool solve(const std::vector<int>& scope) {
        for (const auto& comp : components(scope)) {
            if (!solve_component(comp)) return false;
        }
        return true;
    }

    bool solve_component(const std::vector<int>& comp) {
        std::size_t mark = trail_.size();
        if (!pure_literals(comp)) {
            undo_to(mark);
            return false;
        }
        int branch = 0;
        for (int v : comp) {
            if (value_[v] == 0 && in_open_clause(v)) {
                branch = v;
                break;
            }
        }
        if (branch == 0) return true;
        std::size_t before = trail_.size();
        for (int lit : {branch, -branch}) {
            ++decisions_;
            if (budget_ && decisions_ > budget_) throw budget_exceeded("dpll: decision budget exceeded");
            if (enqueue(lit) && propagate() && solve(comp)) return true;
            undo_to(before);
        }
        undo_to(mark);
        return false;
    }

    const CnfFormula& f_;
    std::uint64_t budget_;
    std::uint64_t decisions_ = 0;
    std::vector<signed char> value_;
    std::vector<std::vector<std::size_t>> occurs_;
    std::vector<std::uint32_t> true_count_;
    std::vector<std::uint32_t> false_count_;
    std::vector<int> trail_;
    std::size_t head_ = 0;
    std::vector<char> mark_;
};

}  // namespace detail

// Sound and complete for budget = 0 (unlimited). Branches on the lowest open variable, true first.
inline DpllResult dpll_solve(const CnfFormula& f, std::uint64_t budget = 0) {
    for (const auto& clause : f.clauses) {
        if (clause.empty()) return {SolveStatus::Unsatisfiable, {}, 0};
    }
    return detail::Dpll(f, budget).run();
}

inline bool satisfies(const CnfFormula& f, const std::vector<signed char>& values) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            int v = std::abs(lit);
            if (v <= static_cast<int>(values.size()) && values[v - 1] == (lit > 0 ? 1 : -1)) sat = true;
        }
        if (!sat) return false;
    }
    return true;
}

}  // namespace pfc

#endif
