#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sltl::sat {

using Var = int;

struct Lit {
    int x = -2;

    static Lit make(Var v, bool negated = false) { return Lit{2 * v + (negated ? 1 : 0)}; }
    Var var() const { return x >> 1; }
    bool negated() const { return x & 1; }
    Lit operator~() const { return Lit{x ^ 1}; }
    friend bool operator==(Lit a, Lit b) { return a.x == b.x; }
};

enum class Result { Sat, Unsat, Unknown };

/// Conflict-driven clause learning SAT solver: two watched literals, first-UIP
/// learning, VSIDS with phase saving, Luby restarts and solving under
/// assumptions. Clauses may be added between calls to `solve`.
class Solver {
public:
    Var new_var();
    int num_vars() const { return static_cast<int>(assigns_.size()); }

    /// Returns false once the clause database is known to be unsatisfiable.
    bool add_clause(std::span<const Lit> lits);
    bool add_clause(std::initializer_list<Lit> lits) {
        return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
    }

    /// `conflict_budget < 0` means unlimited; exhausting it yields Unknown.
    Result solve(std::span<const Lit> assumptions = {}, std::int64_t conflict_budget = -1);

    /// Value of `v` in the last satisfying assignment.
    bool model_value(Var v) const { return model_[v]; }
    bool model_value(Lit l) const { return model_[l.var()] != l.negated(); }

    std::int64_t conflicts() const { return total_conflicts_; }

private:
    struct Clause {
        std::vector<Lit> lits;
        bool learnt = false;
        bool deleted = false;
        double activity = 0;
    };
    struct Watcher {
        int cref;
        Lit blocker;
    };

    enum : signed char { kFalse = -1, kUndef = 0, kTrue = 1 };

    signed char value(Lit l) const {
        signed char v = assigns_[l.var()];
        return l.negated() ? static_cast<signed char>(-v) : v;
    }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    void enqueue(Lit l, int reason);
    int propagate();
    void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
    void cancel_until(int level);
    Lit pick_branch();
    void attach(int cref);
    int add_learnt(std::vector<Lit> lits);
    void reduce_db();
    bool locked(int cref) const;
    Result search(std::int64_t nof_conflicts, std::span<const Lit> assumptions,
                  std::int64_t budget_end);

    void bump_var(Var v);
    void bump_clause(Clause& c);
    void heap_insert(Var v);
    void heap_up(int i);
    void heap_down(int i);
    Var heap_pop();
    bool heap_less(Var a, Var b) const { return activity_[a] > activity_[b]; }

    bool ok_ = true;
    std::vector<Clause> clauses_;
    std::vector<int> learnts_;
    std::vector<std::vector<Watcher>> watches_; // indexed by literal code
    std::vector<signed char> assigns_;
    std::vector<char> polarity_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<char> seen_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<double> activity_;
    std::vector<Var> heap_;
    std::vector<int> heap_pos_;
    double var_inc_ = 1;
    double cla_inc_ = 1;
    double max_learnts_ = 0;
    std::int64_t total_conflicts_ = 0;
    std::vector<char> model_;
};

} // namespace sltl::sat
