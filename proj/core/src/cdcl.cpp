#include "cdcl.hpp"

#include <algorithm>
#include <cassert>

namespace sltl::sat {

namespace {

double luby(double y, int x) {
    int size = 1;
    int seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i)
        r *= y;
    return r;
}

constexpr double kVarDecay = 0.95;
constexpr double kClaDecay = 0.999;
constexpr int kRestartBase = 100;

} // namespace

Var Solver::new_var() {
    Var v = num_vars();
    assigns_.push_back(kUndef);
    polarity_.push_back(1); // prefer false
    level_.push_back(0);
    reason_.push_back(-1);
    seen_.push_back(0);
    activity_.push_back(0);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v;
}

bool Solver::add_clause(std::span<const Lit> in) {
    if (!ok_)
        return false;
    cancel_until(0);
    std::vector<Lit> lits(in.begin(), in.end());
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return a.x < b.x; });
    std::vector<Lit> kept;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        Lit l = lits[i];
        if (value(l) == kTrue || (i + 1 < lits.size() && lits[i + 1] == ~l))
            return true;
        if (value(l) == kFalse || (!kept.empty() && kept.back() == l))
            continue;
        kept.push_back(l);
    }
    if (kept.empty()) {
        ok_ = false;
        return false;
    }
    if (kept.size() == 1) {
        enqueue(kept[0], -1);
        if (propagate() != -1)
            ok_ = false;
        return ok_;
    }
    clauses_.push_back(Clause{std::move(kept)});
    attach(static_cast<int>(clauses_.size()) - 1);
    return true;
}

void Solver::attach(int cref) {
    const auto& c = clauses_[cref].lits;
    watches_[(~c[0]).x].push_back({cref, c[1]});
    watches_[(~c[1]).x].push_back({cref, c[0]});
}

void Solver::enqueue(Lit l, int reason) {
    Var v = l.var();
    assigns_[v] = l.negated() ? kFalse : kTrue;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
}

int Solver::propagate() {
    int confl = -1;
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        auto& ws = watches_[p.x];
        Lit false_lit = ~p;
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            Watcher w = ws[i];
            if (value(w.blocker) == kTrue) {
                ws[j++] = ws[i++];
                continue;
            }
            Clause& c = clauses_[w.cref];
            if (c.deleted) {
                ++i;
                continue;
            }
            auto& lits = c.lits;
            if (lits[0] == false_lit)
                std::swap(lits[0], lits[1]);
            ++i;
            Lit first = lits[0];
            Watcher nw{w.cref, first};
            if (first != w.blocker && value(first) == kTrue) {
                ws[j++] = nw;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < lits.size(); ++k) {
                if (value(lits[k]) != kFalse) {
                    std::swap(lits[1], lits[k]);
                    watches_[(~lits[1]).x].push_back(nw);
                    moved = true;
                    break;
                }
            }
            if (moved)
                continue;
            ws[j++] = nw;
            if (value(first) == kFalse) {
                confl = w.cref;
                qhead_ = trail_.size();
                while (i < ws.size())
                    ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
        if (confl != -1)
            break;
    }
    return confl;
}

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
    learnt.clear();
    learnt.push_back(Lit{});
    int path = 0;
    Lit p{};
    int index = static_cast<int>(trail_.size()) - 1;
    bool first = true;
    do {
        Clause& c = clauses_[confl];
        if (c.learnt)
            bump_clause(c);
        for (std::size_t k = first ? 0 : 1; k < c.lits.size(); ++k) {
            Lit q = c.lits[k];
            Var v = q.var();
            if (!seen_[v] && level_[v] > 0) {
                bump_var(v);
                seen_[v] = 1;
                if (level_[v] >= decision_level())
                    ++path;
                else
                    learnt.push_back(q);
            }
        }
        first = false;
        while (!seen_[trail_[index].var()])
            --index;
        p = trail_[index];
        --index;
        confl = reason_[p.var()];
        seen_[p.var()] = 0;
        --path;
    } while (path > 0);
    learnt[0] = ~p;

    // Drop literals whose reason is subsumed by the clause (local minimization).
    const std::vector<Lit> to_clear(learnt.begin() + 1, learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
        Var v = learnt[k].var();
        int r = reason_[v];
        bool redundant = r != -1;
        if (redundant) {
            for (std::size_t m = 1; m < clauses_[r].lits.size(); ++m) {
                Var u = clauses_[r].lits[m].var();
                if (!seen_[u] && level_[u] > 0) {
                    redundant = false;
                    break;
                }
            }
        }
        if (!redundant)
            learnt[keep++] = learnt[k];
    }
    for (Lit l : to_clear)
        seen_[l.var()] = 0;
    learnt.resize(keep);

    bt_level = 0;
    if (learnt.size() > 1) {
        std::size_t max_i = 1;
        for (std::size_t k = 2; k < learnt.size(); ++k)
            if (level_[learnt[k].var()] > level_[learnt[max_i].var()])
                max_i = k;
        std::swap(learnt[1], learnt[max_i]);
        bt_level = level_[learnt[1].var()];
    }
}

void Solver::cancel_until(int lvl) {
    if (decision_level() <= lvl)
        return;
    for (int c = static_cast<int>(trail_.size()) - 1; c >= trail_lim_[lvl]; --c) {
        Var v = trail_[c].var();
        assigns_[v] = kUndef;
        reason_[v] = -1;
        polarity_[v] = trail_[c].negated();
        if (heap_pos_[v] < 0)
            heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    trail_lim_.resize(lvl);
    qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
    while (!heap_.empty()) {
        Var v = heap_pop();
        if (assigns_[v] == kUndef)
            return Lit::make(v, polarity_[v]);
    }
    return Lit{};
}

int Solver::add_learnt(std::vector<Lit> lits) {
    clauses_.push_back(Clause{std::move(lits), true});
    int cref = static_cast<int>(clauses_.size()) - 1;
    learnts_.push_back(cref);
    attach(cref);
    bump_clause(clauses_[cref]);
    return cref;
}

bool Solver::locked(int cref) const {
    const auto& c = clauses_[cref].lits;
    return reason_[c[0].var()] == cref && value(c[0]) == kTrue;
}

void Solver::reduce_db() {
    std::sort(learnts_.begin(), learnts_.end(), [&](int a, int b) {
        return clauses_[a].activity < clauses_[b].activity;
    });
    std::size_t half = learnts_.size() / 2;
    std::vector<int> kept;
    for (std::size_t i = 0; i < learnts_.size(); ++i) {
        int cref = learnts_[i];
        Clause& c = clauses_[cref];
        if (i < half && c.lits.size() > 2 && !locked(cref)) {
            c.deleted = true;
            c.lits.clear();
            c.lits.shrink_to_fit();
        } else {
            kept.push_back(cref);
        }
    }
    learnts_ = std::move(kept);
    for (auto& ws : watches_)
        std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.cref].deleted; });
}

void Solver::bump_var(Var v) {
    if ((activity_[v] += var_inc_) > 1e100) {
        for (auto& a : activity_)
            a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0)
        heap_up(heap_pos_[v]);
}

void Solver::bump_clause(Clause& c) {
    if ((c.activity += cla_inc_) > 1e20) {
        for (int cref : learnts_)
            clauses_[cref].activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

void Solver::heap_insert(Var v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
}

void Solver::heap_up(int i) {
    Var v = heap_[i];
    while (i > 0) {
        int parent = (i - 1) / 2;
        if (!heap_less(v, heap_[parent]))
            break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = i;
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void Solver::heap_down(int i) {
    Var v = heap_[i];
    int n = static_cast<int>(heap_.size());
    for (;;) {
        int child = 2 * i + 1;
        if (child >= n)
            break;
        if (child + 1 < n && heap_less(heap_[child + 1], heap_[child]))
            ++child;
        if (!heap_less(heap_[child], v))
            break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = i;
        i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

Var Solver::heap_pop() {
    Var top = heap_[0];
    heap_pos_[top] = -1;
    Var last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[last] = 0;
        heap_down(0);
    }
    return top;
}

Result Solver::search(std::int64_t nof_conflicts, std::span<const Lit> assumptions,
                      std::int64_t budget_end) {
    std::int64_t local = 0;
    std::vector<Lit> learnt;
    for (;;) {
        int confl = propagate();
        if (confl != -1) {
            ++total_conflicts_;
            ++local;
            if (decision_level() == 0) {
                ok_ = false;
                return Result::Unsat;
            }
            int bt = 0;
            analyze(confl, learnt, bt);
            cancel_until(bt);
            if (learnt.size() == 1) {
                enqueue(learnt[0], -1);
            } else {
                int cref = add_learnt(learnt);
                enqueue(learnt[0], cref);
            }
            var_inc_ /= kVarDecay;
            cla_inc_ /= kClaDecay;
            if (budget_end >= 0 && total_conflicts_ >= budget_end)
                return Result::Unknown;
            continue;
        }
        if (local >= nof_conflicts) {
            cancel_until(0);
            return Result::Unknown; // restart
        }
        if (static_cast<double>(learnts_.size()) >= max_learnts_ + static_cast<double>(trail_.size()))
            reduce_db();

        Lit next{};
        while (decision_level() < static_cast<int>(assumptions.size())) {
            Lit a = assumptions[decision_level()];
            if (value(a) == kTrue) {
                trail_lim_.push_back(static_cast<int>(trail_.size()));
            } else if (value(a) == kFalse) {
                return Result::Unsat;
            } else {
                next = a;
                break;
            }
        }
        if (next.x < 0) {
            next = pick_branch();
            if (next.x < 0) {
                model_.assign(assigns_.size(), 0);
                for (std::size_t v = 0; v < assigns_.size(); ++v)
                    model_[v] = assigns_[v] == kTrue;
                return Result::Sat;
            }
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(next, -1);
    }
}

Result Solver::solve(std::span<const Lit> assumptions, std::int64_t conflict_budget) {
    if (!ok_)
        return Result::Unsat;
    cancel_until(0);
    if (propagate() != -1) {
        ok_ = false;
        return Result::Unsat;
    }
    max_learnts_ = std::max(1000.0, static_cast<double>(clauses_.size()) / 3.0);
    std::int64_t budget_end = conflict_budget < 0 ? -1 : total_conflicts_ + conflict_budget;
    Result r = Result::Unknown;
    for (int round = 0;; ++round) {
        auto limit = static_cast<std::int64_t>(luby(2, round) * kRestartBase);
        r = search(limit, assumptions, budget_end);
        if (r != Result::Unknown)
            break;
        if (budget_end >= 0 && total_conflicts_ >= budget_end)
            break;
        max_learnts_ *= 1.1;
    }
    cancel_until(0);
    return r;
}

} // namespace sltl::sat
