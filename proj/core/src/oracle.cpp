#include "sltl/oracle.hpp"

#include "cdcl.hpp"
#include "sltl/errors.hpp"
#include "sltl/semantics.hpp"
#include "sltl/syntax.hpp"

#include <unordered_map>

namespace sltl {

namespace {

using sat::Lit;

class Encoder {
public:
    Encoder(std::size_t traces, std::size_t prefix, std::size_t period, std::vector<std::string> props,
            std::vector<Standpoint> standpoints, const OracleLimits& limits)
        : T_(traces), P_(prefix), L_(prefix + period), props_(std::move(props)),
          sps_(std::move(standpoints)), limits_(limits) {
        true_ = Lit::make(fresh());
        solver_.add_clause({true_});
        prop_lits_.resize(T_ * L_ * props_.size());
        for (auto& l : prop_lits_)
            l = Lit::make(fresh());
        std::vector<Lit> star(T_, true_);
        lambda_.emplace(Standpoint::universal(), star);
        for (const auto& s : sps_) {
            std::vector<Lit> bits(T_);
            for (auto& l : bits)
                l = Lit::make(fresh());
            solver_.add_clause(std::span<const Lit>(bits));
            lambda_.emplace(s, std::move(bits));
        }
    }

    sat::Solver& solver() { return solver_; }

    Lit prop_lit(std::size_t t, std::size_t i, std::size_t k) const {
        return prop_lits_[(t * L_ + i) * props_.size() + k];
    }
    Lit lambda_lit(const Standpoint& s, std::size_t t) const { return lambda_.at(s)[t]; }

    /// Canonical order of the witness bits used for lexicographic minimization.
    std::vector<Lit> decision_bits() const {
        std::vector<Lit> bits;
        for (const auto& s : sps_)
            for (std::size_t t = 0; t < T_; ++t)
                bits.push_back(lambda_lit(s, t));
        for (std::size_t t = 0; t < T_; ++t)
            for (std::size_t i = 0; i < L_; ++i)
                for (std::size_t k = 0; k < props_.size(); ++k)
                    bits.push_back(prop_lit(t, i, k));
        return bits;
    }

    Lit at(const Formula& g, std::size_t t, std::size_t i) {
        auto& row = row_for(g);
        Lit& slot = row[t * L_ + i];
        if (slot.x >= 0)
            return slot;
        switch (g.op()) {
        case Op::Prop:
            slot = prop_lit(t, i, prop_index_.at(g.prop_name()));
            break;
        case Op::Top:
            slot = true_;
            break;
        case Op::Bottom:
            slot = ~true_;
            break;
        case Op::Sharper:
            fill_all(g, sharper_lit(g));
            break;
        case Op::Not:
            slot = ~at(g.child(), t, i);
            break;
        case Op::And: {
            Lit a = at(g.lhs(), t, i);
            Lit b = at(g.rhs(), t, i);
            row_for(g)[t * L_ + i] = and2(a, b);
            break;
        }
        case Op::Or: {
            Lit a = at(g.lhs(), t, i);
            Lit b = at(g.rhs(), t, i);
            row_for(g)[t * L_ + i] = ~and2(~a, ~b);
            break;
        }
        case Op::Next: {
            Lit a = at(g.child(), t, succ(i));
            row_for(g)[t * L_ + i] = a;
            break;
        }
        case Op::Diamond:
        case Op::Box:
            encode_modal(g, i);
            break;
        case Op::Until:
            encode_until(g, t);
            break;
        }
        return row_for(g)[t * L_ + i];
    }

private:
    sat::Var fresh() {
        if (static_cast<std::size_t>(solver_.num_vars()) >= limits_.max_vars)
            throw ResourceError("oracle-vars", "bounded oracle: encoding exceeds " +
                                                   std::to_string(limits_.max_vars) + " variables");
        return solver_.new_var();
    }

    std::size_t succ(std::size_t i) const { return i + 1 < L_ ? i + 1 : P_; }

    std::vector<Lit>& row_for(const Formula& g) {
        auto it = memo_.find(g);
        if (it == memo_.end())
            it = memo_.emplace(g, std::vector<Lit>(T_ * L_)).first;
        return it->second;
    }

    void fill_all(const Formula& g, Lit l) {
        auto& row = row_for(g);
        std::fill(row.begin(), row.end(), l);
    }

    bool is_true(Lit l) const { return l == true_; }
    bool is_false(Lit l) const { return l == ~true_; }

    Lit and2(Lit a, Lit b) {
        if (is_false(a) || is_false(b) || a == ~b)
            return ~true_;
        if (is_true(a))
            return b;
        if (is_true(b) || a == b)
            return a;
        Lit x = Lit::make(fresh());
        solver_.add_clause({~x, a});
        solver_.add_clause({~x, b});
        solver_.add_clause({x, ~a, ~b});
        return x;
    }

    Lit or_n(const std::vector<Lit>& in) {
        std::vector<Lit> lits;
        for (Lit l : in) {
            if (is_true(l))
                return true_;
            if (!is_false(l))
                lits.push_back(l);
        }
        if (lits.empty())
            return ~true_;
        if (lits.size() == 1)
            return lits[0];
        Lit x = Lit::make(fresh());
        std::vector<Lit> big{~x};
        for (Lit l : lits) {
            big.push_back(l);
            solver_.add_clause({x, ~l});
        }
        solver_.add_clause(std::span<const Lit>(big));
        return x;
    }

    Lit sharper_lit(const Formula& g) {
        // λ(s) ⊆ λ(s') as a conjunction over traces.
        std::vector<Lit> violations;
        for (std::size_t t = 0; t < T_; ++t)
            violations.push_back(and2(lambda_lit(g.standpoint(), t), ~lambda_lit(g.rhs_standpoint(), t)));
        return ~or_n(violations);
    }

    void encode_modal(const Formula& g, std::size_t i) {
        bool is_dia = g.op() == Op::Diamond;
        std::vector<Lit> cases;
        for (std::size_t t = 0; t < T_; ++t) {
            Lit body = at(g.child(), t, i);
            if (!is_dia)
                body = ~body;
            cases.push_back(and2(lambda_lit(g.standpoint(), t), body));
        }
        Lit d = or_n(cases);
        if (!is_dia)
            d = ~d;
        auto& row = row_for(g);
        for (std::size_t t = 0; t < T_; ++t)
            row[t * L_ + i] = d;
    }

    // Two unrolled copies of the lasso: the second copy only walks the loop
    // once and ends in false, so the first copy sees every loop position.
    void encode_until(const Formula& g, std::size_t t) {
        std::vector<Lit> a(L_), b(L_);
        for (std::size_t i = 0; i < L_; ++i) {
            a[i] = at(g.lhs(), t, i);
            b[i] = at(g.rhs(), t, i);
        }
        Lit nxt = ~true_;
        for (std::size_t c = L_; c-- > P_;)
            nxt = ~and2(~b[c], ~and2(a[c], nxt));
        std::vector<Lit> u1(L_);
        for (std::size_t i = L_; i-- > 0;) {
            nxt = ~and2(~b[i], ~and2(a[i], nxt));
            u1[i] = nxt;
        }
        auto& row = row_for(g);
        for (std::size_t i = 0; i < L_; ++i)
            row[t * L_ + i] = u1[i];
    }

    std::size_t T_, P_, L_;
    std::vector<std::string> props_;
    std::vector<Standpoint> sps_;
    const OracleLimits& limits_;
    sat::Solver solver_;
    Lit true_;
    std::vector<Lit> prop_lits_;
    std::map<Standpoint, std::vector<Lit>> lambda_;
    std::unordered_map<Formula, std::vector<Lit>, FormulaHash> memo_;

public:
    std::unordered_map<std::string, std::size_t> prop_index_;
};

struct Problem {
    std::vector<std::string> props;
    std::vector<Standpoint> standpoints; // without *
};

Problem problem_for(const Formula& f, const std::vector<std::string>& extra) {
    Vocabulary v = vocab(f);
    std::set<std::string> props = v.props;
    props.insert(extra.begin(), extra.end());
    Problem p;
    p.props.assign(props.begin(), props.end());
    for (const auto& s : v.standpoints)
        if (!s.is_universal())
            p.standpoints.push_back(s);
    return p;
}

sat::Result checked(sat::Result r) {
    if (r == sat::Result::Unknown)
        throw ResourceError("oracle-conflicts", "bounded oracle: conflict budget exhausted");
    return r;
}

std::optional<OracleWitness> solve_shape(const Formula& f, const Problem& pb, std::size_t traces,
                                         std::size_t prefix, std::size_t period,
                                         const OracleLimits& limits) {
    Encoder enc(traces, prefix, period, pb.props, pb.standpoints, limits);
    for (std::size_t k = 0; k < pb.props.size(); ++k)
        enc.prop_index_.emplace(pb.props[k], k);
    Lit root = enc.at(f, 0, 0);
    auto& s = enc.solver();
    s.add_clause({root});
    if (checked(s.solve({}, limits.max_conflicts)) == sat::Result::Unsat)
        return std::nullopt;

    // Lexicographically least witness: fix bits to false whenever possible.
    std::vector<Lit> assumptions;
    for (Lit bit : enc.decision_bits()) {
        if (!s.model_value(bit)) {
            assumptions.push_back(~bit);
            continue;
        }
        assumptions.push_back(~bit);
        if (checked(s.solve(assumptions, limits.max_conflicts)) == sat::Result::Unsat)
            assumptions.back() = bit;
    }

    const std::size_t len = prefix + period;
    OracleWitness w;
    w.model.prefix_len = prefix;
    w.model.period_len = period;
    for (std::size_t t = 0; t < traces; ++t) {
        NamedTrace nt{"t" + std::to_string(t), {}};
        for (std::size_t i = 0; i < len; ++i) {
            Valuation val;
            for (std::size_t k = 0; k < pb.props.size(); ++k)
                if (s.model_value(enc.prop_lit(t, i, k)))
                    val.insert(pb.props[k]);
            (i < prefix ? nt.trace.prefix : nt.trace.period).push_back(std::move(val));
        }
        w.model.traces.push_back(std::move(nt));
        w.model.lambda[Standpoint::universal()].insert("t" + std::to_string(t));
    }
    for (const auto& sp : pb.standpoints)
        for (std::size_t t = 0; t < traces; ++t)
            if (s.model_value(enc.lambda_lit(sp, t)))
                w.model.lambda[sp].insert("t" + std::to_string(t));
    w.designated = "t0";
    if (!eval_sltl(w.model, w.designated, 0, f))
        throw InternalError("bounded oracle produced a model that fails evaluation");
    return w;
}

} // namespace

std::optional<OracleWitness> oracle_sat_shape(const Formula& f, std::size_t traces, std::size_t prefix,
                                              std::size_t period, const std::vector<std::string>& extra_props,
                                              const OracleLimits& limits) {
    if (traces == 0 || period == 0)
        throw Error("lasso shape needs at least one trace and a non-empty period");
    return solve_shape(f, problem_for(f, extra_props), traces, prefix, period, limits);
}

std::optional<OracleWitness> oracle_sat(const Formula& f, const SearchBounds& b, const OracleLimits& limits) {
    b.validate();
    Problem pb = problem_for(f, b.props);
    for (std::size_t t = 1; t <= b.max_traces; ++t)
        for (std::size_t p = 0; p <= b.max_prefix; ++p)
            for (std::size_t q = 1; q <= b.max_period; ++q)
                if (auto w = solve_shape(f, pb, t, p, q, limits))
                    return w;
    return std::nullopt;
}

std::optional<PtlWitness> oracle_sat_ptls5(const Formula& f, const SearchBounds& b, const OracleLimits& limits) {
    if (!is_ptls5_formula(f))
        throw EvalError("formula is outside the PTL x S5 sublanguage: " + to_string(f));
    auto w = oracle_sat(f, b, limits);
    if (!w)
        return std::nullopt;
    return PtlWitness{w->model.traces_only(), w->designated};
}

} // namespace sltl
