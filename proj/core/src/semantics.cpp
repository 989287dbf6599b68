#include "sltl/semantics.hpp"

#include "sltl/errors.hpp"

#include <unordered_map>
#include <vector>

namespace sltl {

struct Evaluator::Impl {
    using Table = std::vector<char>; // index: trace * length + position

    const SLTLModel& model;
    std::size_t traces;
    std::size_t length;
    std::size_t prefix;
    std::unordered_map<Formula, Table, FormulaHash> memo;
    std::map<Standpoint, std::vector<char>> members; // lambda as per-trace flags

    explicit Impl(const SLTLModel& m)
        : model(m), traces(m.traces.size()), length(m.length()), prefix(m.prefix_len) {
        m.validate();
        for (const auto& [s, ids] : m.lambda) {
            auto& flags = members[s];
            flags.assign(traces, 0);
            for (const auto& id : ids)
                flags[*m.index_of(id)] = 1;
        }
    }

    std::size_t succ(std::size_t i) const { return i + 1 < length ? i + 1 : prefix; }

    const std::vector<char>& lambda_of(const Standpoint& s) const {
        auto it = members.find(s);
        if (it == members.end())
            throw EvalError("standpoint " + to_string(s) + " is not interpreted by the model");
        return it->second;
    }

    const Table& table(const Formula& f) {
        if (auto it = memo.find(f); it != memo.end())
            return it->second;
        Table t = compute(f);
        return memo.emplace(f, std::move(t)).first->second;
    }

    Table compute(const Formula& f) {
        const std::size_t cells = traces * length;
        Table out(cells, 0);
        switch (f.op()) {
        case Op::Prop:
            for (std::size_t t = 0; t < traces; ++t)
                for (std::size_t i = 0; i < length; ++i)
                    out[t * length + i] = model.traces[t].trace.at(i).contains(f.prop_name());
            break;
        case Op::Top:
            out.assign(cells, 1);
            break;
        case Op::Bottom:
            break;
        case Op::Sharper: {
            const auto& a = lambda_of(f.standpoint());
            const auto& b = lambda_of(f.rhs_standpoint());
            bool incl = true;
            for (std::size_t t = 0; t < traces; ++t)
                incl = incl && (!a[t] || b[t]);
            out.assign(cells, incl);
            break;
        }
        case Op::Not: {
            const Table& a = table(f.child());
            for (std::size_t c = 0; c < cells; ++c)
                out[c] = !a[c];
            break;
        }
        case Op::And:
        case Op::Or: {
            const Table& a = table(f.lhs());
            const Table& b = table(f.rhs());
            bool is_and = f.op() == Op::And;
            for (std::size_t c = 0; c < cells; ++c)
                out[c] = is_and ? (a[c] && b[c]) : (a[c] || b[c]);
            break;
        }
        case Op::Diamond:
        case Op::Box: {
            const auto& lam = lambda_of(f.standpoint());
            const Table& a = table(f.child());
            bool is_dia = f.op() == Op::Diamond;
            for (std::size_t i = 0; i < length; ++i) {
                bool v = !is_dia;
                for (std::size_t t = 0; t < traces; ++t) {
                    if (!lam[t])
                        continue;
                    if (is_dia && a[t * length + i])
                        v = true;
                    if (!is_dia && !a[t * length + i])
                        v = false;
                }
                for (std::size_t t = 0; t < traces; ++t)
                    out[t * length + i] = v;
            }
            break;
        }
        case Op::Next: {
            const Table& a = table(f.child());
            for (std::size_t t = 0; t < traces; ++t)
                for (std::size_t i = 0; i < length; ++i)
                    out[t * length + i] = a[t * length + succ(i)];
            break;
        }
        case Op::Until: {
            const Table& a = table(f.lhs());
            const Table& b = table(f.rhs());
            // Least fixpoint of r = b | (a & r∘succ); stable after two sweeps.
            for (std::size_t t = 0; t < traces; ++t) {
                const std::size_t base = t * length;
                for (bool changed = true; changed;) {
                    changed = false;
                    for (std::size_t i = length; i-- > 0;) {
                        char v = b[base + i] || (a[base + i] && out[base + succ(i)]);
                        if (v != out[base + i]) {
                            out[base + i] = v;
                            changed = true;
                        }
                    }
                }
            }
            break;
        }
        }
        return out;
    }

    std::size_t fold(std::size_t pos) const {
        if (pos < length)
            return pos;
        return prefix + (pos - prefix) % (length - prefix);
    }
};

Evaluator::Evaluator(const SLTLModel& m) : impl_(std::make_unique<Impl>(m)) {}
Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

bool Evaluator::holds(const Formula& f, const TraceId& trace, std::size_t pos) {
    auto idx = impl_->model.index_of(trace);
    if (!idx)
        throw EvalError("unknown trace '" + trace + "'");
    return holds_at(f, *idx, pos);
}

bool Evaluator::holds_at(const Formula& f, std::size_t trace_index, std::size_t pos) {
    if (trace_index >= impl_->traces)
        throw EvalError("trace index out of range");
    return impl_->table(f)[trace_index * impl_->length + impl_->fold(pos)] != 0;
}

bool eval_sltl(const SLTLModel& m, const TraceId& t, std::size_t i, const Formula& f) {
    Evaluator ev(m);
    return ev.holds(f, t, i);
}

bool is_ptls5_formula(const Formula& f) {
    for (const auto& g : subformulas(f)) {
        if (g.op() == Op::Sharper)
            return false;
        if (g.is_modal_op() && !g.standpoint().is_universal())
            return false;
    }
    return true;
}

bool eval_ptls5(const PTLS5Model& m, const TraceId& w, std::size_t n, const Formula& f) {
    if (!is_ptls5_formula(f))
        throw EvalError("formula is outside the PTL x S5 sublanguage: " + to_string(f));
    return eval_sltl(SLTLModel::from_ptls5(m), w, n, f);
}

} // namespace sltl
