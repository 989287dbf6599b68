#pragma once

#include "sltl/formula.hpp"
#include "sltl/model.hpp"

#include <cstddef>
#include <memory>
#include <string_view>

namespace sltl {

/// Evaluates formulas on one model, caching the truth table of every
/// subformula over all (trace, position) pairs. Until is computed by a
/// backward fixpoint over the shared lasso.
class Evaluator {
public:
    explicit Evaluator(const SLTLModel& m);
    ~Evaluator();
    Evaluator(Evaluator&&) noexcept;
    Evaluator& operator=(Evaluator&&) noexcept;

    /// Throws EvalError for an unknown trace or a standpoint outside lambda.
    bool holds(const Formula& f, const TraceId& trace, std::size_t pos);
    bool holds_at(const Formula& f, std::size_t trace_index, std::size_t pos);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot evaluation. Positions beyond the lasso are folded back into it.
bool eval_sltl(const SLTLModel& m, const TraceId& t, std::size_t i, const Formula& f);

/// PTL x S5 evaluation: modalities quantify over all traces. `f` may only use
/// `<@*>` / `[@*]` and no sharpening atoms; anything else raises EvalError.
bool eval_ptls5(const PTLS5Model& m, const TraceId& w, std::size_t n, const Formula& f);

/// True if `f` is in the PTL x S5 sublanguage.
bool is_ptls5_formula(const Formula& f);

} // namespace sltl
