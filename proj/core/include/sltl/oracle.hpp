#pragma once

#include "sltl/formula.hpp"
#include "sltl/model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace sltl {

struct OracleLimits {
    /// Upper bound on propositional variables per lasso shape.
    std::size_t max_vars = 2'000'000;
    /// Conflict budget per SAT call; negative means unlimited.
    std::int64_t max_conflicts = -1;
};

struct OracleWitness {
    SLTLModel model;
    TraceId designated;
};

struct PtlWitness {
    PTLS5Model model;
    TraceId designated;
};

/// Bounded satisfiability over ultimately periodic models.
///
/// Lasso shapes are visited with the number of traces ascending, then
/// (prefix, period) lexicographically. For each shape the question is
/// compiled to CNF and decided exactly, so the search is exhaustive within
/// the bounds. The first satisfiable shape yields the witness whose lambda
/// bits, then valuation bits, are lexicographically least. Trace ids are
/// t0, t1, ...; the designated trace is t0. Throws ResourceError when a limit
/// in `limits` fires.
std::optional<OracleWitness> oracle_sat(const Formula& f, const SearchBounds& b,
                                        const OracleLimits& limits = {});

/// Exactly one lasso shape.
std::optional<OracleWitness> oracle_sat_shape(const Formula& f, std::size_t traces,
                                              std::size_t prefix, std::size_t period,
                                              const std::vector<std::string>& extra_props = {},
                                              const OracleLimits& limits = {});

/// The same search under PTL x S5 semantics. Throws EvalError if `f` uses a
/// standpoint other than `*` or a sharpening atom.
std::optional<PtlWitness> oracle_sat_ptls5(const Formula& f, const SearchBounds& b,
                                           const OracleLimits& limits = {});

} // namespace sltl
