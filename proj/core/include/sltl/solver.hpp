#pragma once

#include "sltl/automaton.hpp"
#include "sltl/formula.hpp"
#include "sltl/model.hpp"
#include "sltl/oracle.hpp"
#include "sltl/psl.hpp"
#include "sltl/translate.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sltl {

enum class Status { Sat, Unsat, Unknown, OutOfFragment };
enum class Engine { Psl, Automaton, Oracle, None };

std::string_view to_string(Status s);
std::string_view to_string(Engine e);

struct Witness {
    SLTLModel model;
    TraceId designated;
};

struct Verdict {
    Status status = Status::Unknown;
    Engine engine = Engine::None;
    /// The partition whose formula produced the verdict (Sat via automaton).
    std::optional<Partition> partition;
    /// Present exactly when status is Sat.
    std::optional<Witness> witness;
    /// Bounds searched, for Unknown.
    std::optional<SearchBounds> bounds;
    /// PTL x S5 image of the input, for FullSLTL inputs when requested.
    std::optional<Formula> translation;
    std::string details;
};

struct SolveOptions {
    /// Bounds for the oracle on FullSLTL inputs.
    SearchBounds bounds{3, 2, 3, {}};
    OracleLimits oracle_limits;
    AutomatonOptions automaton;
    /// FullSLTL inputs yield OutOfFragment instead of running the oracle.
    bool fragment_strict = false;
    /// Attach sltl_to_ptls5(f) to Unknown and OutOfFragment verdicts.
    bool attach_translation = true;
    /// Partitions decided concurrently; 1 runs them in order on this thread.
    std::size_t jobs = 1;
};

/// Classify, then decide: PSL by the grid search, PureLTL and LtlPsl by one
/// automaton emptiness check per partition, FullSLTL by the bounded oracle
/// (Sat or Unknown, never Unsat). Every Sat witness is checked before it is
/// returned. Deterministic for fixed options, including `jobs`.
Verdict solve(const Formula& f, const SolveOptions& opts = {});

/// Trace model of an accepting run of the automaton for `phi_d`.
///
/// Every position k gets a grid model of the PSL members of B_k on one shared
/// family (images of the sharpening atoms of `phi_d`) and one shared width
/// N = |standpoints incl. *| + |Diamond and Not(Box) members of the closure| + 1.
/// Each diamond in the NNF of a position's PSL members comes from one of those
/// closure members, so N covers every per-position demand. Cell (S, j) becomes
/// one trace; the designated trace is cell (R(*), 1).
Witness witness_from_lasso(const Lasso& lasso, const Formula& phi_d);

/// The uniform grid width used by witness_from_lasso.
std::size_t uniform_grid_width(const Formula& phi_d);

/// One trace per grid cell over a single position (prefix 0, period 1).
Witness lift_psl_witness(const PslWitness& w);

/// eval_sltl at position 0. Throws ModelError when `m` is malformed or `t`
/// names no trace.
bool check_witness(const Formula& f, const SLTLModel& m, const TraceId& t);

} // namespace sltl
