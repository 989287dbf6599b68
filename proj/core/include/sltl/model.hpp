#pragma once

#include "sltl/formula.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sltl {

using Valuation = std::set<std::string>;
using TraceId = std::string;

/// Ultimately periodic trace: `prefix` followed by `period` repeated forever.
struct UPTrace {
    std::vector<Valuation> prefix;
    std::vector<Valuation> period;

    /// Valuation at any position `i >= 0`.
    const Valuation& at(std::size_t i) const;

    friend bool operator==(const UPTrace&, const UPTrace&) = default;
};

struct NamedTrace {
    TraceId id;
    UPTrace trace;

    friend bool operator==(const NamedTrace&, const NamedTrace&) = default;
};

/// Traces without standpoints; every trace shares one lasso shape.
struct PTLS5Model {
    std::vector<NamedTrace> traces;
    std::size_t prefix_len = 0;
    std::size_t period_len = 1;

    std::size_t length() const noexcept { return prefix_len + period_len; }
    std::optional<std::size_t> index_of(const TraceId& id) const;
    /// Throws ModelError when the traces are empty, ids repeat, or a trace's
    /// shape differs from (prefix_len, period_len).
    void validate() const;

    friend bool operator==(const PTLS5Model&, const PTLS5Model&) = default;
};

/// Traces plus a standpoint assignment. `lambda` must map `*` to every
/// trace and every other entry to a non-empty subset of the traces.
struct SLTLModel {
    std::vector<NamedTrace> traces;
    std::map<Standpoint, std::set<TraceId>> lambda;
    std::size_t prefix_len = 0;
    std::size_t period_len = 1;

    std::size_t length() const noexcept { return prefix_len + period_len; }
    std::optional<std::size_t> index_of(const TraceId& id) const;
    void validate() const;

    /// Same traces with `lambda(*)` set to all of them and nothing else.
    static SLTLModel from_ptls5(const PTLS5Model& m);
    PTLS5Model traces_only() const;

    friend bool operator==(const SLTLModel&, const SLTLModel&) = default;
};

struct SearchBounds {
    std::size_t max_traces = 2;
    std::size_t max_prefix = 1;
    std::size_t max_period = 2;
    /// Extra propositions to range over besides those of the formula.
    std::vector<std::string> props;

    /// Throws Error if max_traces or max_period is zero.
    void validate() const;

    friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

} // namespace sltl
