#include "sltl/model.hpp"

#include "sltl/errors.hpp"

namespace sltl {

const Valuation& UPTrace::at(std::size_t i) const {
    if (i < prefix.size())
        return prefix[i];
    if (period.empty())
        throw ModelError("trace has an empty period");
    return period[(i - prefix.size()) % period.size()];
}

namespace {

std::optional<std::size_t> find_trace(const std::vector<NamedTrace>& traces, const TraceId& id) {
    for (std::size_t i = 0; i < traces.size(); ++i)
        if (traces[i].id == id)
            return i;
    return std::nullopt;
}

void validate_traces(const std::vector<NamedTrace>& traces, std::size_t prefix_len,
                     std::size_t period_len) {
    if (traces.empty())
        throw ModelError("model has no traces");
    if (period_len == 0)
        throw ModelError("period_len must be at least 1");
    std::set<TraceId> ids;
    for (const auto& t : traces) {
        if (!ids.insert(t.id).second)
            throw ModelError("duplicate trace id '" + t.id + "'");
        if (t.trace.prefix.size() != prefix_len || t.trace.period.size() != period_len)
            throw ModelError("trace '" + t.id + "' does not have the shared shape (" +
                             std::to_string(prefix_len) + ", " + std::to_string(period_len) + ")");
    }
}

} // namespace

std::optional<std::size_t> PTLS5Model::index_of(const TraceId& id) const {
    return find_trace(traces, id);
}

void PTLS5Model::validate() const { validate_traces(traces, prefix_len, period_len); }

std::optional<std::size_t> SLTLModel::index_of(const TraceId& id) const {
    return find_trace(traces, id);
}

void SLTLModel::validate() const {
    validate_traces(traces, prefix_len, period_len);
    auto star = lambda.find(Standpoint::universal());
    if (star == lambda.end())
        throw ModelError("lambda has no entry for @*");
    if (star->second.size() != traces.size())
        throw ModelError("lambda(@*) must contain every trace");
    for (const auto& [s, ids] : lambda) {
        if (ids.empty())
            throw ModelError("lambda(" + to_string(s) + ") is empty");
        for (const auto& id : ids)
            if (!index_of(id))
                throw ModelError("lambda(" + to_string(s) + ") names unknown trace '" + id + "'");
    }
}

SLTLModel SLTLModel::from_ptls5(const PTLS5Model& m) {
    SLTLModel out;
    out.traces = m.traces;
    out.prefix_len = m.prefix_len;
    out.period_len = m.period_len;
    auto& all = out.lambda[Standpoint::universal()];
    for (const auto& t : m.traces)
        all.insert(t.id);
    return out;
}

PTLS5Model SLTLModel::traces_only() const {
    return PTLS5Model{traces, prefix_len, period_len};
}

void SearchBounds::validate() const {
    if (max_traces == 0)
        throw Error("search bounds: max_traces must be at least 1");
    if (max_period == 0)
        throw Error("search bounds: max_period must be at least 1");
}

} // namespace sltl
