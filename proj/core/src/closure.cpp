#include "sltl/closure.hpp"

#include "sltl/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace sltl {

ClosureSet::ClosureSet(const Formula& seed) : seed_(seed) {
    std::unordered_set<Formula, FormulaHash> members;
    auto add = [&](const Formula& f) {
        members.insert(f);
        members.insert(neg(f));
    };
    add(top());
    for (const auto& g : subformulas(seed)) {
        add(g);
        if (g.op() == Op::Until)
            add(next(g));
    }

    std::vector<std::pair<std::string, Formula>> keyed;
    keyed.reserve(members.size());
    for (const auto& f : members)
        keyed.emplace_back(to_string(f), f);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.second.size() != b.second.size())
            return a.second.size() < b.second.size();
        return a.first < b.first;
    });
    formulas_.reserve(keyed.size());
    for (auto& [text, f] : keyed) {
        index_.emplace(f, formulas_.size());
        formulas_.push_back(std::move(f));
    }
}

std::optional<std::size_t> ClosureSet::find(const Formula& f) const {
    if (auto it = index_.find(f); it != index_.end())
        return it->second;
    return std::nullopt;
}

std::size_t ClosureSet::index_of(const Formula& f) const {
    if (auto it = index_.find(f); it != index_.end())
        return it->second;
    throw InternalError("formula not in closure: " + to_string(f));
}

} // namespace sltl
