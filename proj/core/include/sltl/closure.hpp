#pragma once

#include "sltl/formula.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

namespace sltl {

/// Subformulas of a seed plus true/false, the X-companion of every Until, and
/// closed under single negation. Members are ordered by (size, canonical text).
class ClosureSet {
public:
    explicit ClosureSet(const Formula& seed);

    const Formula& seed() const noexcept { return seed_; }
    const std::vector<Formula>& formulas() const noexcept { return formulas_; }
    std::size_t size() const noexcept { return formulas_.size(); }
    const Formula& operator[](std::size_t i) const { return formulas_[i]; }

    std::optional<std::size_t> find(const Formula& f) const;
    /// Index of a member; throws InternalError if absent.
    std::size_t index_of(const Formula& f) const;
    bool contains(const Formula& f) const { return index_.contains(f); }

private:
    Formula seed_;
    std::vector<Formula> formulas_;
    std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

inline ClosureSet closure(const Formula& f) { return ClosureSet(f); }

} // namespace sltl
