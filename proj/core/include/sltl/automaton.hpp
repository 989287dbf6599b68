#pragma once

#include "sltl/closure.hpp"
#include "sltl/formula.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sltl {

/// A subset of a closure set, stored as a bitmask over closure indices.
class SElementarySet {
public:
    SElementarySet() = default;
    explicit SElementarySet(std::size_t closure_size) : words_((closure_size + 63) / 64, 0) {}

    bool contains(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
    void set(std::size_t i, bool v) {
        if (v)
            words_[i / 64] |= std::uint64_t{1} << (i % 64);
        else
            words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
    std::size_t hash() const noexcept;
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const SElementarySet&, const SElementarySet&) = default;

private:
    std::vector<std::uint64_t> words_;
};

struct SElementarySetHash {
    std::size_t operator()(const SElementarySet& s) const noexcept { return s.hash(); }
};

/// Accepting run presented as stem followed by a cycle repeated forever.
struct Lasso {
    std::vector<SElementarySet> stem;
    std::vector<SElementarySet> cycle;
};

/// `until` not in B, or its right operand in B.
struct AcceptanceCondition {
    std::size_t until_index;
    std::size_t rhs_index;

    bool operator()(const SElementarySet& b) const {
        return !b.contains(until_index) || b.contains(rhs_index);
    }
};

struct AutomatonOptions {
    /// Limit on distinct (state, counter) pairs visited by the emptiness check.
    std::size_t max_states = 1'000'000;
    /// If set, receives a line-oriented dump of the explored graph.
    std::ostream* dump = nullptr;
};

class Gnba;

/// Lazily enumerated s-elementary sets. Keeps its automaton alive.
class StateStream {
public:
    ~StateStream();
    StateStream(StateStream&&) noexcept;
    StateStream& operator=(StateStream&&) noexcept;

    std::optional<SElementarySet> next();

private:
    friend class Gnba;
    struct Impl;
    explicit StateStream(std::unique_ptr<Impl> impl);
    std::unique_ptr<Impl> impl_;
};

/// Generalized Büchi automaton whose states are the maximally and
/// standpoint-consistent subsets of the closure of `phi_d`. States are
/// labelled by their propositions, so letters are never materialized.
///
/// A state is fixed by its base members (propositions, sharpening atoms,
/// X-formulas and modal formulas); Boolean and Until members follow from the
/// consistency equations. Enumeration backtracks over base members in closure
/// order, false before true.
///
/// Not thread-safe: the consistency memo is per instance.
class Gnba {
public:
    /// Throws FragmentError if a temporal operator occurs inside a modality.
    explicit Gnba(const Formula& phi_d);

    const ClosureSet& closure() const;
    const Formula& phi_d() const;

    /// S-elementary sets containing phi_d.
    StateStream initial_states() const;
    /// S-elementary sets B' with (X g in b iff g in B') for every X g in the closure.
    StateStream successors(const SElementarySet& b) const;
    const std::vector<AcceptanceCondition>& acceptance_family() const;

    /// Maximal and standpoint consistency of an arbitrary subset.
    bool is_elementary(const SElementarySet& b) const;
    /// X-coherence of an edge.
    bool is_transition(const SElementarySet& from, const SElementarySet& to) const;

    /// Nested depth-first search on the degeneralized product. Throws
    /// ResourceError when `opts.max_states` is exceeded.
    std::optional<Lasso> find_accepting_lasso(const AutomatonOptions& opts = {}) const;

    /// Members as canonical text, e.g. `{p, X p, p U q}`; negated members omitted.
    std::string describe(const SElementarySet& b) const;

private:
    friend class StateStream;
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Acceptance predicates of a closure: one per Until member.
std::vector<AcceptanceCondition> acceptance_family(const ClosureSet& cl);

std::optional<Lasso> find_accepting_lasso(const Formula& phi_d, const AutomatonOptions& opts = {});

} // namespace sltl
