#pragma once

#include "sltl/formula.hpp"
#include "sltl/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace sltl {

/// Reflexive-transitive closure of the sharpening atoms plus (s, *) for every
/// standpoint in the universe.
class SharpeningClosure {
public:
    SharpeningClosure(std::span<const SharpeningAtom> atoms, const std::set<Standpoint>& universe);

    const std::set<Standpoint>& universe() const noexcept { return universe_; }
    /// All s' with (s, s') in the relation.
    const std::set<Standpoint>& image(const Standpoint& s) const;
    bool entails(const Standpoint& s, const Standpoint& s2) const;

private:
    std::set<Standpoint> universe_;
    std::map<Standpoint, std::set<Standpoint>> image_;
};

/// The distinct images R(s). `sets[0]` is always R(*).
struct SFamily {
    std::vector<std::set<Standpoint>> sets;

    static SFamily from(const SharpeningClosure& r);
    std::size_t s_star() const noexcept { return 0; }

    friend bool operator==(const SFamily&, const SFamily&) = default;
};

/// Grid cell (index into the S-family, j in 1..n).
using Cell = std::pair<std::size_t, std::size_t>;

/// Precisifications are exactly family x {1..n}; cell (S, j) carries the
/// standpoints in S.
struct PSLModel {
    SFamily s_family;
    std::size_t n = 1;
    std::map<Cell, Valuation> valuation;

    /// Throws ModelError unless the valuation covers exactly the grid.
    void validate() const;

    friend bool operator==(const PSLModel&, const PSLModel&) = default;
};

struct PslWitness {
    PSLModel model;
    Cell designated{0, 1};
};

/// Evaluation at a grid cell. Throws EvalError on X/U or on a standpoint
/// that no cell carries.
bool psl_eval(const PSLModel& m, const Cell& cell, const Formula& f);

struct NormalizedPsl {
    /// Top-level sharpening conjuncts, with `* <= *` appended if absent.
    std::vector<SharpeningAtom> phi1;
    /// The remaining conjuncts in NNF; contains no sharpening atom.
    Formula phi2;
};

struct Unrepresentable {
    Formula offending;
};

/// Split a PSL formula into sharpening atoms and an NNF body. A sharpening
/// atom that is negated or nested below the top-level conjunction makes the
/// result Unrepresentable. Throws FragmentError on X/U.
std::variant<NormalizedPsl, Unrepresentable> normalize_for_theorem(const Formula& f);

/// Override for the grid shape; the family must be the one generated by
/// `phi1` over a universe that includes every standpoint of `phi2`.
struct GridSpec {
    SFamily family;
    std::size_t n;
};

/// Decides phi1 & phi2 on the grid family x {1..n}, with n = N1 + N2 + 1
/// (N1 standpoints including *, N2 diamond occurrences in phi2) unless
/// `grid` overrides the shape. The designated cell is (S*, 1).
///
/// Modal subformulas have the same truth value at every cell, so the search
/// guesses which of them hold. Because phi2 is in NNF, a guess only has to
/// enforce the modalities guessed true: each true box constrains every cell of
/// its standpoint, and each true diamond needs one witness cell.
std::optional<PslWitness> psl_sat(std::span<const SharpeningAtom> phi1, const Formula& phi2,
                                  const std::optional<GridSpec>& grid = std::nullopt);

/// Any PSL formula: tries each partition of its sharpening atoms (fewest
/// false atoms first) and decides the resulting normalized formula.
std::optional<PslWitness> psl_sat_general(const Formula& f);

/// True iff the conjunction is PSL-satisfiable. Results are memoized in a
/// process-wide, thread-safe cache unless `use_cache` is false. Throws
/// FragmentError if a member contains X or U.
bool standpoint_consistent(std::span<const Formula> conj, bool use_cache = true);
void clear_consistency_cache();

} // namespace sltl
