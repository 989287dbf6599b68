#pragma once

#include "sltl/formula.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sltl {

/// Negation normal form. Negations end up on Prop and Sharper atoms, except
/// that a negated Until is kept as `!(a U b)` with NNF operands: the AST has
/// no release operator to push the negation into.
Formula to_nnf(const Formula& f);

enum class Fragment { PSL, PureLTL, LtlPsl, FullSLTL };

std::string_view to_string(Fragment fr);

/// Smallest fragment containing `f`. PSL is tested first, so purely
/// propositional formulas classify as PSL.
Fragment classify(const Formula& f);

struct Vocabulary {
    std::set<std::string> props;
    /// Includes `*` whenever any standpoint occurs.
    std::set<Standpoint> standpoints;
    std::set<SharpeningAtom> sharpening_atoms;
};

Vocabulary vocab(const Formula& f);

/// Standpoints in order of first occurrence (pre-order, left to right),
/// without `*`.
std::vector<Standpoint> standpoints_in_order(const Formula& f);

/// Sharpening atoms in order of first occurrence.
std::vector<SharpeningAtom> sharpening_atoms_in_order(const Formula& f);

/// Replace every sharpening atom by `true` if it is in `positive`, otherwise
/// by `false`.
Formula substitute_sharper(const Formula& f, const std::set<SharpeningAtom>& positive);

/// True if the formula contains no X or U.
bool is_temporal_free(const Formula& f);

/// True if the formula contains no modality and no sharpening atom.
bool is_standpoint_free(const Formula& f);

} // namespace sltl
