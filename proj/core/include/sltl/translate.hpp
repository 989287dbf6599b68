#pragma once

#include "sltl/formula.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace sltl {

/// A truth assignment to the sharpening atoms of a formula: atoms in
/// `i_plus` are assumed true, atoms in `i_minus` false.
struct Partition {
    std::set<SharpeningAtom> i_plus;
    std::set<SharpeningAtom> i_minus;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// All partitions of the sharpening atoms of `f`, ordered by |i_minus|
/// ascending, then by the first-occurrence positions of the atoms in
/// `i_minus`. Throws ResourceError above 24 atoms.
std::vector<Partition> partitions(const Formula& f);

/// Proposition standing for a standpoint in the PTL x S5 and S5 images. The
/// standpoint's own name is used unless it clashes with a proposition of the
/// source formula or is not a plain identifier; then `$sp_<name>` is used.
using StandpointProps = std::map<Standpoint, std::string>;
StandpointProps standpoint_props(const Formula& f);

/// Fresh proposition witnessing a false sharpening atom: `$sh_<s>_<s'>`.
std::string sharpening_witness(const SharpeningAtom& atom);

/// Witness names for a list of atoms. Names that would coincide (possible
/// when standpoint names contain `_`) get the atom's position appended.
std::vector<std::string> sharpening_witnesses(const std::vector<SharpeningAtom>& atoms);

/// PTL x S5 to SLTL. PTL x S5 formulas already use `<@*>` / `[@*]` for the S5
/// modality, so this checks the sublanguage and returns `f` unchanged.
/// Throws FragmentError on any other standpoint or a sharpening atom.
Formula t1(const Formula& f);

/// SLTL to PTL x S5 body: `<@s> g` becomes `<@*>(s & g)`, `[@s] g` becomes
/// `[@*](s -> g)`, and `@s <= @s'` becomes `[@*](s -> s')`. `@*` in an atom
/// position stands for `true`.
Formula t2(const Formula& f);
Formula t2(const Formula& f, const StandpointProps& names);

/// Rigidity guard: each standpoint is non-empty and fixed along every trace.
/// `true` for an empty list. Throws Error if the list contains `*`.
Formula chi_n(std::span<const Standpoint> standpoints);
Formula chi_n(std::span<const Standpoint> standpoints, const StandpointProps& names);

/// chi_n(standpoints of f in first-occurrence order) & t2(f).
Formula sltl_to_ptls5(const Formula& f);

/// PSL to S5: non-emptiness guards for every standpoint, then t2's clauses.
/// Throws FragmentError on a temporal operator.
Formula psl_to_s5(const Formula& f);

/// Renames every Until bottom-up to `$u<k>` and adds the defining conjunct
/// `[@*] G($uk <-> b | (a & X(a U b)))`, where X(a U b) is the strict until.
/// Formulas without Until are returned unchanged.
Formula until_to_strict(const Formula& f);

/// f[I+ -> true, I- -> false] & G(body), where body conjoins the I+ atoms and,
/// for each (s, s') in I-, `<@s> w & !<@s'> w` with w = sharpening_witness.
/// Throws Error unless `d` partitions exactly the sharpening atoms of `f`.
Formula build_phi_d(const Formula& f, const Partition& d);

/// Binary counter over p1..pn (p1 most significant). Throws Error for n = 0.
Formula gen_counter(std::size_t n);

/// G(<@s>(C_n & p & X G !p)). Throws Error for n = 0.
Formula gen_phi_c(std::size_t n);

} // namespace sltl
