#pragma once

// PSL satisfiability by brute force over realized types.
//
// A precisification's type is its valuation of the props together with the
// standpoints it belongs to. Truth of a PSL formula at a precisification
// depends only on its type and on the set T of types realized in the model,
// so a formula is satisfiable iff some T (non-empty, with every standpoint
// realized) and some type in T make it true. Every finite PSL model,
// including every grid model, realizes such a T; conversely every T is
// realized by a model with one precisification per type.

#include "sltl/formula.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sltl::testing {

class TypeOracle {
public:
    /// At most 4 props + standpoints in total (`*` is implicit).
    TypeOracle(std::vector<std::string> props, std::vector<std::string> standpoints);

    /// For every type set T (index), the mask of types in T where `f` holds.
    using Table = std::vector<std::uint16_t>;

    Table eval(const Formula& f) const;
    bool satisfiable(const Table& t) const;
    bool satisfiable(const Formula& f) const { return satisfiable(eval(f)); }

    // Building blocks for callers that compose tables bottom-up.
    Table prop(std::size_t k) const;
    Table top() const;
    Table bottom() const;
    Table sharper(int s, int s2) const;  // standpoint indices, -1 for *
    Table neg(const Table& a) const;
    Table conj(const Table& a, const Table& b) const;
    Table disj(const Table& a, const Table& b) const;
    Table diamond(int s, const Table& a) const;
    Table box(int s, const Table& a) const;

    std::size_t type_count() const { return ntypes_; }
    std::size_t set_count() const { return nsets_; }

private:
    std::uint16_t members(int s) const; // types carrying s
    int standpoint_index(const Standpoint& s) const;

    std::vector<std::string> props_;
    std::vector<std::string> sps_;
    std::size_t ntypes_;
    std::size_t nsets_;
    std::vector<std::uint8_t> valid_; // per type set: every standpoint realized
};

} // namespace sltl::testing
