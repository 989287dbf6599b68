#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sltl {

/// A standpoint symbol. The universal standpoint is spelled `*`.
class Standpoint {
public:
    explicit Standpoint(std::string name);

    static Standpoint universal() { return Standpoint("*"); }

    const std::string& name() const noexcept { return name_; }
    bool is_universal() const noexcept { return name_ == "*"; }

    friend bool operator==(const Standpoint&, const Standpoint&) = default;
    friend auto operator<=>(const Standpoint&, const Standpoint&) = default;

private:
    std::string name_;
};

using SharpeningAtom = std::pair<Standpoint, Standpoint>;

enum class Op : unsigned char {
    Prop,
    Top,
    Bottom,
    Sharper,
    Not,
    And,
    Or,
    Diamond,
    Box,
    Next,
    Until,
};

namespace detail {
struct Node;
}

/// Immutable, structurally compared formula handle.
///
/// Nodes are shared between formulas and never mutated after construction, so
/// handles may be copied and read from any thread. Construction goes through
/// the free functions below, which keep the invariants of the AST: there is no
/// `Not(Not(x))`, and `Not(Top)` / `Not(Bottom)` fold to `Bottom` / `Top`.
class Formula {
public:
    Formula() = default;

    explicit operator bool() const noexcept { return node_ != nullptr; }

    Op op() const noexcept;
    /// Proposition name (Prop only).
    const std::string& prop_name() const;
    /// Standpoint of a modality, or the left side of a sharpening atom.
    const Standpoint& standpoint() const;
    /// Right side of a sharpening atom.
    const Standpoint& rhs_standpoint() const;
    /// Sole child of Not/Diamond/Box/Next; left child of And/Or/Until.
    const Formula& lhs() const;
    const Formula& rhs() const;
    const Formula& child() const { return lhs(); }

    /// Node count.
    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;
    /// True if `o` occurs anywhere in this formula, the root included.
    bool contains_op(Op o) const noexcept;
    /// Identity of the underlying node; equal ids imply equal formulas.
    const void* identity() const noexcept { return node_.get(); }

    bool is_temporal_op() const noexcept { return op() == Op::Next || op() == Op::Until; }
    bool is_modal_op() const noexcept { return op() == Op::Diamond || op() == Op::Box; }

    friend bool operator==(const Formula& a, const Formula& b) noexcept;

private:
    friend struct detail::Node;
    friend Formula make_node(detail::Node&&);
    explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
    Op op = Op::Top;
    std::string name{};                   // Prop only
    Standpoint sp{std::string("*")};      // Diamond/Box, or sharpening lhs
    Standpoint sp2{std::string("*")};     // sharpening rhs
    Formula a{};
    Formula b{};
    std::size_t size = 1;
    std::size_t hash = 0;
    unsigned ops = 0;                     // bit per Op occurring in the subtree
};
} // namespace detail

inline Op Formula::op() const noexcept { return node_->op; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }
inline bool Formula::contains_op(Op o) const noexcept { return node_->ops >> static_cast<unsigned>(o) & 1U; }
inline const Formula& Formula::lhs() const { return node_->a; }
inline const Formula& Formula::rhs() const { return node_->b; }
inline const std::string& Formula::prop_name() const { return node_->name; }
inline const Standpoint& Formula::standpoint() const { return node_->sp; }
inline const Standpoint& Formula::rhs_standpoint() const { return node_->sp2; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Core constructors.
Formula prop(std::string name);
Formula top();
Formula bottom();
Formula sharper(Standpoint s, Standpoint s2);
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula diamond(Standpoint s, Formula f);
Formula box(Standpoint s, Formula f);
Formula next(Formula f);
Formula until(Formula a, Formula b);

// Sugar, expanded on construction.
Formula implies(Formula a, Formula b);      // !a | b
Formula iff(Formula a, Formula b);          // (a -> b) & (b -> a)
Formula eventually(Formula f);              // true U f
Formula always(Formula f);                  // !(true U !f)

/// Left-nested conjunction; `top()` for an empty list.
Formula conj_all(std::span<const Formula> fs);
/// Left-nested disjunction; `bottom()` for an empty list.
Formula disj_all(std::span<const Formula> fs);

/// Canonical text form, accepted back by `parse`.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);
std::string to_string(const Standpoint& s);

/// Distinct subformulas in post-order (children before parents).
std::vector<Formula> subformulas(const Formula& f);

/// Deterministic total order: by size, then canonical text.
bool canonical_less(const Formula& a, const Formula& b);

} // namespace sltl

template <>
struct std::hash<sltl::Formula> {
    std::size_t operator()(const sltl::Formula& f) const noexcept { return f.hash(); }
};
