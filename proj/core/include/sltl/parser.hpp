#pragma once

#include "sltl/formula.hpp"

#include <string_view>

namespace sltl {

struct ParseOptions {
    /// Accept identifiers starting with `$`. These are reserved for names
    /// introduced by the translations; user input never needs them.
    bool allow_reserved = false;
};

/// Parse one formula. Throws ParseError with a 1-based line/column.
///
/// Grammar, loosest binding first:
///
///     iff     := implies ("<->" implies)*        left-assoc
///     implies := or ("->" implies)?              right-assoc
///     or      := and ("|" and)*
///     and     := until ("&" until)*
///     until   := unary ("U" until)?              right-assoc
///     unary   := ("!" | "X" | "F" | "G" | "<@s>" | "[@s]" | "<>" | "[]") unary
///              | atom
///     atom    := ident | "true" | "false" | "@s" "<=" "@s'" | "(" iff ")"
Formula parse(std::string_view text, const ParseOptions& opts = {});

} // namespace sltl
