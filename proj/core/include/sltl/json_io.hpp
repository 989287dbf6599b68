#pragma once

#include "sltl/psl.hpp"
#include "sltl/solver.hpp"

#include <string>
#include <string_view>

namespace sltl {

/// Witness schema:
///   {"prefix_len": k, "period_len": l,
///    "traces": {"t0": [["p", "q"], ...], ...},
///    "lambda": {"@s": ["t0", ...], "@*": [...]},
///    "designated": "t0"}
/// Each valuation list has k + l entries.
inline constexpr std::string_view kWitnessSchema =
    R"({"prefix_len":k,"period_len":l,"traces":{"t0":[["p",...],...],...},"lambda":{"@s":["t0",...],"@*":[...]},"designated":"t0"})";

/// `indent` < 0 gives one line.
std::string witness_to_json(const Witness& w, int indent = -1);

/// Throws ModelError naming the offending field on malformed input.
Witness witness_from_json(std::string_view text);

/// {"s_family": [["@*"], ["@*", "@s"]], "n": 3, "valuation": {"0,1": ["p"], ...}, "designated": "0,1"}
std::string psl_witness_to_json(const PslWitness& w, int indent = -1);

/// {"status": "sat|unsat|unknown|out_of_fragment", "engine": ..., "partition": ..., "witness": ...}
/// plus "bounds", "translation" and "details" when present.
std::string verdict_to_json(const Verdict& v, int indent = -1);

} // namespace sltl
