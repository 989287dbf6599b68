#pragma once

// Witness transport between SLTL and PTL x S5 models, following the model
// constructions behind the two reductions.

#include "sltl/formula.hpp"
#include "sltl/model.hpp"
#include "sltl/translate.hpp"

namespace sltl::testing {

/// PTL x S5 model to SLTL model for the t1 image: same traces, * is all of them.
SLTLModel ptl_to_sltl_identity(const PTLS5Model& m);

/// SLTL model to PTL x S5 model for chi_n & t2: every trace additionally
/// carries the proposition of each standpoint it belongs to, at every position.
PTLS5Model sltl_to_ptl_marked(const SLTLModel& m, const StandpointProps& names);

/// PTL x S5 model of chi_n & t2 back to SLTL: lambda(s) is the set of traces
/// where s's proposition holds at position 0; standpoint propositions are
/// removed from the valuations.
SLTLModel ptl_marked_to_sltl(const PTLS5Model& m, const StandpointProps& names);

} // namespace sltl::testing
