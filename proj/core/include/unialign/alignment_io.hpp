#pragma once

#include <string>

#include "unialign/flow_align.hpp"

namespace unialign {

/// Move table, one move per line: kind, model label, log label, cost.
/// Ends with a "total" line.
std::string format_move_table(const Alignment& alignment);

/// JSON object with the alignment's moves, counts, method and total cost
/// (exact rational string plus a decimal approximation).
std::string alignment_to_json(const Alignment& alignment, int indent = 2);

}  // namespace unialign
