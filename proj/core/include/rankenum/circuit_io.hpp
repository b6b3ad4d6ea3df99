#pragma once

#include <string>
#include <string_view>

#include "rankenum/circuit.hpp"

namespace rankenum {

/// Parses the line-based circuit format:
///
///   circuit v1
///   domain <value>...
///   vars <var>...
///   gate <name> input <var> <value>
///   gate <name> and <child>...
///   gate <name> or <child>...
///   output <name>
///
/// '#' starts a comment, blank lines are ignored, gates must be declared
/// before use (declaration order is the topological order).
Circuit parse_circuit(std::string_view text);

/// Inverse of parse_circuit; gates are emitted in id order.
std::string format_circuit(const Circuit& c);

}  // namespace rankenum
