#pragma once

#include <string>

#include "qcut/circuit.hpp"

namespace qcut {

/// Parses the supported OpenQASM 2.0 subset: one quantum register, one
/// optional classical register, the declared gate set, and measure statements.
Circuit parse_qasm(const std::string& text);

/// Deterministic emitter; parse_qasm(emit_qasm(c)) == c.
std::string emit_qasm(const Circuit& circuit);

}  // namespace qcut
