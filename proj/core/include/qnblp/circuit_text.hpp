#pragma once

#include <string>

#include "qnblp/circuit.hpp"

namespace qnblp {

/// Serializes a circuit to the line-oriented text format:
///
///   width <w>
///   register <role> <i0> <i1> ... <ik>
///   <KIND> <q0> [q1] [q2]
///   ---
///
/// One gate per line; "---" terminates each layer. CRk is written as
/// "CRK <k> <ctrl> <tgt>" with a negative k for the adjoint, Rz as
/// "RZ <angle> <q>". Output is UTF-8 with LF line endings.
std::string export_text(const Circuit& circuit);

/// Parses the format produced by export_text. Unknown tokens, out-of-range
/// operands, and layer conflicts raise ParseError carrying the 1-based line.
/// import_text(export_text(c)) reproduces c layer for layer.
Circuit import_text(const std::string& text);

}  // namespace qnblp
