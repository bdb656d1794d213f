#include "qnblp/circuit_text.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qnblp {

namespace {

std::string format_angle(double angle) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", angle);
  return buffer;
}

std::optional<GateKind> kind_from_token(const std::string& token) {
  if (token == "H") return GateKind::H;
  if (token == "X") return GateKind::X;
  if (token == "Z") return GateKind::Z;
  if (token == "S") return GateKind::S;
  if (token == "SDG") return GateKind::Sdg;
  if (token == "T") return GateKind::T;
  if (token == "TDG") return GateKind::Tdg;
  if (token == "CNOT") return GateKind::Cnot;
  if (token == "CZ") return GateKind::Cz;
  if (token == "TOFFOLI") return GateKind::ToffoliMacro;
  if (token == "CRK") return GateKind::CRkMacro;
  if (token == "RZ") return GateKind::RzMacro;
  return std::nullopt;
}

std::optional<RegisterRole> role_from_token(const std::string& token) {
  if (token == "Address") return RegisterRole::Address;
  if (token == "RoutingAncilla") return RegisterRole::RoutingAncilla;
  if (token == "Data") return RegisterRole::Data;
  if (token == "Memory") return RegisterRole::Memory;
  if (token == "QueryExtra") return RegisterRole::QueryExtra;
  if (token == "Algorithm") return RegisterRole::Algorithm;
  return std::nullopt;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    tokens.push_back(token);
  }
  return tokens;
}

QubitIndex parse_qubit(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(token, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a qubit index, got '" + token + "'", line_no);
  }
  if (used != token.size() || token[0] == '-') {
    throw ParseError("expected a qubit index, got '" + token + "'", line_no);
  }
  return static_cast<QubitIndex>(value);
}

}  // namespace

std::string export_text(const Circuit& circuit) {
  std::string out;
  out += "width " + std::to_string(circuit.width()) + "\n";
  for (const auto& [role, qubits] : circuit.registers()) {
    out += "register ";
    out += to_string(role);
    for (QubitIndex q : qubits) {
      out += " " + std::to_string(q);
    }
    out += "\n";
  }
  for (const Layer& layer : circuit.layers()) {
    for (const Gate& gate : layer) {
      out += to_string(gate.kind);
      if (gate.kind == GateKind::CRkMacro) {
        out += " " + std::to_string(gate.k);
      } else if (gate.kind == GateKind::RzMacro) {
        out += " " + format_angle(gate.angle);
      }
      for (QubitIndex q : gate.operands()) {
        out += " " + std::to_string(q);
      }
      out += "\n";
    }
    out += "---\n";
  }
  return out;
}

Circuit import_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  bool width_seen = false;
  Circuit circuit;
  Layer pending;
  bool any_layer_content = false;

  auto flush_layer = [&](std::size_t at_line) {
    if (pending.empty()) {
      throw ParseError("layer terminator without any gates", at_line);
    }
    try {
      circuit.append_layer(pending);
    } catch (const Error& e) {
      throw ParseError(e.what(), at_line);
    }
    pending.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      throw ParseError("CRLF line ending; the format is LF only", line_no);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (tokens[0] == "width") {
      if (width_seen) {
        throw ParseError("duplicate width header", line_no);
      }
      if (tokens.size() != 2) {
        throw ParseError("width header takes exactly one value", line_no);
      }
      circuit = Circuit(parse_qubit(tokens[1], line_no));
      width_seen = true;
      continue;
    }
    if (tokens[0] == "register") {
      if (!width_seen) {
        throw ParseError("register header before width", line_no);
      }
      if (any_layer_content || !pending.empty()) {
        throw ParseError("register header after gates", line_no);
      }
      if (tokens.size() < 2) {
        throw ParseError("register header needs a role", line_no);
      }
      const auto role = role_from_token(tokens[1]);
      if (!role) {
        throw ParseError("unknown register role '" + tokens[1] + "'", line_no);
      }
      std::vector<QubitIndex> qubits;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        qubits.push_back(parse_qubit(tokens[i], line_no));
      }
      try {
        circuit.set_register(*role, std::move(qubits));
      } catch (const Error& e) {
        throw ParseError(e.what(), line_no);
      }
      continue;
    }
    if (tokens[0] == "---") {
      if (!width_seen) {
        throw ParseError("layer terminator before width header", line_no);
      }
      flush_layer(line_no);
      any_layer_content = true;
      continue;
    }

    if (!width_seen) {
      throw ParseError("gate line before width header", line_no);
    }
    const auto kind = kind_from_token(tokens[0]);
    if (!kind) {
      throw ParseError("unknown gate '" + tokens[0] + "'", line_no);
    }
    std::size_t cursor = 1;
    Gate gate;
    try {
      if (*kind == GateKind::CRkMacro) {
        if (tokens.size() != 4) {
          throw ParseError("CRK takes <k> <ctrl> <tgt>", line_no);
        }
        int k = 0;
        try {
          std::size_t used = 0;
          k = std::stoi(tokens[1], &used);
          if (used != tokens[1].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError("CRK order must be an integer", line_no);
        }
        cursor = 2;
        gate = Gate::crk(k, parse_qubit(tokens[2], line_no),
                         parse_qubit(tokens[3], line_no));
      } else if (*kind == GateKind::RzMacro) {
        if (tokens.size() != 3) {
          throw ParseError("RZ takes <angle> <q>", line_no);
        }
        double angle = 0.0;
        try {
          std::size_t used = 0;
          angle = std::stod(tokens[1], &used);
          if (used != tokens[1].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError("RZ angle must be a real number", line_no);
        }
        gate = Gate::rz(angle, parse_qubit(tokens[2], line_no));
        cursor = tokens.size();
      } else {
        const int arity = gate_arity(*kind);
        if (tokens.size() != static_cast<std::size_t>(arity) + 1) {
          throw ParseError(std::string(to_string(*kind)) + " takes " +
                               std::to_string(arity) + " qubit(s)",
                           line_no);
        }
        gate.kind = *kind;
        for (int i = 0; i < arity; ++i) {
          gate.qubits[static_cast<std::size_t>(i)] =
              parse_qubit(tokens[cursor + static_cast<std::size_t>(i)],
                          line_no);
        }
        gate.check_distinct();
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
    // Validate operand ranges right away for a line-accurate diagnostic.
    for (QubitIndex q : gate.operands()) {
      if (q >= circuit.width()) {
        throw ParseError("qubit " + std::to_string(q) +
                             " out of range for width " +
                             std::to_string(circuit.width()),
                         line_no);
      }
    }
    pending.push_back(gate);
  }

  if (!width_seen) {
    throw ParseError("missing width header", line_no == 0 ? 1 : line_no);
  }
  if (!pending.empty()) {
    throw ParseError("unterminated final layer (missing ---)", line_no);
  }
  circuit.validate();
  return circuit;
}

}  // namespace qnblp
