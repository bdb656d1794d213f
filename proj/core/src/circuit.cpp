#include "qnblp/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qnblp {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "TDG";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Cz: return "CZ";
    case GateKind::ToffoliMacro: return "TOFFOLI";
    case GateKind::CRkMacro: return "CRK";
    case GateKind::RzMacro: return "RZ";
  }
  return "?";
}

const char* to_string(RegisterRole role) {
  switch (role) {
    case RegisterRole::Address: return "Address";
    case RegisterRole::RoutingAncilla: return "RoutingAncilla";
    case RegisterRole::Data: return "Data";
    case RegisterRole::Memory: return "Memory";
    case RegisterRole::QueryExtra: return "QueryExtra";
    case RegisterRole::Algorithm: return "Algorithm";
  }
  return "?";
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RzMacro:
      return 1;
    case GateKind::Cnot:
    case GateKind::Cz:
    case GateKind::CRkMacro:
      return 2;
    case GateKind::ToffoliMacro:
      return 3;
  }
  return 0;
}

bool is_macro(GateKind kind) {
  return kind == GateKind::ToffoliMacro || kind == GateKind::CRkMacro ||
         kind == GateKind::RzMacro;
}

Gate Gate::unary(GateKind kind, QubitIndex q) {
  Gate g;
  g.kind = kind;
  g.qubits = {q, 0, 0};
  return g;
}

Gate Gate::cnot(QubitIndex control, QubitIndex target) {
  Gate g;
  g.kind = GateKind::Cnot;
  g.qubits = {control, target, 0};
  g.check_distinct();
  return g;
}

Gate Gate::cz(QubitIndex a, QubitIndex b) {
  Gate g;
  g.kind = GateKind::Cz;
  g.qubits = {a, b, 0};
  g.check_distinct();
  return g;
}

Gate Gate::toffoli(QubitIndex c1, QubitIndex c2, QubitIndex target) {
  Gate g;
  g.kind = GateKind::ToffoliMacro;
  g.qubits = {c1, c2, target};
  g.check_distinct();
  return g;
}

Gate Gate::crk(int k, QubitIndex control, QubitIndex target) {
  if (k == 0) {
    throw std::invalid_argument("CRk order must be a nonzero integer");
  }
  Gate g;
  g.kind = GateKind::CRkMacro;
  g.qubits = {control, target, 0};
  g.k = k;
  g.check_distinct();
  return g;
}

Gate Gate::rz(double angle, QubitIndex q) {
  Gate g;
  g.kind = GateKind::RzMacro;
  g.qubits = {q, 0, 0};
  g.angle = angle;
  return g;
}

void Gate::check_distinct() const {
  const auto ops = operands();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (ops[i] == ops[j]) {
        throw DuplicateOperand("gate " + std::string(to_string(kind)) +
                               " names qubit " + std::to_string(ops[i]) +
                               " twice");
      }
    }
  }
}

bool Gate::operator==(const Gate& other) const {
  if (kind != other.kind) return false;
  const auto a = operands();
  const auto b = other.operands();
  if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) return false;
  if (kind == GateKind::CRkMacro && k != other.k) return false;
  if (kind == GateKind::RzMacro && angle != other.angle) return false;
  return true;
}

Gate adjoint(const Gate& gate) {
  Gate g = gate;
  switch (gate.kind) {
    case GateKind::S: g.kind = GateKind::Sdg; break;
    case GateKind::Sdg: g.kind = GateKind::S; break;
    case GateKind::T: g.kind = GateKind::Tdg; break;
    case GateKind::Tdg: g.kind = GateKind::T; break;
    case GateKind::CRkMacro: g.k = -gate.k; break;
    case GateKind::RzMacro: g.angle = -gate.angle; break;
    default: break;  // H, X, Z, CNOT, CZ, Toffoli are self-inverse
  }
  return g;
}

Circuit::Circuit(QubitIndex width, std::string label)
    : width_(width), label_(std::move(label)) {}

void Circuit::set_register(RegisterRole role, std::vector<QubitIndex> qubits) {
  std::set<QubitIndex> seen;
  for (const auto& [other_role, other_qubits] : registers_) {
    if (other_role == role) continue;
    seen.insert(other_qubits.begin(), other_qubits.end());
  }
  for (QubitIndex q : qubits) {
    if (q >= width_) {
      throw OperandOutOfRange("register " + std::string(to_string(role)) +
                              " refers to qubit " + std::to_string(q) +
                              " in a width-" + std::to_string(width_) +
                              " circuit");
    }
    if (!seen.insert(q).second) {
      throw RegisterMismatch("qubit " + std::to_string(q) +
                             " assigned to more than one register");
    }
  }
  registers_[role] = std::move(qubits);
}

void Circuit::check_gate(const Gate& gate) const {
  gate.check_distinct();
  for (QubitIndex q : gate.operands()) {
    if (q >= width_) {
      throw OperandOutOfRange("gate " + std::string(to_string(gate.kind)) +
                              " touches qubit " + std::to_string(q) +
                              " in a width-" + std::to_string(width_) +
                              " circuit");
    }
  }
}

namespace {

bool intersects(const Gate& gate, const Layer& layer) {
  for (const Gate& other : layer) {
    for (QubitIndex q : gate.operands()) {
      for (QubitIndex p : other.operands()) {
        if (q == p) return true;
      }
    }
  }
  return false;
}

}  // namespace

void Circuit::append(const Gate& gate, Placement placement) {
  check_gate(gate);
  switch (placement.kind) {
    case Placement::Kind::NewLayer:
      layers_.push_back({gate});
      return;
    case Placement::Kind::IntoLayer: {
      if (placement.layer >= layers_.size()) {
        throw LayerConflict("layer " + std::to_string(placement.layer) +
                            " does not exist");
      }
      Layer& layer = layers_[placement.layer];
      if (intersects(gate, layer)) {
        throw LayerConflict("gate " + std::string(to_string(gate.kind)) +
                            " overlaps layer " +
                            std::to_string(placement.layer));
      }
      layer.push_back(gate);
      return;
    }
    case Placement::Kind::Asap: {
      // Earliest slot after the last layer touching any operand qubit.
      std::size_t first_free = 0;
      for (std::size_t i = layers_.size(); i-- > 0;) {
        if (intersects(gate, layers_[i])) {
          first_free = i + 1;
          break;
        }
      }
      if (first_free == layers_.size()) {
        layers_.push_back({gate});
      } else {
        layers_[first_free].push_back(gate);
      }
      return;
    }
  }
}

void Circuit::append_layer(std::span<const Gate> gates) {
  if (gates.empty()) return;
  Layer layer;
  for (const Gate& gate : gates) {
    check_gate(gate);
    if (intersects(gate, layer)) {
      throw LayerConflict("gates within one layer must touch disjoint qubits");
    }
    layer.push_back(gate);
  }
  layers_.push_back(std::move(layer));
}

namespace {

void merge_registers(
    std::map<RegisterRole, std::vector<QubitIndex>>& target,
    const std::map<RegisterRole, std::vector<QubitIndex>>& source) {
  for (const auto& [role, qubits] : source) {
    auto it = target.find(role);
    if (it == target.end()) {
      target.emplace(role, qubits);
    } else if (it->second != qubits) {
      throw RegisterMismatch("register " + std::string(to_string(role)) +
                             " declared with different qubits");
    }
  }
}

}  // namespace

void Circuit::append_circuit(const Circuit& other) {
  if (other.width_ != width_) {
    throw WidthMismatch("cannot append a width-" +
                        std::to_string(other.width_) +
                        " circuit to a width-" + std::to_string(width_) +
                        " one");
  }
  merge_registers(registers_, other.registers_);
  layers_.insert(layers_.end(), other.layers_.begin(), other.layers_.end());
}

std::size_t Circuit::gate_count() const {
  std::size_t count = 0;
  for (const Layer& layer : layers_) {
    count += layer.size();
  }
  return count;
}

void Circuit::validate() const {
  for (const auto& [role, qubits] : registers_) {
    for (QubitIndex q : qubits) {
      if (q >= width_) {
        throw OperandOutOfRange("register " + std::string(to_string(role)) +
                                " out of range");
      }
    }
  }
  for (const Layer& layer : layers_) {
    if (layer.empty()) {
      throw LayerConflict("empty layer");
    }
    std::set<QubitIndex> used;
    for (const Gate& gate : layer) {
      check_gate(gate);
      for (QubitIndex q : gate.operands()) {
        if (!used.insert(q).second) {
          throw LayerConflict("two gates in one layer touch qubit " +
                              std::to_string(q));
        }
      }
    }
  }
}

bool Circuit::operator==(const Circuit& other) const {
  return width_ == other.width_ && registers_ == other.registers_ &&
         layers_ == other.layers_;
}

Circuit compose(const Circuit& a, const Circuit& b, ComposePolicy policy) {
  if (b.width() != a.width()) {
    throw WidthMismatch("compose needs equal widths, got " +
                        std::to_string(a.width()) + " and " +
                        std::to_string(b.width()));
  }
  if (policy == ComposePolicy::Sequence) {
    Circuit out = a;
    out.append_circuit(b);
    return out;
  }
  // Merge: take b's registers through the same compatibility check, then
  // re-place b's gates in order so disjoint structure slides into a's tail.
  Circuit registers_only(b.width());
  for (const auto& [role, qubits] : b.registers()) {
    registers_only.set_register(role, qubits);
  }
  Circuit merged = a;
  merged.append_circuit(registers_only);
  for (const Layer& layer : b.layers()) {
    for (const Gate& gate : layer) {
      merged.append(gate, Placement::asap());
    }
  }
  return merged;
}

Circuit inverse(const Circuit& circuit) {
  Circuit out(circuit.width(), circuit.label());
  for (const auto& [role, qubits] : circuit.registers()) {
    out.set_register(role, qubits);
  }
  const auto& layers = circuit.layers();
  for (std::size_t i = layers.size(); i-- > 0;) {
    Layer reversed;
    reversed.reserve(layers[i].size());
    for (const Gate& gate : layers[i]) {
      reversed.push_back(adjoint(gate));
    }
    out.append_layer(reversed);
  }
  return out;
}

ResourceMetrics metrics(const Circuit& circuit) {
  ResourceMetrics m;
  m.width = circuit.width();
  m.total_depth = static_cast<std::int64_t>(circuit.depth());
  bool macros = false;
  std::int64_t t_count = 0;
  std::int64_t t_depth = 0;
  for (const Layer& layer : circuit.layers()) {
    bool layer_has_t = false;
    for (const Gate& gate : layer) {
      ++m.gate_histogram[gate.kind];
      macros = macros || is_macro(gate.kind);
      if (gate.kind == GateKind::T || gate.kind == GateKind::Tdg) {
        ++t_count;
        layer_has_t = true;
      }
    }
    if (layer_has_t) ++t_depth;
  }
  if (!macros) {
    m.t_count = t_count;
    m.t_depth = t_depth;
  }
  return m;
}

std::pair<std::int64_t, std::int64_t> t_metrics(const Circuit& circuit) {
  ResourceMetrics m = metrics(circuit);
  if (!m.t_count || !m.t_depth) {
    throw MacroPresent("T metrics need a macro-free circuit; lower "
                       "Toffoli/CRk/Rz macros first");
  }
  return {*m.t_count, *m.t_depth};
}

}  // namespace qnblp
