#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnblp/errors.hpp"

namespace qnblp {

using QubitIndex = std::uint32_t;

enum class GateKind {
  H,
  X,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  Cnot,
  Cz,
  ToffoliMacro,
  CRkMacro,
  RzMacro,
};

enum class RegisterRole {
  Address,
  RoutingAncilla,
  Data,
  Memory,
  QueryExtra,
  Algorithm,
};

const char* to_string(GateKind kind);
const char* to_string(RegisterRole role);

int gate_arity(GateKind kind);
bool is_macro(GateKind kind);

/// One gate application. Operands are qubit indices into the owning circuit.
///
/// CRkMacro stores the rotation order in `k`: the gate phases |11> by
/// exp(2*pi*i / 2^|k|), with k < 0 marking the adjoint. RzMacro stores a free
/// angle and phases |1> by exp(i*angle).
struct Gate {
  GateKind kind = GateKind::H;
  std::array<QubitIndex, 3> qubits{};
  int k = 0;
  double angle = 0.0;

  static Gate h(QubitIndex q) { return unary(GateKind::H, q); }
  static Gate x(QubitIndex q) { return unary(GateKind::X, q); }
  static Gate z(QubitIndex q) { return unary(GateKind::Z, q); }
  static Gate s(QubitIndex q) { return unary(GateKind::S, q); }
  static Gate sdg(QubitIndex q) { return unary(GateKind::Sdg, q); }
  static Gate t(QubitIndex q) { return unary(GateKind::T, q); }
  static Gate tdg(QubitIndex q) { return unary(GateKind::Tdg, q); }
  static Gate cnot(QubitIndex control, QubitIndex target);
  static Gate cz(QubitIndex a, QubitIndex b);
  static Gate toffoli(QubitIndex c1, QubitIndex c2, QubitIndex target);
  static Gate crk(int k, QubitIndex control, QubitIndex target);
  static Gate rz(double angle, QubitIndex q);

  int arity() const { return gate_arity(kind); }
  std::span<const QubitIndex> operands() const {
    return {qubits.data(), static_cast<std::size_t>(arity())};
  }
  /// Throws DuplicateOperand if the same qubit appears twice.
  void check_distinct() const;

  bool operator==(const Gate& other) const;

 private:
  static Gate unary(GateKind kind, QubitIndex q);
};

/// The adjoint gate: self-inverse kinds map to themselves, S/T swap with
/// their daggers, CRk negates k, Rz negates the angle.
Gate adjoint(const Gate& gate);

/// Gates sharing a layer act on disjoint qubits, so a layer is one time step.
using Layer = std::vector<Gate>;

/// Where append() puts a gate.
struct Placement {
  enum class Kind { Asap, NewLayer, IntoLayer };
  Kind kind = Kind::Asap;
  std::size_t layer = 0;

  /// Earliest layer after the last gate sharing a qubit; gates are never
  /// reordered past one another on a shared wire.
  static Placement asap() { return {Kind::Asap, 0}; }
  static Placement new_layer() { return {Kind::NewLayer, 0}; }
  static Placement into_layer(std::size_t index) { return {Kind::IntoLayer, index}; }
};

/// A layered Clifford+T(+macro) circuit over `width` qubits.
///
/// Register declarations name disjoint qubit groups by role; they do not
/// change semantics, only reporting and composition checks. The label is
/// free-form metadata and excluded from equality.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(QubitIndex width, std::string label = "");

  QubitIndex width() const { return width_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const std::vector<Layer>& layers() const { return layers_; }
  const std::map<RegisterRole, std::vector<QubitIndex>>& registers() const {
    return registers_;
  }
  /// Declares (or replaces) a register; qubits must be in range and distinct
  /// across all declared roles.
  void set_register(RegisterRole role, std::vector<QubitIndex> qubits);

  void append(const Gate& gate, Placement placement = Placement::asap());
  /// Appends all gates as one new layer; their supports must be disjoint.
  void append_layer(std::span<const Gate> gates);
  /// Appends every layer of `other` after this circuit's layers
  /// (widths must match; register maps must be compatible).
  void append_circuit(const Circuit& other);

  std::size_t gate_count() const;
  std::size_t depth() const { return layers_.size(); }

  /// Re-checks every structural invariant (ranges, arity, layer disjointness).
  void validate() const;

  /// Structural equality: width, registers, layers. Labels are ignored.
  bool operator==(const Circuit& other) const;

 private:
  void check_gate(const Gate& gate) const;

  QubitIndex width_ = 0;
  std::string label_;
  std::map<RegisterRole, std::vector<QubitIndex>> registers_;
  std::vector<Layer> layers_;
};

enum class ComposePolicy {
  /// b's layers follow a's unchanged.
  Sequence,
  /// b's gates are re-placed one by one with ASAP, so disjoint tails merge.
  Merge,
};

/// Concatenation a then b. Widths must match; register roles present in both
/// must agree exactly, and the result carries the union.
Circuit compose(const Circuit& a, const Circuit& b,
                ComposePolicy policy = ComposePolicy::Sequence);

/// Layer-reversed adjoint; inverse(inverse(c)) == c.
Circuit inverse(const Circuit& circuit);

/// Resource counts derived from the layer structure.
///
/// t_count/t_depth are present only when the circuit contains no macro gates;
/// metrics() never throws, t_metrics() throws MacroPresent instead of
/// returning empty optionals. total_depth counts layers; t_depth counts layers
/// containing at least one T or Tdg. No commutation-based re-layering is done.
struct ResourceMetrics {
  std::optional<std::int64_t> t_count;
  std::optional<std::int64_t> t_depth;
  std::int64_t total_depth = 0;
  std::int64_t width = 0;
  std::map<GateKind, std::int64_t> gate_histogram;
};

ResourceMetrics metrics(const Circuit& circuit);
/// (t_count, t_depth); throws MacroPresent if any macro gate remains.
std::pair<std::int64_t, std::int64_t> t_metrics(const Circuit& circuit);

}  // namespace qnblp
