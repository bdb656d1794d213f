#include "qnblp/statevec.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qnblp {

namespace {

using cd = std::complex<double>;

std::uint64_t bit_mask(QubitIndex width, QubitIndex qubit) {
  return 1ull << (width - 1 - qubit);
}

}  // namespace

StateVector::StateVector(QubitIndex width) : width_(width) {
  if (width == 0 || width > kMaxSimWidth) {
    throw WidthCapExceeded("state vector width must be in [1, " +
                           std::to_string(kMaxSimWidth) + "], got " +
                           std::to_string(width));
  }
  amps_.assign(1ull << width, cd(0.0, 0.0));
  amps_[0] = cd(1.0, 0.0);
}

StateVector StateVector::from_amplitudes(QubitIndex width,
                                         std::vector<cd> amps) {
  StateVector state(width);
  if (amps.size() != state.amps_.size()) {
    throw LengthMismatch("amplitude vector must have dimension 2^width");
  }
  state.amps_ = std::move(amps);
  return state;
}

double StateVector::norm() const {
  double total = 0.0;
  for (const cd& a : amps_) {
    total += std::norm(a);
  }
  return std::sqrt(total);
}

namespace detail {

void apply_gate_span(std::span<cd> amps, QubitIndex width, const Gate& gate) {
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::uint64_t dim = amps.size();
  switch (gate.kind) {
    case GateKind::H: {
      const std::uint64_t m = bit_mask(width, gate.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        const cd a = amps[i];
        const cd b = amps[i | m];
        amps[i] = (a + b) * inv_sqrt2;
        amps[i | m] = (a - b) * inv_sqrt2;
      }
      return;
    }
    case GateKind::X: {
      const std::uint64_t m = bit_mask(width, gate.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        std::swap(amps[i], amps[i | m]);
      }
      return;
    }
    case GateKind::Z: {
      const std::uint64_t m = bit_mask(width, gate.qubits[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) amps[i] = -amps[i];
      }
      return;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      const std::uint64_t m = bit_mask(width, gate.qubits[0]);
      const cd phase(0.0, gate.kind == GateKind::S ? 1.0 : -1.0);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) amps[i] *= phase;
      }
      return;
    }
    case GateKind::T:
    case GateKind::Tdg: {
      const std::uint64_t m = bit_mask(width, gate.qubits[0]);
      const double sign = gate.kind == GateKind::T ? 1.0 : -1.0;
      const cd phase(inv_sqrt2, sign * inv_sqrt2);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) amps[i] *= phase;
      }
      return;
    }
    case GateKind::Cnot: {
      const std::uint64_t cm = bit_mask(width, gate.qubits[0]);
      const std::uint64_t tm = bit_mask(width, gate.qubits[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cm) && !(i & tm)) {
          std::swap(amps[i], amps[i | tm]);
        }
      }
      return;
    }
    case GateKind::Cz: {
      const std::uint64_t am = bit_mask(width, gate.qubits[0]);
      const std::uint64_t bm = bit_mask(width, gate.qubits[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & am) && (i & bm)) amps[i] = -amps[i];
      }
      return;
    }
    case GateKind::ToffoliMacro: {
      const std::uint64_t c1 = bit_mask(width, gate.qubits[0]);
      const std::uint64_t c2 = bit_mask(width, gate.qubits[1]);
      const std::uint64_t tm = bit_mask(width, gate.qubits[2]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & c1) && (i & c2) && !(i & tm)) {
          std::swap(amps[i], amps[i | tm]);
        }
      }
      return;
    }
    case GateKind::CRkMacro: {
      const std::uint64_t cm = bit_mask(width, gate.qubits[0]);
      const std::uint64_t tm = bit_mask(width, gate.qubits[1]);
      const double order = std::ldexp(1.0, std::abs(gate.k));
      const double angle =
          (gate.k > 0 ? 1.0 : -1.0) * 2.0 * std::numbers::pi / order;
      const cd phase = std::polar(1.0, angle);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cm) && (i & tm)) amps[i] *= phase;
      }
      return;
    }
    case GateKind::RzMacro: {
      const std::uint64_t m = bit_mask(width, gate.qubits[0]);
      const cd phase = std::polar(1.0, gate.angle);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & m) amps[i] *= phase;
      }
      return;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

}  // namespace detail

void apply_gate(StateVector& state, const Gate& gate) {
  gate.check_distinct();
  for (QubitIndex q : gate.operands()) {
    if (q >= state.width()) {
      throw OperandOutOfRange("gate touches qubit " + std::to_string(q) +
                              " in a width-" + std::to_string(state.width()) +
                              " state");
    }
  }
  detail::apply_gate_span(state.amplitudes(), state.width(), gate);
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
  if (circuit.width() != state.width()) {
    throw WidthMismatch("circuit width " + std::to_string(circuit.width()) +
                        " does not match state width " +
                        std::to_string(state.width()));
  }
  for (const Layer& layer : circuit.layers()) {
    for (const Gate& gate : layer) {
      detail::apply_gate_span(state.amplitudes(), state.width(), gate);
    }
  }
}

MeasurementRecord measure(StateVector& state, QubitIndex qubit,
                          RngStream& rng) {
  if (qubit >= state.width()) {
    throw OperandOutOfRange("measured qubit out of range");
  }
  auto& amps = state.amplitudes();
  const std::uint64_t m = bit_mask(state.width(), qubit);
  double p_one = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & m) p_one += std::norm(amps[i]);
  }
  const int outcome = rng.uniform() < p_one ? 1 : 0;
  const double p_outcome = outcome == 1 ? p_one : 1.0 - p_one;
  const double scale = p_outcome > 0.0 ? 1.0 / std::sqrt(p_outcome) : 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const bool is_one = (i & m) != 0;
    if (is_one == (outcome == 1)) {
      amps[i] *= scale;
    } else {
      amps[i] = cd(0.0, 0.0);
    }
  }
  return {qubit, outcome, p_outcome};
}

std::vector<double> distribution(const StateVector& state,
                                 std::span<const QubitIndex> qubits) {
  if (qubits.empty() || qubits.size() > 20) {
    throw TooManyQubits("distribution supports 1..20 qubits");
  }
  std::set<QubitIndex> seen;
  for (QubitIndex q : qubits) {
    if (q >= state.width()) {
      throw OperandOutOfRange("distribution qubit out of range");
    }
    if (!seen.insert(q).second) {
      throw DuplicateOperand("distribution qubits must be distinct");
    }
  }
  std::vector<std::uint64_t> masks;
  masks.reserve(qubits.size());
  for (QubitIndex q : qubits) {
    masks.push_back(bit_mask(state.width(), q));
  }
  std::vector<double> table(1ull << qubits.size(), 0.0);
  const auto& amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      idx = (idx << 1) | ((i & masks[j]) ? 1u : 0u);
    }
    table[idx] += p;
  }
  return table;
}

}  // namespace qnblp
