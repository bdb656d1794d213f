#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qnblp/circuit.hpp"
#include "qnblp/rng.hpp"

namespace qnblp {

/// Hard cap on dense simulation width (16 complex bytes per amplitude).
inline constexpr QubitIndex kMaxSimWidth = 24;

/// Dense state vector over `width` qubits.
///
/// Qubit 0 is the most significant bit of a basis index: |q0 q1 ... q_{w-1}>
/// has index q0*2^{w-1} + ... + q_{w-1}. Macro gates (Toffoli, CRk, Rz) are
/// simulated exactly without lowering.
class StateVector {
 public:
  /// |0...0> on `width` qubits.
  explicit StateVector(QubitIndex width);
  static StateVector from_amplitudes(QubitIndex width,
                                     std::vector<std::complex<double>> amps);

  QubitIndex width() const { return width_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }

  double norm() const;

 private:
  QubitIndex width_ = 0;
  std::vector<std::complex<double>> amps_;
};

struct MeasurementRecord {
  QubitIndex qubit = 0;
  int outcome = 0;
  /// Pre-collapse marginal probability of the recorded outcome.
  double probability = 0.0;
};

void apply_gate(StateVector& state, const Gate& gate);
void apply_circuit(StateVector& state, const Circuit& circuit);

/// Projective Z measurement of one qubit; collapses and renormalizes in
/// place. The outcome is 1 when the stream's uniform draw falls below the
/// |1> marginal, so a (0,1]-probability event is reproducible per stream.
MeasurementRecord measure(StateVector& state, QubitIndex qubit, RngStream& rng);

/// Marginal probabilities of the listed qubits (at most 20, distinct). The
/// first listed qubit is the most significant bit of the table index.
std::vector<double> distribution(const StateVector& state,
                                 std::span<const QubitIndex> qubits);

namespace detail {
/// Applies one gate to raw amplitudes of a width-qubit state. Shared by the
/// simulator and the dense-unitary builder.
void apply_gate_span(std::span<std::complex<double>> amps, QubitIndex width,
                     const Gate& gate);
}  // namespace detail

}  // namespace qnblp
