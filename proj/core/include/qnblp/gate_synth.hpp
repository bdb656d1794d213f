#pragma once

#include <cstdint>

#include "qnblp/circuit.hpp"

namespace qnblp {

/// Exact Toffoli over {H, T, Tdg, CNOT}: seven T gates in exactly four
/// T layers, equal to the Toffoli matrix with no global phase.
///
/// The layout phases the seven GF(2) forms a, b, c, a^b, b^c, a^c, a^b^c of
/// the control/target wires between CNOT relabelings, conjugated by H on the
/// target. `width` widens the containing circuit (default: max operand + 1)
/// so disjoint instances can be composed.
Circuit decompose_toffoli(QubitIndex control1, QubitIndex control2,
                          QubitIndex target, QubitIndex width = 0);

/// Textbook quantum Fourier transform on l qubits: l Hadamards and
/// l(l-1)/2 controlled phase rotations (as CRk macros), no final swaps.
/// The unitary equals the DFT matrix with bit-reversed row order:
/// U[k, j] = DFT[rev(k), j].
Circuit synth_qft(QubitIndex l);

/// Approximate QFT keeping only rotations of order k <= beta.
struct AqftSpec {
  QubitIndex l = 0;
  QubitIndex beta = 0;
  /// Target overall approximation error; used to derive a default per-gate
  /// precision in aqft_t_count_estimate when none is given.
  double delta_target = 0.0;
};

/// Same loop as synth_qft with CRk gates of order k > beta omitted;
/// beta = l reproduces synth_qft gate for gate. beta outside [2, l] throws.
Circuit synth_aqft(const AqftSpec& spec);

std::int64_t qft_crk_count(QubitIndex l);
std::int64_t aqft_crk_count(QubitIndex l, QubitIndex beta);

/// Spectral-norm distance between the exact and approximate circuits,
/// built as dense matrices (width capped). Bounded by 2*pi*l*2^-beta.
double aqft_error(const AqftSpec& spec, QubitIndex width_cap = 10);
double aqft_error_bound(QubitIndex l, QubitIndex beta);

/// Cost model for lowering one phase rotation to Clifford+T: each CRk is
/// three Rz-like rotations, each costing ceil(c_rz * log2(1/rz_precision))
/// T gates. rz_precision <= 0 means "derive from spec.delta_target divided
/// evenly over the 3 * crk_count rotations".
struct RotationCostModel {
  double c_rz = 3.0;
  double rz_precision = 0.0;
};

std::int64_t aqft_t_count_estimate(const AqftSpec& spec,
                                   RotationCostModel model = {});

/// Smallest cutoff with dropped-rotation budget below delta: clamps
/// ceil(log2(l/delta)) to [2, l].
QubitIndex beta_for_delta(QubitIndex l, double delta);

/// Hadamard on every one of n+1 qubits, in a single layer. This is the whole
/// per-repetition kernel of the secret-recovery algorithm; it contributes
/// zero T gates.
Circuit synth_bv_kernel(QubitIndex n);

}  // namespace qnblp
