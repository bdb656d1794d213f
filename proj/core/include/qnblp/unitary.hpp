#pragma once

#include <Eigen/Dense>

#include "qnblp/circuit.hpp"

namespace qnblp {

/// Dense matrix of the circuit in the basis ordering of StateVector
/// (qubit 0 = most significant bit). Throws WidthCapExceeded above
/// `width_cap` qubits. Macro gates are evaluated exactly.
Eigen::MatrixXcd to_unitary(const Circuit& circuit, QubitIndex width_cap = 12);

/// Largest absolute entry of a - b.
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Operator 2-norm (largest singular value).
double spectral_norm(const Eigen::MatrixXcd& m);

/// Max-norm of U^dagger * U - I; ~0 for a unitary.
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace qnblp
