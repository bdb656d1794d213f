#include "qnblp/unitary.hpp"

#include <string>

#include "qnblp/statevec.hpp"

namespace qnblp {

Eigen::MatrixXcd to_unitary(const Circuit& circuit, QubitIndex width_cap) {
  const QubitIndex w = circuit.width();
  if (w == 0 || w > width_cap) {
    throw WidthCapExceeded("to_unitary width cap is " +
                           std::to_string(width_cap) + ", circuit has " +
                           std::to_string(w) + " qubits");
  }
  const std::int64_t dim = 1ll << w;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Layer& layer : circuit.layers()) {
    for (const Gate& gate : layer) {
      // Columns are independent states; Eigen stores them contiguously.
      for (std::int64_t col = 0; col < dim; ++col) {
        detail::apply_gate_span(
            {u.col(col).data(), static_cast<std::size_t>(dim)}, w, gate);
      }
    }
  }
  return u;
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw WidthMismatch("matrix dimensions differ");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd gram = u.adjoint() * u;
  gram -= Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return gram.cwiseAbs().maxCoeff();
}

}  // namespace qnblp
