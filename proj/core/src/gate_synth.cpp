#include "qnblp/gate_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnblp/unitary.hpp"

namespace qnblp {

Circuit decompose_toffoli(QubitIndex control1, QubitIndex control2,
                          QubitIndex target, QubitIndex width) {
  const QubitIndex a = control1;
  const QubitIndex b = control2;
  const QubitIndex c = target;
  if (a == b || a == c || b == c) {
    throw DuplicateOperand("Toffoli operands must be distinct");
  }
  const QubitIndex needed = std::max({a, b, c}) + 1;
  if (width == 0) width = needed;
  if (width < needed) {
    throw OperandOutOfRange("width too small for the given operands");
  }
  Circuit circuit(width, "toffoli");
  // CCZ as a phase polynomial: +a +b +c -(a^b) -(b^c) -(a^c) +(a^b^c), each
  // form brought onto a wire by CNOTs; H on the target turns it into CCX.
  circuit.append_layer(std::vector<Gate>{Gate::h(c)});
  circuit.append_layer(std::vector<Gate>{Gate::t(a), Gate::t(b), Gate::t(c)});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(b, c)});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(a, b)});
  circuit.append_layer(std::vector<Gate>{Gate::tdg(b), Gate::tdg(c)});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(a, c)});
  circuit.append_layer(std::vector<Gate>{Gate::t(c)});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(a, b)});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(b, c)});
  circuit.append_layer(std::vector<Gate>{Gate::tdg(c)});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(a, c)});
  circuit.append_layer(std::vector<Gate>{Gate::h(c)});
  return circuit;
}

namespace {

Circuit synth_fourier(QubitIndex l, QubitIndex beta) {
  Circuit circuit(l, beta == l ? "qft" : "aqft");
  std::vector<QubitIndex> all(l);
  for (QubitIndex i = 0; i < l; ++i) all[i] = i;
  circuit.set_register(RegisterRole::Algorithm, all);
  for (QubitIndex i = 0; i < l; ++i) {
    circuit.append(Gate::h(i));
    for (QubitIndex k = 2; k + i <= l; ++k) {
      if (k > beta) break;
      circuit.append(Gate::crk(static_cast<int>(k), i + k - 1, i));
    }
  }
  return circuit;
}

}  // namespace

Circuit synth_qft(QubitIndex l) {
  if (l == 0) {
    throw std::invalid_argument("transform length must be at least 1");
  }
  return synth_fourier(l, l);
}

Circuit synth_aqft(const AqftSpec& spec) {
  if (spec.l == 0) {
    throw std::invalid_argument("transform length must be at least 1");
  }
  if (spec.beta < 2 || spec.beta > spec.l) {
    throw BetaOutOfRange("beta must lie in [2, l], got " +
                         std::to_string(spec.beta) + " for l = " +
                         std::to_string(spec.l));
  }
  return synth_fourier(spec.l, spec.beta);
}

std::int64_t qft_crk_count(QubitIndex l) {
  const std::int64_t ll = l;
  return ll * (ll - 1) / 2;
}

std::int64_t aqft_crk_count(QubitIndex l, QubitIndex beta) {
  if (beta < 2 || beta > l) {
    throw BetaOutOfRange("beta must lie in [2, l]");
  }
  const std::int64_t ll = l;
  const std::int64_t bb = beta;
  return (2 * ll - bb) * (bb - 1) / 2;
}

double aqft_error(const AqftSpec& spec, QubitIndex width_cap) {
  const Eigen::MatrixXcd exact = to_unitary(synth_qft(spec.l), width_cap);
  const Eigen::MatrixXcd approx = to_unitary(synth_aqft(spec), width_cap);
  return spectral_norm(exact - approx);
}

double aqft_error_bound(QubitIndex l, QubitIndex beta) {
  return 2.0 * std::numbers::pi * static_cast<double>(l) *
         std::ldexp(1.0, -static_cast<int>(beta));
}

std::int64_t aqft_t_count_estimate(const AqftSpec& spec,
                                   RotationCostModel model) {
  const std::int64_t crk = aqft_crk_count(spec.l, spec.beta);
  if (crk == 0) return 0;
  if (model.c_rz <= 0.0) {
    throw std::invalid_argument("c_rz must be positive");
  }
  double precision = model.rz_precision;
  if (precision <= 0.0) {
    if (spec.delta_target <= 0.0) {
      throw std::invalid_argument(
          "need rz_precision or a positive delta_target to derive it");
    }
    precision = spec.delta_target / (3.0 * static_cast<double>(crk));
  }
  if (precision >= 1.0) {
    throw std::invalid_argument("rz_precision must be below 1");
  }
  const std::int64_t t_per_rotation = static_cast<std::int64_t>(
      std::ceil(model.c_rz * std::log2(1.0 / precision)));
  return crk * 3 * t_per_rotation;
}

QubitIndex beta_for_delta(QubitIndex l, double delta) {
  if (l == 0) {
    throw std::invalid_argument("transform length must be at least 1");
  }
  if (delta <= 0.0) {
    throw std::invalid_argument("delta must be positive");
  }
  const double raw = std::ceil(std::log2(static_cast<double>(l) / delta));
  const double clamped =
      std::clamp(raw, 2.0, static_cast<double>(std::max<QubitIndex>(l, 2)));
  return static_cast<QubitIndex>(clamped);
}

Circuit synth_bv_kernel(QubitIndex n) {
  if (n == 0) {
    throw std::invalid_argument("secret length must be at least 1");
  }
  Circuit circuit(n + 1, "hadamard_kernel");
  std::vector<QubitIndex> all(n + 1);
  std::vector<Gate> layer;
  layer.reserve(n + 1);
  for (QubitIndex i = 0; i <= n; ++i) {
    all[i] = i;
    layer.push_back(Gate::h(i));
  }
  circuit.set_register(RegisterRole::Algorithm, all);
  circuit.append_layer(layer);
  return circuit;
}

}  // namespace qnblp
