#include <doctest.h>

#include <qnblp/circuit.hpp>
#include <qnblp/errors.hpp>
#include <qnblp/gate_synth.hpp>
#include <qnblp/unitary.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

using namespace qnblp;

namespace {

std::int64_t hist_count(const ResourceMetrics& m, GateKind kind) {
  auto it = m.gate_histogram.find(kind);
  return it == m.gate_histogram.end() ? 0 : it->second;
}

int bit_reverse(int value, int bits) {
  int out = 0;
  for (int i = 0; i < bits; ++i) out |= ((value >> i) & 1) << (bits - 1 - i);
  return out;
}

// DFT with row order bit-reversed, the documented convention of synth_qft.
Eigen::MatrixXcd qft_reference(int l) {
  const int dim = 1 << l;
  Eigen::MatrixXcd f(dim, dim);
  const double unit = 2.0 * std::numbers::pi / dim;
  for (int row = 0; row < dim; ++row)
    for (int col = 0; col < dim; ++col)
      f(row, col) = std::polar(1.0 / std::sqrt(double(dim)),
                               unit * bit_reverse(row, l) * col);
  return f;
}

}  // namespace

TEST_CASE("toffoli decomposition metrics") {
  Circuit c = decompose_toffoli(0, 1, 2);
  auto [t_count, t_depth] = t_metrics(c);
  CHECK(t_count == 7);
  CHECK(t_depth == 4);
}

TEST_CASE("toffoli decomposition equals the macro for every operand order") {
  const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                            {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& o : orders) {
    Circuit macro(3);
    macro.append(Gate::toffoli(static_cast<QubitIndex>(o[0]),
                               static_cast<QubitIndex>(o[1]),
                               static_cast<QubitIndex>(o[2])));
    Circuit lowered = decompose_toffoli(static_cast<QubitIndex>(o[0]),
                                        static_cast<QubitIndex>(o[1]),
                                        static_cast<QubitIndex>(o[2]), 3);
    CHECK(max_abs_diff(to_unitary(lowered), to_unitary(macro)) < 1e-10);
  }
}

TEST_CASE("toffoli decomposition inverse keeps the T count") {
  auto [t_count, t_depth] = t_metrics(inverse(decompose_toffoli(0, 1, 2)));
  CHECK(t_count == 7);
  CHECK(t_depth == 4);
}

TEST_CASE("toffoli decomposition rejects repeated operands") {
  CHECK_THROWS_AS(decompose_toffoli(0, 0, 1), DuplicateOperand);
  CHECK_THROWS_AS(decompose_toffoli(0, 1, 1), DuplicateOperand);
}

TEST_CASE("qft gate counts") {
  ResourceMetrics one = metrics(synth_qft(1));
  CHECK(hist_count(one, GateKind::H) == 1);
  CHECK(hist_count(one, GateKind::CRkMacro) == 0);

  ResourceMetrics four = metrics(synth_qft(4));
  CHECK(hist_count(four, GateKind::H) == 4);
  CHECK(hist_count(four, GateKind::CRkMacro) == 6);
  CHECK(qft_crk_count(4) == 6);
}

TEST_CASE("qft unitary equals the bit-reversed DFT") {
  for (int l : {1, 2, 3}) {
    CHECK(max_abs_diff(to_unitary(synth_qft(static_cast<QubitIndex>(l))),
                       qft_reference(l)) < 1e-10);
  }
}

TEST_CASE("aqft crk counts follow the cutoff formula") {
  CHECK(aqft_crk_count(4, 3) == 5);
  CHECK(aqft_crk_count(5, 2) == 4);
  CHECK(aqft_crk_count(4, 4) == 6);
  CHECK(aqft_crk_count(8, 8) == 28);
  CHECK(aqft_crk_count(16, 4) == 42);

  for (QubitIndex l = 2; l <= 16; ++l) {
    for (QubitIndex beta = 2; beta <= l; ++beta) {
      Circuit c = synth_aqft({.l = l, .beta = beta});
      std::int64_t measured = hist_count(metrics(c), GateKind::CRkMacro);
      std::int64_t formula = static_cast<std::int64_t>(2 * l - beta) *
                             (beta - 1) / 2;
      CHECK(measured == formula);
      CHECK(measured == aqft_crk_count(l, beta));
    }
    CHECK(aqft_crk_count(l, l) == qft_crk_count(l));
  }
}

TEST_CASE("aqft with beta = l reproduces the qft gate for gate") {
  for (QubitIndex l : {2, 3, 5, 8, 16}) {
    CHECK(synth_aqft({.l = l, .beta = l}) == synth_qft(l));
  }
}

TEST_CASE("aqft keeps only rotations up to the cutoff") {
  Circuit c = synth_aqft({.l = 6, .beta = 3});
  for (const Layer& layer : c.layers())
    for (const Gate& g : layer)
      if (g.kind == GateKind::CRkMacro) CHECK(g.k <= 3);
}

TEST_CASE("aqft rejects cutoffs outside [2, l]") {
  CHECK_THROWS_AS(synth_aqft({.l = 4, .beta = 1}), BetaOutOfRange);
  CHECK_THROWS_AS(synth_aqft({.l = 4, .beta = 5}), BetaOutOfRange);
}

TEST_CASE("aqft spectral error against the exact transform") {
  CHECK(aqft_error({.l = 4, .beta = 4}) == 0.0);

  // Frozen reference values from a direct dense-matrix evaluation.
  CHECK(std::abs(aqft_error({.l = 3, .beta = 2}) - 0.7653668647301793) < 1e-9);
  CHECK(std::abs(aqft_error({.l = 4, .beta = 2}) - 1.6629392246050894) < 1e-9);
  CHECK(std::abs(aqft_error({.l = 4, .beta = 3}) - 0.3901806440322564) < 1e-9);
  CHECK(std::abs(aqft_error({.l = 5, .beta = 2}) - 1.9995793502381647) < 1e-9);
  CHECK(std::abs(aqft_error({.l = 5, .beta = 3}) - 0.9427934736519948) < 1e-9);
  CHECK(std::abs(aqft_error({.l = 5, .beta = 4}) - 0.19603428065912115) <
        1e-9);
  // The (4,3) distance has the closed form 2 sin(pi/16).
  CHECK(std::abs(aqft_error({.l = 4, .beta = 3}) -
                 2.0 * std::sin(std::numbers::pi / 16.0)) < 1e-12);
}

TEST_CASE("aqft error is bounded and monotone in the cutoff") {
  for (QubitIndex l = 2; l <= 8; ++l) {
    double previous = 1e300;
    for (QubitIndex beta = 2; beta <= l; ++beta) {
      double err = aqft_error({.l = l, .beta = beta});
      CHECK(err >= 0.0);
      CHECK(err <= aqft_error_bound(l, beta));
      CHECK(err <= previous + 1e-12);
      previous = err;
    }
  }
  CHECK(std::abs(aqft_error_bound(4, 3) -
                 2.0 * std::numbers::pi * 4.0 / 8.0) < 1e-12);
}

TEST_CASE("aqft error respects the width cap") {
  CHECK_THROWS_AS(aqft_error({.l = 11, .beta = 2}), WidthCapExceeded);
  CHECK_THROWS_AS(aqft_error({.l = 5, .beta = 2}, 4), WidthCapExceeded);
}

TEST_CASE("rotation T estimate evaluates the cost model") {
  // 5 rotations, each 3 Rz at ceil(3 * log2(2^10)) = 30 T gates.
  std::int64_t est = aqft_t_count_estimate(
      {.l = 4, .beta = 3}, {.c_rz = 3.0, .rz_precision = 1.0 / 1024.0});
  CHECK(est == 450);

  // Coarse precision: log2(1/0.5) = 1, so 3 T per rotation.
  CHECK(aqft_t_count_estimate({.l = 4, .beta = 3},
                              {.c_rz = 3.0, .rz_precision = 0.5}) == 45);
}

TEST_CASE("rotation T estimate growth is superlinear but subquadratic") {
  // beta = ceil(log2 l) via beta_for_delta at delta = 1.
  const std::int64_t expected[] = {624,   2646,   9204,   27450,
                                   76194, 201096, 499380, 1238085};
  std::int64_t estimates[8] = {};
  int i = 0;
  for (QubitIndex l = 8; l <= 1024; l *= 2, ++i) {
    AqftSpec spec{.l = l, .beta = beta_for_delta(l, 1.0), .delta_target = 1.0};
    estimates[i] = aqft_t_count_estimate(spec);
    CHECK(estimates[i] == expected[i]);
  }
  for (int j = 1; j < 8; ++j) {
    double ratio = double(estimates[j]) / double(estimates[j - 1]);
    CHECK(ratio > 2.0);
    CHECK(ratio < 4.5);
  }
  i = 0;
  for (QubitIndex l = 8; l <= 1024; l *= 2, ++i) {
    double log_l = std::log2(double(l));
    double normalized = double(estimates[i]) / (double(l) * log_l * log_l);
    CHECK(normalized >= 6.0);
    CHECK(normalized <= 16.0);
  }
}

TEST_CASE("beta_for_delta clamps into [2, l]") {
  CHECK(beta_for_delta(8, 1.0) == 3);
  CHECK(beta_for_delta(1024, 1.0) == 10);
  CHECK(beta_for_delta(4, 4.0) == 2);
  CHECK(beta_for_delta(4, 1e-9) == 4);
}

TEST_CASE("bv kernel is one layer of Hadamards") {
  Circuit c = synth_bv_kernel(2);
  CHECK(c.width() == 3);
  CHECK(c.depth() == 1);
  CHECK(hist_count(metrics(c), GateKind::H) == 3);

  for (QubitIndex n : {1, 4, 9}) {
    auto [t_count, t_depth] = t_metrics(synth_bv_kernel(n));
    CHECK(t_count == 0);
    CHECK(t_depth == 0);
  }
}

TEST_CASE("bv kernel unitary is the Hadamard tensor square") {
  Eigen::MatrixXcd h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  Eigen::MatrixXcd hh(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          hh(2 * a + c, 2 * b + d) = h(a, b) * h(c, d);
  CHECK(max_abs_diff(to_unitary(synth_bv_kernel(1)), hh) < 1e-12);
}
