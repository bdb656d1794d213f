#include <doctest.h>

#include <qnblp/circuit.hpp>
#include <qnblp/circuit_text.hpp>
#include <qnblp/errors.hpp>
#include <qnblp/gate_synth.hpp>
#include <qnblp/qram.hpp>
#include <qnblp/unitary.hpp>

#include <Eigen/Dense>
#include <complex>

using namespace qnblp;

TEST_CASE("asap placement opens a layer for the first gate") {
  Circuit c(2);
  c.append(Gate::h(0));
  CHECK(c.depth() == 1);
  CHECK(c.layers()[0].size() == 1);
}

TEST_CASE("asap merges disjoint supports into the existing layer") {
  Circuit c(3);
  c.append(Gate::cnot(0, 1));
  c.append(Gate::t(2));
  CHECK(c.depth() == 1);
  CHECK(c.layers()[0].size() == 2);
}

TEST_CASE("asap starts a new layer on a shared qubit") {
  Circuit c(2);
  c.append(Gate::cnot(0, 1));
  c.append(Gate::t(1));
  CHECK(c.depth() == 2);
}

TEST_CASE("asap never reorders a gate past one sharing a qubit") {
  // X(1) collides with the CNOT in layer 0 but not with T(0) in layer 1,
  // so it lands beside the T rather than behind it or before the CNOT.
  Circuit c(2);
  c.append(Gate::cnot(0, 1), Placement::new_layer());
  c.append(Gate::t(0), Placement::new_layer());
  c.append(Gate::x(1));
  CHECK(c.depth() == 2);
  CHECK(c.layers()[1].size() == 2);

  // Fully disjoint gate slides all the way back to layer 0.
  Circuit d(3);
  d.append(Gate::h(0), Placement::new_layer());
  d.append(Gate::cnot(0, 1), Placement::new_layer());
  d.append(Gate::t(2));
  CHECK(d.depth() == 2);
  CHECK(d.layers()[0].size() == 2);
}

TEST_CASE("asap layering is deterministic") {
  auto build = [] {
    Circuit c(4);
    c.append(Gate::h(0));
    c.append(Gate::cnot(1, 2));
    c.append(Gate::t(3));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::tdg(2));
    return c;
  };
  CHECK(build() == build());
}

TEST_CASE("append rejects out-of-range operands") {
  Circuit c(2);
  CHECK_THROWS_AS(c.append(Gate::h(5)), OperandOutOfRange);
  CHECK_THROWS_AS(c.append(Gate::cnot(0, 2)), OperandOutOfRange);
}

TEST_CASE("into-layer placement validates the target") {
  Circuit c(2);
  c.append(Gate::t(0));
  CHECK_THROWS_AS(c.append(Gate::x(0), Placement::into_layer(0)),
                  LayerConflict);
  CHECK_THROWS_AS(c.append(Gate::x(1), Placement::into_layer(3)),
                  LayerConflict);
  c.append(Gate::x(1), Placement::into_layer(0));
  CHECK(c.depth() == 1);
}

TEST_CASE("gate operands must be pairwise distinct") {
  CHECK_THROWS_AS(Gate::cnot(1, 1).check_distinct(), DuplicateOperand);
  CHECK_THROWS_AS(Gate::toffoli(0, 2, 2).check_distinct(), DuplicateOperand);
}

TEST_CASE("compose adds t_count exactly") {
  Circuit a = decompose_toffoli(0, 1, 2);
  Circuit b = decompose_toffoli(0, 1, 2);
  Circuit both = compose(a, b);
  auto [t_count, t_depth] = t_metrics(both);
  CHECK(t_count == 14);
  CHECK(t_depth <= 8);
  CHECK(both.depth() == a.depth() + b.depth());
}

TEST_CASE("compose with an empty circuit is the identity element") {
  Circuit empty(3);
  Circuit b(3);
  b.append(Gate::x(0));
  CHECK(compose(empty, b) == b);
  CHECK(compose(b, empty) == b);
}

TEST_CASE("merge-composed disjoint toffolis nest without extra layers") {
  Circuit a = decompose_toffoli(0, 1, 2, 6);
  Circuit b = decompose_toffoli(3, 4, 5);
  Circuit merged = compose(a, b, ComposePolicy::Merge);
  auto [t_count, t_depth] = t_metrics(merged);
  CHECK(t_count == 14);
  // ASAP re-placement may slide b's gates off a's T layers, so only the
  // window [4, 8] is promised, but the disjoint circuit must fully nest.
  CHECK(t_depth >= 4);
  CHECK(t_depth <= 8);
  CHECK(merged.depth() == a.depth());
}

TEST_CASE("compose requires matching widths") {
  Circuit a(2), b(3);
  CHECK_THROWS_AS(compose(a, b), WidthMismatch);
}

TEST_CASE("inverse adjoints each gate and reverses order") {
  Circuit c(1);
  c.append(Gate::t(0));
  Circuit inv = inverse(c);
  REQUIRE(inv.depth() == 1);
  CHECK(inv.layers()[0][0].kind == GateKind::Tdg);
}

TEST_CASE("inverse is an involution") {
  MemoryTable memory;
  memory.q = 2;
  memory.n = 1;
  memory.cells = {BitString::from_string("10"), BitString::from_string("01"),
                  BitString::from_string("11"), BitString::from_string("00")};
  Circuit c = synth_qram(memory);
  CHECK(inverse(inverse(c)) == c);
}

TEST_CASE("inverse composed with forward is the identity matrix") {
  Circuit fwd = synth_coupling(2);
  Circuit round = compose(fwd, inverse(fwd));
  Eigen::MatrixXcd u = to_unitary(round);
  Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  CHECK(max_abs_diff(u, eye) < 1e-10);
}

TEST_CASE("metrics counts T layers and T gates") {
  Circuit toffoli = decompose_toffoli(0, 1, 2);
  ResourceMetrics m = metrics(toffoli);
  REQUIRE(m.t_count.has_value());
  REQUIRE(m.t_depth.has_value());
  CHECK(*m.t_count == 7);
  CHECK(*m.t_depth == 4);
  CHECK(m.width == 3);
  CHECK(*m.t_depth <= *m.t_count);
  CHECK(*m.t_count <= static_cast<std::int64_t>(toffoli.gate_count()));
  CHECK(*m.t_depth <= m.total_depth);
}

TEST_CASE("kernel of Hadamards has zero T metrics") {
  ResourceMetrics m = metrics(synth_bv_kernel(4));
  CHECK(*m.t_count == 0);
  CHECK(*m.t_depth == 0);
  CHECK(m.total_depth == 1);
}

TEST_CASE("unlowered macros leave T metrics undefined") {
  Circuit c(3);
  c.append(Gate::toffoli(0, 1, 2));
  ResourceMetrics m = metrics(c);
  CHECK_FALSE(m.t_count.has_value());
  CHECK_FALSE(m.t_depth.has_value());
  CHECK_THROWS_AS(t_metrics(c), MacroPresent);
}

TEST_CASE("to_unitary of a single Hadamard") {
  Circuit c(1);
  c.append(Gate::h(0));
  Eigen::MatrixXcd u = to_unitary(c);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u(0, 0) - r) < 1e-12);
  CHECK(std::abs(u(0, 1) - r) < 1e-12);
  CHECK(std::abs(u(1, 0) - r) < 1e-12);
  CHECK(std::abs(u(1, 1) + r) < 1e-12);
}

TEST_CASE("toffoli macro is the |110> <-> |111> permutation") {
  Circuit c(3);
  c.append(Gate::toffoli(0, 1, 2));
  Eigen::MatrixXcd u = to_unitary(c);
  for (int col = 0; col < 8; ++col) {
    int expect = col;
    if (col == 6) expect = 7;
    if (col == 7) expect = 6;
    for (int row = 0; row < 8; ++row) {
      CHECK(std::abs(u(row, col) - (row == expect ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("to_unitary enforces the width cap") {
  Circuit c(13);
  c.append(Gate::h(0));
  CHECK_THROWS_AS(to_unitary(c), WidthCapExceeded);

  Circuit small(6);
  small.append(Gate::h(0));
  CHECK_THROWS_AS(to_unitary(small, 5), WidthCapExceeded);
  CHECK(unitarity_defect(to_unitary(small, 6)) < 1e-10);
}

TEST_CASE("unitary round trip for synthesized circuits up to width 8") {
  const Circuit circuits[] = {decompose_toffoli(0, 1, 2), synth_qft(4),
                              synth_coupling(2), synth_bv_kernel(6)};
  for (const Circuit& c : circuits) {
    Eigen::MatrixXcd u = to_unitary(c);
    Eigen::MatrixXcd v = to_unitary(inverse(c));
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    CHECK(max_abs_diff(v * u, eye) < 1e-10);
  }
}

TEST_CASE("export emits one gate per line with layer separators") {
  Circuit c(1);
  c.append(Gate::h(0));
  std::string text = export_text(c);
  CHECK(text.find("H 0") != std::string::npos);
  CHECK(text.find("width 1") != std::string::npos);
}

TEST_CASE("text round trip preserves layers and registers") {
  MemoryTable memory;
  memory.q = 2;
  memory.n = 1;
  memory.cells = {BitString::from_string("00"), BitString::from_string("01"),
                  BitString::from_string("10"), BitString::from_string("11")};
  Circuit c = synth_qram(memory);
  CHECK(import_text(export_text(c)) == c);

  Circuit qft = synth_aqft({.l = 5, .beta = 3});
  CHECK(import_text(export_text(qft)) == qft);
}

TEST_CASE("import rejects malformed lines with the line number") {
  try {
    import_text("width 2\nT\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(import_text("width 1\nH 0 1\n"), ParseError);
  CHECK_THROWS_AS(import_text("H 0\n"), ParseError);
}

TEST_CASE("register declarations must stay in range and disjoint") {
  Circuit c(3);
  c.set_register(RegisterRole::Address, {0, 1});
  CHECK_THROWS_AS(c.set_register(RegisterRole::Data, {5}), OperandOutOfRange);
  CHECK_THROWS_AS(c.set_register(RegisterRole::Data, {1}), RegisterMismatch);
  c.set_register(RegisterRole::Data, {2});
  c.validate();
}
