#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnblp/bitstring.hpp"
#include "qnblp/circuit.hpp"

namespace qnblp {

/// Classical memory: 2^q cells of n+1 bits; cell gamma holds the word served
/// for address gamma. Cells are data, not qubits: a 0 bit simply contributes
/// no load gate.
struct MemoryTable {
  int q = 0;
  int n = 0;
  std::vector<BitString> cells;

  void validate() const;
};

std::string memory_to_json(const MemoryTable& memory);
MemoryTable memory_from_json(const std::string& text);

/// Qubit map of the loader: addresses, one-hot routing fan-out, n+1 data
/// bits, and 2^{q-1} query helpers per data bit, in that index order.
struct QramLayout {
  int n = 0;
  int q = 0;

  QramLayout(int n, int q);

  QubitIndex address(int bit) const;
  QubitIndex routing(int cell) const;
  QubitIndex data(int bit) const;
  QubitIndex query_extra(int data_bit, int pair) const;

  int width() const {
    return q + (1 << q) + (n + 1) + (n + 1) * (1 << (q - 1));
  }
  void declare_registers(Circuit& circuit) const;
};

/// Fan-out switch units (one CNOT + one Toffoli each): sum over stages
/// j = 2..q of 2^{j-1}, i.e. 2^q - 2.
std::int64_t n_routers(int q);

/// Address-to-routing fan-out: |gamma>|0...0> -> |gamma>|onehot(gamma)>,
/// where onehot(gamma) sets routing cell gamma.
///
/// Stage j routes on address bit j-1 with 2^{j-1} switches sharing that bit
/// as control. Each stage packs its Toffoli T gates into exactly four shared
/// T layers (the shared control's own phase terms merge into one Clifford
/// fix-up per stage), while the CNOTs on the shared control serialize into
/// non-T layers; stage 1 is plain X/CNOT. Hence t_depth is exactly 4(q-1).
/// `total_width` (>= q + 2^q, default exactly that) widens the circuit so it
/// can be embedded in a full loader layout.
Circuit synth_coupling(int q, QubitIndex total_width = 0);

/// Loads one memory column into the data qubit on a QramLayout(0, q):
/// assuming the routing register is one-hot, flips data iff the selected
/// cell's bit is 1. Column bit gamma belongs to cell gamma.
///
/// Loaded cells contribute CNOTs from their routing ancilla: leaf pairs merge
/// into the per-pair query helpers, a balanced CNOT tree folds those into the
/// data qubit, and the tree is uncomputed; depth O(q), zero T gates, helpers
/// restored. An all-zero column yields an empty circuit.
Circuit synth_query(int q, const BitString& column);

struct QramOptions {
  /// Default (false) re-runs the fan-out around every data bit:
  /// [coupling; query bit i; uncoupling] for i = 0..n. True couples once,
  /// queries all n+1 columns, then uncouples once.
  bool reuse_coupling = false;
};

/// Synthesis byproducts: the nominal one-gate-per-cell query count versus
/// what zero-bit omission actually emitted, and the switch-unit count.
struct QramSynthInfo {
  std::int64_t query_gates_raw = 0;
  std::int64_t query_gates_emitted = 0;
  std::int64_t switch_units = 0;
};

/// Full loader over QramLayout(n, q): for each basis address gamma (and
/// data register |0...0>), produces |gamma>|word(gamma)> with all routing
/// and query-helper ancillae returned to |0>.
Circuit synth_qram(const MemoryTable& memory, QramOptions options = {},
                   QramSynthInfo* info = nullptr);

/// Closed-form width/t_count/t_depth of synth_qram for the given options;
/// must match measured metrics exactly. total_depth is left 0: layer count
/// depends on the memory contents, which (n, q) alone cannot determine.
ResourceMetrics predicted_qram_metrics(int n, int q, QramOptions options = {});

}  // namespace qnblp
