#include "qnblp/qram.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnblp {

void MemoryTable::validate() const {
  if (q < 1 || q > 24) {
    throw QOutOfRange("memory address width must lie in [1, 24]");
  }
  if (n < 0) {
    throw std::invalid_argument("word payload length must be nonnegative");
  }
  if (cells.size() != (1ull << q)) {
    throw DimensionMismatch("memory must have exactly 2^q cells");
  }
  for (const BitString& word : cells) {
    if (word.size() != static_cast<std::size_t>(n) + 1) {
      throw DimensionMismatch("every memory word must have n+1 bits");
    }
  }
}

std::string memory_to_json(const MemoryTable& memory) {
  memory.validate();
  nlohmann::json j;
  j["q"] = memory.q;
  j["n"] = memory.n;
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const BitString& word : memory.cells) {
    cells.push_back(word.str());
  }
  return j.dump(2) + "\n";
}

MemoryTable memory_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("memory JSON: ") + e.what(), 1);
  }
  MemoryTable memory;
  try {
    memory.q = j.at("q").get<int>();
    memory.n = j.at("n").get<int>();
    for (const auto& cell : j.at("cells")) {
      memory.cells.push_back(BitString::from_string(cell.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("memory JSON: ") + e.what(), 1);
  }
  memory.validate();
  return memory;
}

QramLayout::QramLayout(int n_in, int q_in) : n(n_in), q(q_in) {
  if (q < 1 || q > 24) {
    throw QOutOfRange("address width must lie in [1, 24]");
  }
  if (n < 0) {
    throw std::invalid_argument("payload length must be nonnegative");
  }
}

QubitIndex QramLayout::address(int bit) const {
  if (bit < 0 || bit >= q) throw OperandOutOfRange("address bit out of range");
  return static_cast<QubitIndex>(bit);
}

QubitIndex QramLayout::routing(int cell) const {
  if (cell < 0 || cell >= (1 << q)) {
    throw OperandOutOfRange("routing cell out of range");
  }
  return static_cast<QubitIndex>(q + cell);
}

QubitIndex QramLayout::data(int bit) const {
  if (bit < 0 || bit > n) throw OperandOutOfRange("data bit out of range");
  return static_cast<QubitIndex>(q + (1 << q) + bit);
}

QubitIndex QramLayout::query_extra(int data_bit, int pair) const {
  if (data_bit < 0 || data_bit > n) {
    throw OperandOutOfRange("data bit out of range");
  }
  if (pair < 0 || pair >= (1 << (q - 1))) {
    throw OperandOutOfRange("query helper index out of range");
  }
  return static_cast<QubitIndex>(q + (1 << q) + (n + 1) +
                                 data_bit * (1 << (q - 1)) + pair);
}

void QramLayout::declare_registers(Circuit& circuit) const {
  std::vector<QubitIndex> addr, route, dat, extra;
  for (int i = 0; i < q; ++i) addr.push_back(address(i));
  for (int c = 0; c < (1 << q); ++c) route.push_back(routing(c));
  for (int i = 0; i <= n; ++i) dat.push_back(data(i));
  for (int i = 0; i <= n; ++i) {
    for (int p = 0; p < (1 << (q - 1)); ++p) {
      extra.push_back(query_extra(i, p));
    }
  }
  circuit.set_register(RegisterRole::Address, addr);
  circuit.set_register(RegisterRole::RoutingAncilla, route);
  circuit.set_register(RegisterRole::Data, dat);
  circuit.set_register(RegisterRole::QueryExtra, extra);
}

std::int64_t n_routers(int q) {
  if (q < 1) throw QOutOfRange("address width must be at least 1");
  return (1ll << q) - 2;
}

namespace {

// Emits the fan-out stages into `circuit` with addresses at qubits [0, q)
// and routing cells at [routing_base, routing_base + 2^q).
//
// After stage j, routing cell (p << (q - j)) is 1 exactly for the j-bit
// address prefix p; child 0 of a switch reuses its parent's cell, child 1
// lives halfway into the parent's span. Every switch of stage j is one
// Toffoli(address j-1, parent, child1) followed by CNOT(child1, parent),
// with all Toffolis of the stage expanded jointly so their T gates share
// exactly four layers.
void emit_coupling(Circuit& circuit, int q, QubitIndex routing_base) {
  const auto route = [&](int cell) {
    return routing_base + static_cast<QubitIndex>(cell);
  };

  // Stage 1: cell 0 <- not(a0), cell 2^{q-1} <- a0.
  const QubitIndex a0 = 0;
  circuit.append_layer(std::vector<Gate>{Gate::x(route(0))});
  circuit.append_layer(std::vector<Gate>{Gate::cnot(a0, route(0))});
  circuit.append_layer(
      std::vector<Gate>{Gate::cnot(a0, route(1 << (q - 1)))});

  for (int j = 2; j <= q; ++j) {
    const QubitIndex shared = static_cast<QubitIndex>(j - 1);
    const int switches = 1 << (j - 1);
    std::vector<QubitIndex> parent(switches), child(switches);
    for (int p = 0; p < switches; ++p) {
      parent[p] = route(p << (q - j + 1));
      child[p] = route(((2 * p + 1) << (q - j)));
    }

    std::vector<Gate> layer;
    const auto flush = [&]() {
      circuit.append_layer(layer);
      layer.clear();
    };

    // H on every CCZ target.
    for (int p = 0; p < switches; ++p) layer.push_back(Gate::h(child[p]));
    flush();

    // T layer 1: +parent +child per switch; the switches' combined +shared
    // phase is 2^{j-1} eighth-turns, i.e. S (j=2), Z (j=3), or nothing.
    for (int p = 0; p < switches; ++p) {
      layer.push_back(Gate::t(parent[p]));
      layer.push_back(Gate::t(child[p]));
    }
    if (j == 2) layer.push_back(Gate::s(shared));
    if (j == 3) layer.push_back(Gate::z(shared));
    flush();

    for (int p = 0; p < switches; ++p) {
      layer.push_back(Gate::cnot(parent[p], child[p]));
    }
    flush();
    for (int p = 0; p < switches; ++p) {
      circuit.append_layer(std::vector<Gate>{Gate::cnot(shared, parent[p])});
    }

    // T layer 2: -(shared^parent) -(parent^child).
    for (int p = 0; p < switches; ++p) {
      layer.push_back(Gate::tdg(parent[p]));
      layer.push_back(Gate::tdg(child[p]));
    }
    flush();

    for (int p = 0; p < switches; ++p) {
      circuit.append_layer(std::vector<Gate>{Gate::cnot(shared, child[p])});
    }

    // T layer 3: +(shared^parent^child).
    for (int p = 0; p < switches; ++p) layer.push_back(Gate::t(child[p]));
    flush();

    for (int p = 0; p < switches; ++p) {
      circuit.append_layer(std::vector<Gate>{Gate::cnot(shared, parent[p])});
    }
    for (int p = 0; p < switches; ++p) {
      layer.push_back(Gate::cnot(parent[p], child[p]));
    }
    flush();

    // T layer 4: -(shared^child).
    for (int p = 0; p < switches; ++p) layer.push_back(Gate::tdg(child[p]));
    flush();

    for (int p = 0; p < switches; ++p) {
      circuit.append_layer(std::vector<Gate>{Gate::cnot(shared, child[p])});
    }

    for (int p = 0; p < switches; ++p) layer.push_back(Gate::h(child[p]));
    flush();

    // The switch's routing update: child0 (in place at parent) = parent and
    // not(address bit) = parent xor child1.
    for (int p = 0; p < switches; ++p) {
      layer.push_back(Gate::cnot(child[p], parent[p]));
    }
    flush();
  }
}

}  // namespace

Circuit synth_coupling(int q, QubitIndex total_width) {
  if (q < 1 || q > 24) {
    throw QOutOfRange("address width must lie in [1, 24]");
  }
  const QubitIndex needed = static_cast<QubitIndex>(q + (1 << q));
  if (total_width == 0) total_width = needed;
  if (total_width < needed) {
    throw WidthMismatch("coupling needs width at least q + 2^q");
  }
  Circuit circuit(total_width, "coupling");
  std::vector<QubitIndex> addr, route;
  for (int i = 0; i < q; ++i) addr.push_back(static_cast<QubitIndex>(i));
  for (int c = 0; c < (1 << q); ++c) {
    route.push_back(static_cast<QubitIndex>(q + c));
  }
  circuit.set_register(RegisterRole::Address, addr);
  circuit.set_register(RegisterRole::RoutingAncilla, route);
  emit_coupling(circuit, q, static_cast<QubitIndex>(q));
  return circuit;
}

namespace {

// Loads one column through the per-pair helpers: leaves fold into helpers,
// helpers fold into helper[first] by a balanced CNOT tree, one CNOT hits the
// data qubit, then everything uncomputes. Pure CNOT circuitry.
void emit_query(Circuit& circuit, const QramLayout& layout, int data_bit,
                const BitString& column, QramSynthInfo* info) {
  if (column.size() != (1ull << layout.q)) {
    throw LengthMismatch("memory column must have 2^q bits");
  }
  if (info) info->query_gates_raw += 1ll << layout.q;

  std::vector<int> loaded;
  for (std::size_t cell = 0; cell < column.size(); ++cell) {
    if (column[cell]) loaded.push_back(static_cast<int>(cell));
  }
  if (loaded.empty()) return;
  if (info) info->query_gates_emitted += static_cast<std::int64_t>(loaded.size());

  const auto helper = [&](int pair) {
    return layout.query_extra(data_bit, pair);
  };

  std::vector<Layer> forward;
  Layer evens, odds;
  for (int cell : loaded) {
    Gate g = Gate::cnot(layout.routing(cell), helper(cell / 2));
    (cell % 2 == 0 ? evens : odds).push_back(g);
  }
  if (!evens.empty()) forward.push_back(evens);
  if (!odds.empty()) forward.push_back(odds);

  std::vector<int> pairs;
  for (int cell : loaded) {
    if (pairs.empty() || pairs.back() != cell / 2) pairs.push_back(cell / 2);
  }
  std::vector<int> active = pairs;
  while (active.size() > 1) {
    Layer level;
    std::vector<int> next;
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
      level.push_back(Gate::cnot(helper(active[i + 1]), helper(active[i])));
      next.push_back(active[i]);
    }
    if (active.size() % 2 == 1) next.push_back(active.back());
    forward.push_back(level);
    active = next;
  }

  for (const Layer& layer : forward) circuit.append_layer(layer);
  circuit.append_layer(std::vector<Gate>{
      Gate::cnot(helper(active[0]), layout.data(data_bit))});
  for (std::size_t i = forward.size(); i-- > 0;) {
    circuit.append_layer(forward[i]);
  }
}

}  // namespace

Circuit synth_query(int q, const BitString& column) {
  QramLayout layout(0, q);
  Circuit circuit(static_cast<QubitIndex>(layout.width()), "query");
  layout.declare_registers(circuit);
  emit_query(circuit, layout, 0, column, nullptr);
  return circuit;
}

Circuit synth_qram(const MemoryTable& memory, QramOptions options,
                   QramSynthInfo* info) {
  memory.validate();
  const QramLayout layout(memory.n, memory.q);
  Circuit circuit(static_cast<QubitIndex>(layout.width()), "qram");
  layout.declare_registers(circuit);

  if (info) {
    *info = {};
    info->switch_units = n_routers(memory.q);
  }

  Circuit coupling(static_cast<QubitIndex>(layout.width()));
  emit_coupling(coupling, memory.q, layout.routing(0));
  const Circuit uncoupling = inverse(coupling);

  const auto column = [&](int bit) {
    BitString col(memory.cells.size());
    for (std::size_t cell = 0; cell < memory.cells.size(); ++cell) {
      col.set(cell, memory.cells[cell][static_cast<std::size_t>(bit)]);
    }
    return col;
  };

  if (options.reuse_coupling) {
    circuit.append_circuit(coupling);
    for (int bit = 0; bit <= memory.n; ++bit) {
      emit_query(circuit, layout, bit, column(bit), info);
    }
    circuit.append_circuit(uncoupling);
  } else {
    for (int bit = 0; bit <= memory.n; ++bit) {
      circuit.append_circuit(coupling);
      emit_query(circuit, layout, bit, column(bit), info);
      circuit.append_circuit(uncoupling);
    }
  }
  return circuit;
}

ResourceMetrics predicted_qram_metrics(int n, int q, QramOptions options) {
  if (q < 1) throw QOutOfRange("address width must be at least 1");
  if (n < 0) throw std::invalid_argument("payload length must be nonnegative");
  const QramLayout layout(n, q);
  const std::int64_t couplings = options.reuse_coupling ? 2 : 2ll * (n + 1);
  ResourceMetrics m;
  m.width = layout.width();
  m.t_count = couplings * 6 * n_routers(q);
  m.t_depth = couplings * 4 * (q - 1);
  // total_depth depends on the memory contents and is not predicted here.
  m.total_depth = 0;
  return m;
}

}  // namespace qnblp
