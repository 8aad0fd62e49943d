#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcut/states.hpp"
#include "qcut/types.hpp"

namespace qcut {

enum class GateKind { H, X, Y, Z, S, Sdg, T, Rx, Ry, Rz, Rzz, Cx, Cz, Swap };

int gate_arity(GateKind kind);
int gate_param_count(GateKind kind);
std::string gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(const std::string& name);

/// One gate instance. The unitary is materialized at construction in the
/// local little-endian convention: qubits[j] is local bit j (bit 0 = LSB).
struct Gate {
  GateKind kind;
  std::vector<double> params;
  std::vector<int> qubits;
  Matrix unitary;

  bool is_two_qubit() const { return qubits.size() == 2; }
};

Gate make_gate(GateKind kind, std::vector<double> params, std::vector<int> qubits);

/// Dense unitary for a gate kind/params pair, without qubit binding.
Matrix gate_unitary(GateKind kind, const std::vector<double>& params);

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<int> measured;  // sorted, distinct wire indices

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  Circuit& add(GateKind kind, std::vector<double> params, std::vector<int> qubits);
  Circuit& add(GateKind kind, std::vector<int> qubits) {
    return add(kind, {}, std::move(qubits));
  }

  void measure_all();
  void set_measured(std::vector<int> wires);

  int gate_count() const { return static_cast<int>(gates.size()); }
  int two_qubit_count() const;
  void validate() const;

  bool operator==(const Circuit& other) const;
};

struct Graph {
  int n_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted, distinct

  void validate() const;
};

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

}  // namespace qcut
