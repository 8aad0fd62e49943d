#include "qcut/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace qcut {

namespace {
const Complex kI(0.0, 1.0);
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::Rzz:
    case GateKind::Cx:
    case GateKind::Cz:
    case GateKind::Swap: return 2;
    default: return 1;
  }
}

int gate_param_count(GateKind kind) {
  switch (kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::Rzz: return 1;
    default: return 0;
  }
}

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::Rzz: return "rzz";
    case GateKind::Cx: return "cx";
    case GateKind::Cz: return "cz";
    case GateKind::Swap: return "swap";
  }
  return "?";
}

std::optional<GateKind> gate_from_name(const std::string& name) {
  static const std::vector<GateKind> kinds = {
      GateKind::H,  GateKind::X,  GateKind::Y,   GateKind::Z,
      GateKind::S,  GateKind::Sdg, GateKind::T,  GateKind::Rx,
      GateKind::Ry, GateKind::Rz, GateKind::Rzz, GateKind::Cx,
      GateKind::Cz, GateKind::Swap};
  for (GateKind k : kinds) {
    if (gate_name(k) == name) return k;
  }
  return std::nullopt;
}

Matrix gate_unitary(GateKind kind, const std::vector<double>& params) {
  const double s2 = 1.0 / std::sqrt(2.0);
  Matrix u;
  switch (kind) {
    case GateKind::H:
      u = Matrix2{{s2, s2}, {s2, -s2}};
      break;
    case GateKind::X:
      u = Matrix2{{0, 1}, {1, 0}};
      break;
    case GateKind::Y:
      u = Matrix2{{0, -kI}, {kI, 0}};
      break;
    case GateKind::Z:
      u = Matrix2{{1, 0}, {0, -1}};
      break;
    case GateKind::S:
      u = Matrix2{{1, 0}, {0, kI}};
      break;
    case GateKind::Sdg:
      u = Matrix2{{1, 0}, {0, -kI}};
      break;
    case GateKind::T:
      u = Matrix2{{1, 0}, {0, std::exp(kI * (M_PI / 4))}};
      break;
    case GateKind::Rx: {
      double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      u = Matrix2{{c, -kI * s}, {-kI * s, c}};
      break;
    }
    case GateKind::Ry: {
      double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
      u = Matrix2{{c, -s}, {s, c}};
      break;
    }
    case GateKind::Rz: {
      Complex e = std::exp(-kI * (params[0] / 2));
      u = Matrix2{{e, 0}, {0, std::conj(e)}};
      break;
    }
    case GateKind::Rzz: {
      // exp(-i theta/2 Z(x)Z): parity-even indices (00, 11) get e^{-i theta/2}.
      Complex em = std::exp(-kI * (params[0] / 2)), ep = std::conj(em);
      u = Matrix::Zero(4, 4);
      u(0, 0) = em;
      u(1, 1) = ep;
      u(2, 2) = ep;
      u(3, 3) = em;
      break;
    }
    case GateKind::Cx: {
      // qubits[0] = control (local bit 0), qubits[1] = target (local bit 1).
      u = Matrix::Zero(4, 4);
      u(0, 0) = 1;
      u(3, 1) = 1;
      u(2, 2) = 1;
      u(1, 3) = 1;
      break;
    }
    case GateKind::Cz: {
      u = Matrix::Identity(4, 4);
      u(3, 3) = -1;
      break;
    }
    case GateKind::Swap: {
      u = Matrix::Zero(4, 4);
      u(0, 0) = 1;
      u(2, 1) = 1;
      u(1, 2) = 1;
      u(3, 3) = 1;
      break;
    }
  }
  return u;
}

Gate make_gate(GateKind kind, std::vector<double> params, std::vector<int> qubits) {
  if (static_cast<int>(params.size()) != gate_param_count(kind)) {
    throw Error(ErrorCode::Invalid,
                "gate " + gate_name(kind) + ": expected " +
                    std::to_string(gate_param_count(kind)) + " parameter(s)");
  }
  if (static_cast<int>(qubits.size()) != gate_arity(kind)) {
    throw Error(ErrorCode::Invalid,
                "gate " + gate_name(kind) + ": expected " +
                    std::to_string(gate_arity(kind)) + " qubit(s)");
  }
  std::set<int> distinct(qubits.begin(), qubits.end());
  if (distinct.size() != qubits.size()) {
    throw Error(ErrorCode::Invalid, "gate " + gate_name(kind) + ": duplicate qubit");
  }
  Gate g;
  g.kind = kind;
  g.params = std::move(params);
  g.unitary = gate_unitary(kind, g.params);
  g.qubits = std::move(qubits);
  return g;
}

Circuit& Circuit::add(GateKind kind, std::vector<double> params, std::vector<int> qubits) {
  gates.push_back(make_gate(kind, std::move(params), std::move(qubits)));
  for (int q : gates.back().qubits) {
    if (q < 0 || q >= n_qubits) {
      throw Error(ErrorCode::Invalid, "qubit index out of range");
    }
  }
  return *this;
}

void Circuit::measure_all() {
  measured.resize(n_qubits);
  for (int i = 0; i < n_qubits; ++i) measured[i] = i;
}

void Circuit::set_measured(std::vector<int> wires) {
  std::sort(wires.begin(), wires.end());
  wires.erase(std::unique(wires.begin(), wires.end()), wires.end());
  for (int w : wires) {
    if (w < 0 || w >= n_qubits) throw Error(ErrorCode::Invalid, "measured wire out of range");
  }
  measured = std::move(wires);
}

int Circuit::two_qubit_count() const {
  int count = 0;
  for (const Gate& g : gates) count += g.is_two_qubit() ? 1 : 0;
  return count;
}

void Circuit::validate() const {
  if (n_qubits <= 0) throw Error(ErrorCode::Invalid, "circuit needs at least one qubit");
  for (const Gate& g : gates) {
    for (int q : g.qubits) {
      if (q < 0 || q >= n_qubits) throw Error(ErrorCode::Invalid, "gate wire out of range");
    }
  }
  for (int w : measured) {
    if (w < 0 || w >= n_qubits) throw Error(ErrorCode::Invalid, "measured wire out of range");
  }
}

bool Circuit::operator==(const Circuit& other) const {
  if (n_qubits != other.n_qubits || measured != other.measured ||
      gates.size() != other.gates.size()) {
    return false;
  }
  for (size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].kind != other.gates[i].kind ||
        gates[i].params != other.gates[i].params ||
        gates[i].qubits != other.gates[i].qubits) {
      return false;
    }
  }
  return true;
}

void Graph::validate() const {
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i == j) throw Error(ErrorCode::Invalid, "graph self-loop");
    if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes) {
      throw Error(ErrorCode::Invalid, "graph edge out of range");
    }
    auto key = std::minmax(i, j);
    if (!seen.insert(key).second) throw Error(ErrorCode::Invalid, "duplicate edge");
  }
}

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n_nodes;
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
  return j.dump();
}

Graph graph_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Graph g;
  g.n_nodes = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) {
    g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  g.validate();
  return g;
}

}  // namespace qcut
