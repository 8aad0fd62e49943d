#include "qcut/generators.hpp"

#include <cmath>
#include <random>

namespace qcut {

Graph random_graph(int n, double density, unsigned seed) {
  if (density < 0.0 || density > 1.0) {
    throw Error(ErrorCode::Invalid, "density must be in [0,1]");
  }
  Graph g;
  g.n_nodes = n;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < density) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

Circuit qaoa_circuit(const Graph& graph, int layers,
                     const std::vector<double>& gammas,
                     const std::vector<double>& betas) {
  graph.validate();
  if (static_cast<int>(gammas.size()) != layers ||
      static_cast<int>(betas.size()) != layers) {
    throw Error(ErrorCode::Invalid, "qaoa: need one (gamma, beta) pair per layer");
  }
  Circuit c(graph.n_nodes);
  for (int q = 0; q < c.n_qubits; ++q) c.add(GateKind::H, {q});
  for (int l = 0; l < layers; ++l) {
    for (auto [a, b] : graph.edges) c.add(GateKind::Rzz, {gammas[l]}, {a, b});
    for (int q = 0; q < c.n_qubits; ++q) c.add(GateKind::Rx, {betas[l]}, {q});
  }
  c.measure_all();
  return c;
}

namespace {

// CP(theta) up to global phase, within the declared gate set.
void add_controlled_phase(Circuit& c, double theta, int control, int target) {
  c.add(GateKind::Rz, {theta / 2}, {control});
  c.add(GateKind::Rz, {theta / 2}, {target});
  c.add(GateKind::Cx, {control, target});
  c.add(GateKind::Rz, {-theta / 2}, {target});
  c.add(GateKind::Cx, {control, target});
}

}  // namespace

Circuit qft_circuit(int n) {
  if (n < 1) throw Error(ErrorCode::Invalid, "qft: n must be >= 1");
  Circuit c(n);
  for (int i = 0; i < n; ++i) {
    c.add(GateKind::H, {i});
    for (int j = i + 1; j < n; ++j) {
      add_controlled_phase(c, M_PI / std::pow(2.0, j - i), j, i);
    }
  }
  for (int i = 0; i < n / 2; ++i) c.add(GateKind::Swap, {i, n - 1 - i});
  c.measure_all();
  return c;
}

Circuit bv_circuit(const std::string& secret_bits) {
  int n = static_cast<int>(secret_bits.size());
  if (n < 1) throw Error(ErrorCode::Invalid, "bv: secret must be nonempty");
  for (char ch : secret_bits) {
    if (ch != '0' && ch != '1') throw Error(ErrorCode::Invalid, "bv: secret must be binary");
  }
  Circuit c(n + 1);
  int ancilla = n;
  for (int i = 0; i < n; ++i) c.add(GateKind::H, {i});
  c.add(GateKind::X, {ancilla});
  c.add(GateKind::H, {ancilla});
  for (int i = 0; i < n; ++i) {
    if (secret_bits[i] == '1') c.add(GateKind::Cx, {i, ancilla});
  }
  for (int i = 0; i < n; ++i) c.add(GateKind::H, {i});
  std::vector<int> data(n);
  for (int i = 0; i < n; ++i) data[i] = i;
  c.set_measured(std::move(data));
  return c;
}

}  // namespace qcut
