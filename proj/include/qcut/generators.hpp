#pragma once

#include <string>
#include <vector>

#include "qcut/circuit.hpp"

namespace qcut {

/// Erdos-Renyi G(n, density); deterministic for a fixed seed.
Graph random_graph(int n, double density, unsigned seed);

/// One-layer-per-entry QAOA: H on all wires, then per layer RZZ(gamma_l)
/// per edge followed by RX(beta_l) per wire. All wires measured.
Circuit qaoa_circuit(const Graph& graph, int layers,
                     const std::vector<double>& gammas,
                     const std::vector<double>& betas);

/// Standard QFT with the controlled phases decomposed into RZ/CX and the
/// final swap reversal. All wires measured.
Circuit qft_circuit(int n);

/// Bernstein-Vazirani with an ancilla on the last wire; data wires measured.
Circuit bv_circuit(const std::string& secret_bits);

}  // namespace qcut
