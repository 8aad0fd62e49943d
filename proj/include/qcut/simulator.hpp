#pragma once

#include <map>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/distribution.hpp"
#include "qcut/states.hpp"

namespace qcut {

inline constexpr int kMaxStateQubits = 14;
inline constexpr int kMaxDensityQubits = 10;

/// Map wire -> initial pure state; wires not listed start in |0>.
using InitLabels = std::map<int, StateLabel>;

struct Statevector {
  int n = 0;
  Vector amp;

  Statevector() = default;
  explicit Statevector(int n_qubits);

  double norm2() const { return amp.squaredNorm(); }
};

struct DensityMatrix {
  int n = 0;
  Matrix mat;

  DensityMatrix() = default;
  explicit DensityMatrix(int n_qubits);

  double trace() const { return mat.trace().real(); }
};

struct NoiseModel {
  double p1 = 0.0;      // depolarizing per one-qubit gate
  double p2 = 0.0;      // depolarizing per two-qubit gate
  double p_meas = 0.0;  // readout bit flip

  bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && p_meas == 0.0; }
};

/// Mid-circuit projective measurement followed by a reset of the wire.
/// The projection sits after gate index `after_gate` (-1 = before all gates).
struct CutOp {
  int after_gate = -1;
  int wire = 0;
  StateLabel project = StateLabel::Zero;
  StateLabel prepare = StateLabel::Zero;
};

struct Branch {
  double weight = 0.0;  // cumulative postselection probability
  Statevector state;
};

Statevector make_state(int n_qubits, const InitLabels& init = {});
void apply_gate(Statevector& state, const Gate& gate);

/// Applies an arbitrary (possibly non-unitary) single-wire operator.
void apply_wire_op(Statevector& state, int wire, const Matrix2& op);

/// Projects the wire onto the label's state and renormalizes; returns the
/// branch probability (0 if the branch vanishes).
double project_wire(Statevector& state, int wire, StateLabel label);

Statevector simulate_state(const Circuit& circuit, const InitLabels& init = {},
                           int max_qubits = kMaxStateQubits);

/// Runs the circuit with the given ordered cut operations; each cut projects
/// its wire (folding the branch probability into the weight), renormalizes,
/// and resets the wire to the prepare label. Matched measure-and-prepare
/// yields exactly one branch per variant.
std::vector<Branch> measure_branches(const Circuit& circuit,
                                     const std::vector<CutOp>& cut_ops,
                                     const InitLabels& init = {},
                                     int max_qubits = kMaxStateQubits);

DensityMatrix make_density(int n_qubits, const InitLabels& init = {});
void apply_gate(DensityMatrix& rho, const Gate& gate, const NoiseModel& noise);
void apply_wire_op(DensityMatrix& rho, int wire, const Matrix2& op);
double project_wire(DensityMatrix& rho, int wire, StateLabel label);

DensityMatrix simulate_density(const Circuit& circuit, const InitLabels& init = {},
                               const NoiseModel& noise = {},
                               int max_qubits = kMaxDensityQubits);

/// Density-matrix analogue of measure_branches; the single returned branch
/// carries weight = cumulative postselection probability (with readout error
/// on the cut record folded in when noise.p_meas > 0).
struct DensityBranch {
  double weight = 0.0;
  DensityMatrix rho;
};
DensityBranch density_branch(const Circuit& circuit, const std::vector<CutOp>& cut_ops,
                             const InitLabels& init = {}, const NoiseModel& noise = {},
                             int max_qubits = kMaxDensityQubits);

/// Marginal over the given wires (bit j of the key = wires[j]); readout flip
/// applied when p_meas > 0. The mass total equals the state's norm/trace,
/// so postselected branches stay branch-weighted.
Distribution output_distribution(const Statevector& state, const std::vector<int>& wires,
                                 double p_meas = 0.0);
Distribution output_distribution(const DensityMatrix& rho, const std::vector<int>& wires,
                                 double p_meas = 0.0);

/// Tr(M rho) for the reduced state on one wire.
double expectation(const Statevector& state, PauliOp op, int wire);

}  // namespace qcut
