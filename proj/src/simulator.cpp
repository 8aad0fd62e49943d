#include "qcut/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace qcut {

namespace {

void check_width(int n, int max_qubits) {
  if (n > max_qubits) {
    throw Error(ErrorCode::WidthCap, "circuit width " + std::to_string(n) +
                                         " exceeds cap " + std::to_string(max_qubits));
  }
}

// Kraus-style measure-and-prepare operator |prepare><project|.
Matrix2 record_op(StateLabel project, StateLabel prepare) {
  return ket(prepare) * ket(project).adjoint();
}

}  // namespace

Statevector::Statevector(int n_qubits) : n(n_qubits) {
  amp = Vector::Zero(int64_t{1} << n);
  amp[0] = 1.0;
}

Statevector make_state(int n_qubits, const InitLabels& init) {
  Statevector state(n_qubits);
  for (auto [wire, label] : init) {
    if (wire < 0 || wire >= n_qubits) throw Error(ErrorCode::Invalid, "init wire out of range");
    apply_wire_op(state, wire, ket(label) * Vector2(1, 0).adjoint());
  }
  return state;
}

void apply_wire_op(Statevector& state, int wire, const Matrix2& op) {
  const int64_t bit = int64_t{1} << wire;
  const int64_t dim = state.amp.size();
  for (int64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    Complex a0 = state.amp[i], a1 = state.amp[i | bit];
    state.amp[i] = op(0, 0) * a0 + op(0, 1) * a1;
    state.amp[i | bit] = op(1, 0) * a0 + op(1, 1) * a1;
  }
}

void apply_gate(Statevector& state, const Gate& gate) {
  if (gate.qubits.size() == 1) {
    apply_wire_op(state, gate.qubits[0], gate.unitary);
    return;
  }
  const int64_t b0 = int64_t{1} << gate.qubits[0];
  const int64_t b1 = int64_t{1} << gate.qubits[1];
  const int64_t dim = state.amp.size();
  const Matrix& u = gate.unitary;
  for (int64_t i = 0; i < dim; ++i) {
    if (i & (b0 | b1)) continue;
    Complex a[4] = {state.amp[i], state.amp[i | b0], state.amp[i | b1],
                    state.amp[i | b0 | b1]};
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0;
      for (int c = 0; c < 4; ++c) acc += u(r, c) * a[c];
      int64_t idx = i | ((r & 1) ? b0 : 0) | ((r & 2) ? b1 : 0);
      state.amp[idx] = acc;
    }
  }
}

double project_wire(Statevector& state, int wire, StateLabel label) {
  double before = state.norm2();
  apply_wire_op(state, wire, projector(label));
  double after = state.norm2();
  if (after <= 0.0 || before <= 0.0) {
    state.amp.setZero();
    return 0.0;
  }
  state.amp /= std::sqrt(after);
  return after / before;
}

Statevector simulate_state(const Circuit& circuit, const InitLabels& init, int max_qubits) {
  check_width(circuit.n_qubits, max_qubits);
  circuit.validate();
  Statevector state = make_state(circuit.n_qubits, init);
  for (const Gate& g : circuit.gates) apply_gate(state, g);
  return state;
}

std::vector<Branch> measure_branches(const Circuit& circuit,
                                     const std::vector<CutOp>& cut_ops,
                                     const InitLabels& init, int max_qubits) {
  check_width(circuit.n_qubits, max_qubits);
  circuit.validate();
  for (const CutOp& op : cut_ops) {
    if (op.after_gate < -1 || op.after_gate >= circuit.gate_count()) {
      throw Error(ErrorCode::Invalid, "cut position out of range");
    }
    if (op.wire < 0 || op.wire >= circuit.n_qubits) {
      throw Error(ErrorCode::Invalid, "cut wire out of range");
    }
  }
  std::vector<CutOp> ordered = cut_ops;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const CutOp& a, const CutOp& b) { return a.after_gate < b.after_gate; });

  Branch branch;
  branch.weight = 1.0;
  branch.state = make_state(circuit.n_qubits, init);
  size_t next_cut = 0;
  for (int g = -1; g < circuit.gate_count(); ++g) {
    if (g >= 0) apply_gate(branch.state, circuit.gates[g]);
    while (next_cut < ordered.size() && ordered[next_cut].after_gate == g) {
      const CutOp& op = ordered[next_cut++];
      double before = branch.state.norm2();
      apply_wire_op(branch.state, op.wire, record_op(op.project, op.prepare));
      double after = branch.state.norm2();
      if (after <= 1e-300) {
        branch.weight = 0.0;
        branch.state.amp.setZero();
        return {branch};
      }
      branch.weight *= after / before;
      branch.state.amp /= std::sqrt(after / before);
    }
  }
  return {branch};
}

DensityMatrix::DensityMatrix(int n_qubits) : n(n_qubits) {
  const int64_t dim = int64_t{1} << n;
  mat = Matrix::Zero(dim, dim);
  mat(0, 0) = 1.0;
}

DensityMatrix make_density(int n_qubits, const InitLabels& init) {
  Statevector psi = make_state(n_qubits, init);
  DensityMatrix rho(n_qubits);
  rho.mat = psi.amp * psi.amp.adjoint();
  return rho;
}

namespace {

// Left-multiplies the gate unitary into every column of m.
void apply_gate_left(Matrix& m, const Gate& gate) {
  Statevector column;
  column.n = 0;
  for (int64_t c = 0; c < m.cols(); ++c) {
    column.amp = m.col(c);
    apply_gate(column, gate);
    m.col(c) = column.amp;
  }
}

void apply_op_left(Matrix& m, int wire, const Matrix2& op) {
  Statevector column;
  for (int64_t c = 0; c < m.cols(); ++c) {
    column.amp = m.col(c);
    apply_wire_op(column, wire, op);
    m.col(c) = column.amp;
  }
}

// rho -> (1-p) rho + p * (I_S / 2^k  (x)  Tr_S rho) over the gate's qubits.
void depolarize(DensityMatrix& rho, const std::vector<int>& qubits, double p) {
  if (p == 0.0) return;
  int64_t mask = 0;
  for (int q : qubits) mask |= int64_t{1} << q;
  const int64_t dim = rho.mat.rows();
  const double norm = 1.0 / static_cast<double>(int64_t{1} << qubits.size());
  Matrix mixed = Matrix::Zero(dim, dim);
  for (int64_t r = 0; r < dim; ++r) {
    for (int64_t c = 0; c < dim; ++c) {
      if (((r ^ c) & mask) != 0) continue;
      // Tr_S over the masked bits: sum rho[(rest_r, s), (rest_c, s)].
      Complex acc = 0;
      int64_t rr = r & ~mask, cc = c & ~mask;
      // Enumerate assignments of the masked bits.
      int64_t sub = 0;
      do {
        acc += rho.mat(rr | sub, cc | sub);
        sub = (sub - mask) & mask;
      } while (sub != 0);
      mixed(r, c) = acc * norm;
    }
  }
  rho.mat = (1.0 - p) * rho.mat + p * mixed;
}

}  // namespace

void apply_gate(DensityMatrix& rho, const Gate& gate, const NoiseModel& noise) {
  apply_gate_left(rho.mat, gate);
  rho.mat = rho.mat.adjoint().eval();
  apply_gate_left(rho.mat, gate);
  rho.mat = rho.mat.adjoint().eval();
  depolarize(rho, gate.qubits, gate.is_two_qubit() ? noise.p2 : noise.p1);
}

void apply_wire_op(DensityMatrix& rho, int wire, const Matrix2& op) {
  apply_op_left(rho.mat, wire, op);
  rho.mat = rho.mat.adjoint().eval();
  apply_op_left(rho.mat, wire, op);
  rho.mat = rho.mat.adjoint().eval();
}

double project_wire(DensityMatrix& rho, int wire, StateLabel label) {
  double before = rho.trace();
  apply_wire_op(rho, wire, projector(label));
  double after = rho.trace();
  if (after <= 0.0 || before <= 0.0) {
    rho.mat.setZero();
    return 0.0;
  }
  rho.mat /= after;
  return after / before;
}

DensityMatrix simulate_density(const Circuit& circuit, const InitLabels& init,
                               const NoiseModel& noise, int max_qubits) {
  check_width(circuit.n_qubits, max_qubits);
  circuit.validate();
  DensityMatrix rho = make_density(circuit.n_qubits, init);
  for (const Gate& g : circuit.gates) apply_gate(rho, g, noise);
  return rho;
}

DensityBranch density_branch(const Circuit& circuit, const std::vector<CutOp>& cut_ops,
                             const InitLabels& init, const NoiseModel& noise,
                             int max_qubits) {
  check_width(circuit.n_qubits, max_qubits);
  circuit.validate();
  std::vector<CutOp> ordered = cut_ops;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const CutOp& a, const CutOp& b) { return a.after_gate < b.after_gate; });

  DensityBranch branch;
  branch.weight = 1.0;
  branch.rho = make_density(circuit.n_qubits, init);
  size_t next_cut = 0;
  for (int g = -1; g < circuit.gate_count(); ++g) {
    if (g >= 0) apply_gate(branch.rho, circuit.gates[g], noise);
    while (next_cut < ordered.size() && ordered[next_cut].after_gate == g) {
      const CutOp& op = ordered[next_cut++];
      double before = branch.rho.trace();
      // The recorded outcome can be misread with probability p_meas; the
      // wire is still reset to the variant's prepare state.
      Matrix2 hit = record_op(op.project, op.prepare);
      Matrix2 miss = record_op(flip(op.project), op.prepare);
      Matrix prev = branch.rho.mat;
      apply_wire_op(branch.rho, op.wire, hit);
      if (noise.p_meas > 0.0) {
        DensityMatrix other;
        other.n = branch.rho.n;
        other.mat = prev;
        apply_wire_op(other, op.wire, miss);
        branch.rho.mat = (1.0 - noise.p_meas) * branch.rho.mat + noise.p_meas * other.mat;
      }
      double after = branch.rho.trace();
      if (after <= 1e-300) {
        branch.weight = 0.0;
        branch.rho.mat.setZero();
        return branch;
      }
      branch.weight *= after / before;
      branch.rho.mat /= after / before;
    }
  }
  return branch;
}

Distribution output_distribution(const Statevector& state, const std::vector<int>& wires,
                                 double p_meas) {
  for (int w : wires) {
    if (w < 0 || w >= state.n) throw Error(ErrorCode::Invalid, "output wire out of range");
  }
  Distribution full(state.n);
  full.mass = state.amp.cwiseAbs2();
  Distribution out = marginalize(full, wires);
  return apply_readout_flip(out, p_meas);
}

Distribution output_distribution(const DensityMatrix& rho, const std::vector<int>& wires,
                                 double p_meas) {
  for (int w : wires) {
    if (w < 0 || w >= rho.n) throw Error(ErrorCode::Invalid, "output wire out of range");
  }
  Distribution full(rho.n);
  full.mass = rho.mat.diagonal().real();
  Distribution out = marginalize(full, wires);
  return apply_readout_flip(out, p_meas);
}

double expectation(const Statevector& state, PauliOp op, int wire) {
  if (wire < 0 || wire >= state.n) throw Error(ErrorCode::Invalid, "wire out of range");
  const int64_t bit = int64_t{1} << wire;
  Matrix2 reduced = Matrix2::Zero();
  for (int64_t i = 0; i < state.amp.size(); ++i) {
    if (i & bit) continue;
    Complex a0 = state.amp[i], a1 = state.amp[i | bit];
    reduced(0, 0) += a0 * std::conj(a0);
    reduced(0, 1) += a0 * std::conj(a1);
    reduced(1, 0) += a1 * std::conj(a0);
    reduced(1, 1) += a1 * std::conj(a1);
  }
  return (pauli_matrix(op) * reduced).trace().real();
}

}  // namespace qcut
