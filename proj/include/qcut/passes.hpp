#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/simulator.hpp"
#include "qcut/states.hpp"

namespace qcut {

/// Embeds a single-wire operator at local bit `pos` of a k-qubit space.
Matrix embed_wire_op(const Matrix2& op, int pos, int k);

/// Embedding matrix (2^k x 2^{k-1}) that fixes local bit `pos` to |phi>.
Matrix embed_wire_ket(const Vector2& phi, int pos, int k);

/// Candidate local unitary U_B = (<phi| (x) I) U (|phi> (x) I); returned iff
/// U (|phi> (x) I) = |phi> (x) U_B holds to 1e-10 and U_B is unitary.
std::optional<Matrix> try_factor_initial(const Matrix& u, const Vector2& phi, int pos);
std::optional<Matrix> try_factor_initial(const Matrix& u, StateLabel phi, int pos);

/// Measurement-side mirror: returned iff (<u| (x) I) U = U_B (<u| (x) I).
std::optional<Matrix> try_factor_measure(const Matrix& u, const Vector2& u_state, int pos);
std::optional<Matrix> try_factor_measure(const Matrix& u, StateLabel u_state, int pos);

/// True iff U commutes with I (x) |phi><phi| embedded at pos. Equivalent to
/// factorability for rank-one projectors; used as the cheap estimator check.
bool commutes_with_state(const Matrix& u, const Vector2& phi, int pos);
bool commutes_with_state(const Matrix& u, StateLabel phi, int pos);
bool commutes_with_projector(const Matrix& u, const Matrix2& m_r, int pos);
bool commutes_with_projector(const Matrix& u, StateLabel label, int pos);

/// Closed-form rewrite entry for the prebuilt template set
/// {CX, CZ, RZZ, SWAP} x six labels x both roles x both positions.
struct TemplateEntry {
  bool factorable = false;
  // Replacement bound to the gate's other wire; nullopt = gate drops.
  std::optional<Gate> replacement;
};
std::optional<TemplateEntry> template_rewrite(const Gate& gate, StateLabel label,
                                              int pos, bool measure_side);

/// A circuit together with the state knowledge the passes exploit:
/// known initial labels, mid-circuit measure-and-prepare cuts, and
/// postselected end projectors.
struct AnnotatedCircuit {
  Circuit circuit;
  std::vector<CutOp> cuts;
  InitLabels init_labels;
  std::map<int, StateLabel> end_projectors;
};

struct RemovedGate {
  int index = 0;  // index in the input circuit
  std::string reason;  // eigenvector-elim | template | factorization
};

struct PassReport {
  int gates_before = 0;
  int gates_after = 0;
  std::vector<RemovedGate> removed;
  std::vector<RemovedGate> rewritten;  // two-qubit gates demoted to one-qubit
};
std::string report_to_json(const PassReport& report);

struct GateReductionEstimate {
  int two_qubit = 0;  // two-qubit gates removed or demoted to one-qubit
  int one_qubit = 0;
};

/// Forward scan from the known initial states (and cut prepare labels).
Circuit isdo_pass(const Circuit& circuit, const InitLabels& init_labels,
                  PassReport* report = nullptr);

/// Backward scan from the postselected end projectors (and cut projectors).
Circuit msdo_pass(const Circuit& circuit, const std::map<int, StateLabel>& projector_labels,
                  PassReport* report = nullptr);

/// ISDO forward then MSDO backward, one round each, with cut positions
/// remapped to the optimized gate sequence.
AnnotatedCircuit sdo_optimize(const AnnotatedCircuit& input, PassReport* report = nullptr);

/// Commutation-check sweep that counts removable gates without rewriting.
GateReductionEstimate estimate_reduction(const AnnotatedCircuit& input);

}  // namespace qcut
