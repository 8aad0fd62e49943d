#include "qcut/passes.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace qcut {

namespace {

int local_width(const Matrix& u) {
  int k = 0;
  while ((int64_t{1} << k) < u.rows()) ++k;
  if (u.rows() != u.cols() || u.rows() != (int64_t{1} << k)) {
    throw Error(ErrorCode::Invalid, "operator dimension is not a power of two");
  }
  return k;
}

void check_pos(int pos, int k) {
  if (pos < 0 || pos >= k) throw Error(ErrorCode::Invalid, "factor position out of range");
}

}  // namespace

Matrix embed_wire_ket(const Vector2& phi, int pos, int k) {
  check_pos(pos, k);
  const int64_t rows = int64_t{1} << k;
  const int64_t cols = rows >> 1;
  Matrix e = Matrix::Zero(rows, cols);
  const int64_t low_mask = (int64_t{1} << pos) - 1;
  for (int64_t j = 0; j < cols; ++j) {
    int64_t base = ((j & ~low_mask) << 1) | (j & low_mask);
    e(base, j) = phi[0];
    e(base | (int64_t{1} << pos), j) = phi[1];
  }
  return e;
}

Matrix embed_wire_op(const Matrix2& op, int pos, int k) {
  check_pos(pos, k);
  const int64_t rows = int64_t{1} << k;
  Matrix full = Matrix::Zero(rows, rows);
  const int64_t low_mask = (int64_t{1} << pos) - 1;
  for (int64_t j = 0; j < (rows >> 1); ++j) {
    int64_t base = ((j & ~low_mask) << 1) | (j & low_mask);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        full(base | (int64_t{a} << pos), base | (int64_t{b} << pos)) = op(a, b);
      }
    }
  }
  return full;
}

std::optional<Matrix> try_factor_initial(const Matrix& u, const Vector2& phi, int pos) {
  const int k = local_width(u);
  Matrix e = embed_wire_ket(phi.normalized(), pos, k);
  Matrix ub = e.adjoint() * u * e;
  double residual = (u * e - e * ub).cwiseAbs().maxCoeff();
  double unit = (ub.adjoint() * ub - Matrix::Identity(ub.rows(), ub.cols()))
                    .cwiseAbs()
                    .maxCoeff();
  if (residual > kFactorTol || unit > kFactorTol) return std::nullopt;
  return ub;
}

std::optional<Matrix> try_factor_measure(const Matrix& u, const Vector2& u_state, int pos) {
  const int k = local_width(u);
  Matrix e = embed_wire_ket(u_state.normalized(), pos, k);
  Matrix ub = e.adjoint() * u * e;
  double residual = (e.adjoint() * u - ub * e.adjoint()).cwiseAbs().maxCoeff();
  double unit = (ub.adjoint() * ub - Matrix::Identity(ub.rows(), ub.cols()))
                    .cwiseAbs()
                    .maxCoeff();
  if (residual > kFactorTol || unit > kFactorTol) return std::nullopt;
  return ub;
}

std::optional<Matrix> try_factor_initial(const Matrix& u, StateLabel phi, int pos) {
  return try_factor_initial(u, ket(phi), pos);
}

std::optional<Matrix> try_factor_measure(const Matrix& u, StateLabel u_state, int pos) {
  return try_factor_measure(u, ket(u_state), pos);
}

bool commutes_with_projector(const Matrix& u, const Matrix2& m_r, int pos) {
  const int k = local_width(u);
  Matrix p = embed_wire_op(m_r, pos, k);
  return (u * p - p * u).cwiseAbs().maxCoeff() <= kFactorTol;
}

bool commutes_with_state(const Matrix& u, const Vector2& phi, int pos) {
  Vector2 v = phi.normalized();
  return commutes_with_projector(u, (v * v.adjoint()).eval(), pos);
}

bool commutes_with_state(const Matrix& u, StateLabel phi, int pos) {
  return commutes_with_state(u, ket(phi), pos);
}

bool commutes_with_projector(const Matrix& u, StateLabel label, int pos) {
  return commutes_with_projector(u, projector(label), pos);
}

std::optional<TemplateEntry> template_rewrite(const Gate& gate, StateLabel label,
                                              int pos, bool measure_side) {
  (void)measure_side;  // the tables below are symmetric between roles
  if (!gate.is_two_qubit() || (pos != 0 && pos != 1)) return std::nullopt;
  const int other = gate.qubits[1 - pos];
  auto drop = [] {
    TemplateEntry e;
    e.factorable = true;
    return e;
  };
  auto repl = [&](GateKind k, std::vector<double> params) {
    TemplateEntry e;
    e.factorable = true;
    e.replacement = make_gate(k, std::move(params), {other});
    return e;
  };
  auto stuck = [] { return TemplateEntry{}; };

  switch (gate.kind) {
    case GateKind::Rzz:
      if (label == StateLabel::Zero) return repl(GateKind::Rz, {gate.params[0]});
      if (label == StateLabel::One) return repl(GateKind::Rz, {-gate.params[0]});
      return std::nullopt;  // X/Y-axis states: outcome depends on theta
    case GateKind::Cx:
      if (pos == 0) {  // control wire
        if (label == StateLabel::Zero) return drop();
        if (label == StateLabel::One) return repl(GateKind::X, {});
        return stuck();
      }
      // target wire
      if (label == StateLabel::Plus) return drop();
      if (label == StateLabel::Minus) return repl(GateKind::Z, {});
      return stuck();
    case GateKind::Cz:
      if (label == StateLabel::Zero) return drop();
      if (label == StateLabel::One) return repl(GateKind::Z, {});
      return stuck();
    case GateKind::Swap:
      return stuck();
    default:
      return std::nullopt;
  }
}

std::string report_to_json(const PassReport& report) {
  nlohmann::json j;
  j["gates_before"] = report.gates_before;
  j["gates_after"] = report.gates_after;
  j["removed"] = nlohmann::json::array();
  for (const RemovedGate& r : report.removed) {
    j["removed"].push_back({{"index", r.index}, {"reason", r.reason}});
  }
  j["rewritten"] = nlohmann::json::array();
  for (const RemovedGate& r : report.rewritten) {
    j["rewritten"].push_back({{"index", r.index}, {"reason", r.reason}});
  }
  return j.dump();
}

namespace {

// Matches a 2x2 unitary against the one-qubit gate set, up to global phase.
// Outer nullopt: not representable. Inner nullopt: identity (gate drops).
std::optional<std::optional<Gate>> match_one_qubit(const Matrix& ub, int wire) {
  auto matches = [&](const Matrix2& target) {
    Eigen::Index r, c;
    target.cwiseAbs().maxCoeff(&r, &c);
    Complex lam = ub(r, c) / target(r, c);
    if (std::abs(std::abs(lam) - 1.0) > 1e-9) return false;
    return (ub - lam * target).cwiseAbs().maxCoeff() <= 1e-9;
  };
  if (matches(Matrix2::Identity())) return std::optional<Gate>{};
  for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S,
                     GateKind::Sdg, GateKind::T}) {
    if (matches(gate_unitary(k, {}))) return std::optional<Gate>(make_gate(k, {}, {wire}));
  }
  if (std::abs(ub(0, 1)) <= 1e-9 && std::abs(ub(1, 0)) <= 1e-9) {
    double theta = std::arg(ub(1, 1) / ub(0, 0));
    return std::optional<Gate>(make_gate(GateKind::Rz, {theta}, {wire}));
  }
  return std::nullopt;
}

struct Engine {
  std::vector<std::optional<Gate>> slots;
  PassReport report;
  GateReductionEstimate est;
  bool use_commutation = false;  // estimator mode: decide via commutation only

  explicit Engine(const Circuit& circuit) {
    report.gates_before = circuit.gate_count();
    slots.reserve(circuit.gates.size());
    for (const Gate& g : circuit.gates) slots.emplace_back(g);
  }

  void note_removed(int idx, const char* reason) {
    report.removed.push_back({idx, reason});
  }

  // One-qubit gate against a known state (forward) or bra (backward).
  // Returns the propagated vector; empties the slot on eigenvector hits.
  void handle_one_qubit(int idx, std::map<int, Vector2>& frontier, bool forward) {
    const Gate& g = *slots[idx];
    auto it = frontier.find(g.qubits[0]);
    if (it == frontier.end()) return;
    const Vector2 v = it->second;
    if (std::abs(std::abs(v.dot(g.unitary * v)) - 1.0) <= kFactorTol) {
      slots[idx].reset();
      est.one_qubit++;
      note_removed(idx, "eigenvector-elim");
      return;
    }
    Vector2 out = forward ? Vector2(g.unitary * v) : Vector2(g.unitary.adjoint() * v);
    it->second = out.normalized();
  }

  void handle_two_qubit(int idx, std::map<int, Vector2>& frontier, bool forward) {
    const Gate g = *slots[idx];
    for (int pos : {0, 1}) {
      const int wire = g.qubits[pos];
      const int other = g.qubits[1 - pos];
      auto it = frontier.find(wire);
      if (it == frontier.end()) continue;
      const Vector2 phi = it->second;

      bool factorable = false;
      std::optional<Matrix> ub;
      std::optional<Gate> replacement;
      bool replacement_known = false;
      const char* reason = "factorization";

      if (auto lbl = match_label(phi)) {
        if (auto t = template_rewrite(g, *lbl, pos, /*measure_side=*/!forward)) {
          factorable = t->factorable;
          if (factorable) {
            replacement = t->replacement;
            replacement_known = true;
            reason = "template";
            ub = replacement ? Matrix(replacement->unitary) : Matrix(Matrix2::Identity());
          } else {
            continue;  // closed form says this role/state entangles
          }
        }
      }
      if (!factorable && !replacement_known) {
        if (use_commutation) {
          factorable = forward ? commutes_with_state(g.unitary, phi, pos)
                               : commutes_with_projector(
                                     g.unitary, (phi * phi.adjoint()).eval(), pos);
          if (factorable) {
            Matrix e = embed_wire_ket(phi, pos, 2);
            ub = Matrix(e.adjoint() * g.unitary * e);
          }
        } else {
          ub = forward ? try_factor_initial(g.unitary, phi, pos)
                       : try_factor_measure(g.unitary, phi, pos);
          factorable = ub.has_value();
        }
        if (!factorable) continue;
      }

      est.two_qubit++;
      if (!replacement_known) {
        auto m = match_one_qubit(*ub, other);
        if (!m) {
          // The residual one-qubit action is not in the gate set; keep the
          // gate (it is sound as-is) but still propagate both frontiers.
          est.two_qubit--;
          auto ot = frontier.find(other);
          if (ot != frontier.end()) {
            Vector2 out = forward ? Vector2(*ub * ot->second)
                                  : Vector2(ub->adjoint() * ot->second);
            ot->second = out.normalized();
          }
          return;
        }
        replacement = *m;
      }

      if (!replacement) {
        slots[idx].reset();
        note_removed(idx, reason);
      } else {
        slots[idx] = *replacement;
        report.rewritten.push_back({idx, reason});
      }

      auto ot = frontier.find(other);
      if (ot != frontier.end()) {
        const Vector2 v2 = ot->second;
        if (replacement && std::abs(std::abs(v2.dot(*ub * v2)) - 1.0) <= kFactorTol) {
          // The demoted gate is itself an eigenphase on the other wire.
          slots[idx].reset();
          report.rewritten.pop_back();
          est.one_qubit++;
          note_removed(idx, reason);
        } else {
          Vector2 out = forward ? Vector2(*ub * v2) : Vector2(ub->adjoint() * v2);
          ot->second = out.normalized();
        }
      }
      return;
    }
    // No factorization on any known wire: the gate entangles them away.
    frontier.erase(g.qubits[0]);
    frontier.erase(g.qubits[1]);
  }

  void handle(int idx, std::map<int, Vector2>& frontier, bool forward) {
    if (slots[idx]->is_two_qubit()) {
      handle_two_qubit(idx, frontier, forward);
    } else {
      handle_one_qubit(idx, frontier, forward);
    }
  }

  void forward_scan(const InitLabels& init_labels, const std::vector<CutOp>& cuts) {
    std::map<int, Vector2> frontier;
    for (auto [w, l] : init_labels) frontier[w] = ket(l);
    for (const CutOp& c : cuts) {
      if (c.after_gate == -1) frontier[c.wire] = ket(c.prepare);
    }
    for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
      if (slots[i]) handle(i, frontier, /*forward=*/true);
      for (const CutOp& c : cuts) {
        if (c.after_gate == i) frontier[c.wire] = ket(c.prepare);
      }
    }
  }

  void backward_scan(const std::map<int, StateLabel>& end_projectors,
                     const std::vector<CutOp>& cuts) {
    std::map<int, Vector2> frontier;
    for (auto [w, l] : end_projectors) frontier[w] = ket(l);
    for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
      for (const CutOp& c : cuts) {
        if (c.after_gate == i) frontier[c.wire] = ket(c.project);
      }
      if (slots[i]) handle(i, frontier, /*forward=*/false);
    }
  }

  // Compacts slots into a circuit and remaps cut positions.
  AnnotatedCircuit finish(const AnnotatedCircuit& in) {
    AnnotatedCircuit out;
    out.circuit = Circuit(in.circuit.n_qubits);
    out.circuit.measured = in.circuit.measured;
    out.init_labels = in.init_labels;
    out.end_projectors = in.end_projectors;
    std::vector<int> surviving_upto(slots.size() + 1, 0);
    for (size_t i = 0; i < slots.size(); ++i) {
      surviving_upto[i + 1] = surviving_upto[i] + (slots[i] ? 1 : 0);
      if (slots[i]) out.circuit.gates.push_back(*slots[i]);
    }
    out.cuts = in.cuts;
    for (CutOp& c : out.cuts) {
      c.after_gate = surviving_upto[c.after_gate + 1] - 1;
    }
    report.gates_after = out.circuit.gate_count();
    return out;
  }
};

}  // namespace

Circuit isdo_pass(const Circuit& circuit, const InitLabels& init_labels, PassReport* report) {
  circuit.validate();
  Engine engine(circuit);
  engine.forward_scan(init_labels, {});
  AnnotatedCircuit out = engine.finish({circuit, {}, init_labels, {}});
  if (report) *report = engine.report;
  return out.circuit;
}

Circuit msdo_pass(const Circuit& circuit, const std::map<int, StateLabel>& projector_labels,
                  PassReport* report) {
  circuit.validate();
  Engine engine(circuit);
  engine.backward_scan(projector_labels, {});
  AnnotatedCircuit out = engine.finish({circuit, {}, {}, projector_labels});
  if (report) *report = engine.report;
  return out.circuit;
}

AnnotatedCircuit sdo_optimize(const AnnotatedCircuit& input, PassReport* report) {
  input.circuit.validate();
  Engine engine(input.circuit);
  engine.forward_scan(input.init_labels, input.cuts);
  engine.backward_scan(input.end_projectors, input.cuts);
  AnnotatedCircuit out = engine.finish(input);
  if (report) *report = engine.report;
  return out;
}

GateReductionEstimate estimate_reduction(const AnnotatedCircuit& input) {
  Engine engine(input.circuit);
  engine.use_commutation = true;
  engine.forward_scan(input.init_labels, input.cuts);
  engine.backward_scan(input.end_projectors, input.cuts);
  return engine.est;
}

}  // namespace qcut
