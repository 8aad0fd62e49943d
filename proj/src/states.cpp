#include "qcut/states.hpp"

#include <cmath>

namespace qcut {

namespace {
const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

Vector2 ket(StateLabel label) {
  Vector2 v;
  switch (label) {
    case StateLabel::Zero: v << 1, 0; break;
    case StateLabel::One: v << 0, 1; break;
    case StateLabel::Plus: v << kInvSqrt2, kInvSqrt2; break;
    case StateLabel::Minus: v << kInvSqrt2, -kInvSqrt2; break;
    case StateLabel::PlusI: v << kInvSqrt2, kI * kInvSqrt2; break;
    case StateLabel::MinusI: v << kInvSqrt2, -kI * kInvSqrt2; break;
  }
  return v;
}

Matrix2 projector(StateLabel label) {
  Vector2 v = ket(label);
  return v * v.adjoint();
}

Matrix2 pauli_matrix(PauliOp op) {
  Matrix2 m;
  switch (op) {
    case PauliOp::I: m << 1, 0, 0, 1; break;
    case PauliOp::X: m << 0, 1, 1, 0; break;
    case PauliOp::Y: m << 0, -kI, kI, 0; break;
    case PauliOp::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

StateLabel basis_state(Basis basis, int index) {
  switch (basis) {
    case Basis::Z: return index == 0 ? StateLabel::Zero : StateLabel::One;
    case Basis::X: return index == 0 ? StateLabel::Plus : StateLabel::Minus;
    case Basis::Y: return index == 0 ? StateLabel::PlusI : StateLabel::MinusI;
  }
  throw Error(ErrorCode::Invalid, "bad basis");
}

Basis basis_of(StateLabel label) {
  switch (label) {
    case StateLabel::Zero:
    case StateLabel::One: return Basis::Z;
    case StateLabel::Plus:
    case StateLabel::Minus: return Basis::X;
    case StateLabel::PlusI:
    case StateLabel::MinusI: return Basis::Y;
  }
  throw Error(ErrorCode::Invalid, "bad label");
}

int eigen_index(StateLabel label) {
  switch (label) {
    case StateLabel::Zero:
    case StateLabel::Plus:
    case StateLabel::PlusI: return 0;
    default: return 1;
  }
}

StateLabel flip(StateLabel label) {
  return basis_state(basis_of(label), 1 - eigen_index(label));
}

PauliOp basis_pauli(Basis basis) {
  switch (basis) {
    case Basis::Z: return PauliOp::Z;
    case Basis::X: return PauliOp::X;
    case Basis::Y: return PauliOp::Y;
  }
  throw Error(ErrorCode::Invalid, "bad basis");
}

std::optional<StateLabel> match_label(const Vector2& v, double tol) {
  for (StateLabel label : kAllLabels) {
    // |<u|v>| = 1 iff equal up to global phase (for normalized inputs).
    if (std::abs(std::abs(ket(label).dot(v)) - 1.0) <= tol) return label;
  }
  return std::nullopt;
}

std::string to_string(StateLabel label) {
  switch (label) {
    case StateLabel::Zero: return "|0>";
    case StateLabel::One: return "|1>";
    case StateLabel::Plus: return "|+>";
    case StateLabel::Minus: return "|->";
    case StateLabel::PlusI: return "|+i>";
    case StateLabel::MinusI: return "|-i>";
  }
  return "?";
}

std::string to_string(Basis basis) {
  switch (basis) {
    case Basis::Z: return "Z";
    case Basis::X: return "X";
    case Basis::Y: return "Y";
  }
  return "?";
}

std::string to_string(PauliOp op) {
  switch (op) {
    case PauliOp::I: return "I";
    case PauliOp::X: return "X";
    case PauliOp::Y: return "Y";
    case PauliOp::Z: return "Z";
  }
  return "?";
}

std::optional<Basis> basis_from_string(const std::string& s) {
  if (s == "Z" || s == "z") return Basis::Z;
  if (s == "X" || s == "x") return Basis::X;
  if (s == "Y" || s == "y") return Basis::Y;
  return std::nullopt;
}

}  // namespace qcut
