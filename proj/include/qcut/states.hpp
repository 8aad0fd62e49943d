#pragma once

#include <array>
#include <optional>
#include <string>

#include "qcut/types.hpp"

namespace qcut {

/// The six canonical single-qubit pure states tracked by the passes and
/// used as cut initializations / postselection projectors.
enum class StateLabel { Zero, One, Plus, Minus, PlusI, MinusI };

/// Measurement bases for cut wires. Eigenstates in eigenvalue order (+1, -1):
/// Z: {Zero, One}, X: {Plus, Minus}, Y: {PlusI, MinusI}.
enum class Basis { Z, X, Y };

/// Single-wire Pauli observables for expectation values.
enum class PauliOp { I, X, Y, Z };

Vector2 ket(StateLabel label);
Matrix2 projector(StateLabel label);

Matrix2 pauli_matrix(PauliOp op);

/// Eigenstate of a basis: index 0 -> eigenvalue +1, index 1 -> eigenvalue -1.
StateLabel basis_state(Basis basis, int index);
Basis basis_of(StateLabel label);
int eigen_index(StateLabel label);
StateLabel flip(StateLabel label);

PauliOp basis_pauli(Basis basis);

/// Matches a normalized 2-vector against a canonical label up to global phase.
std::optional<StateLabel> match_label(const Vector2& v, double tol = kFactorTol);

std::string to_string(StateLabel label);
std::string to_string(Basis basis);
std::string to_string(PauliOp op);
std::optional<Basis> basis_from_string(const std::string& s);

inline constexpr std::array<StateLabel, 6> kAllLabels = {
    StateLabel::Zero, StateLabel::One,    StateLabel::Plus,
    StateLabel::Minus, StateLabel::PlusI, StateLabel::MinusI};

inline constexpr std::array<Basis, 3> kAllBases = {Basis::Z, Basis::X, Basis::Y};

}  // namespace qcut
