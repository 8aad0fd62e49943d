#pragma once

#include <cstdint>
#include <vector>

#include "qcut/nscc.hpp"
#include "qcut/wirecut.hpp"

namespace qcut {

/// Average gate per term: mean filtered gate count per reconstruction term,
/// summed across fragments. Postselected upstream pairs are averaged; the
/// downstream expansion is weighted by |coefficient| / 2.
struct AgtReport {
  double total = 0.0;
  double uncut_total = 0.0;
  std::vector<double> per_term;  // filled when the term space is small
};

AgtReport agt(const WirecutPlan& plan, const Circuit& uncut, bool two_qubit_only = true);

/// NSCC analogue: per Pauli term tuple, the mean filtered gate count over the
/// term's (prepare, record) branch combinations, averaged over the 4^K tuples.
AgtReport agt(const NsccPlan& plan, const Circuit& uncut, bool two_qubit_only = true);

/// Exact executable-variant count (1 when there are no cuts).
int64_t subcircuit_count(const WirecutPlan& plan);
int64_t subcircuit_count(const NsccPlan& plan);

}  // namespace qcut
