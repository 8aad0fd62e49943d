#pragma once

#include <string>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/distribution.hpp"
#include "qcut/passes.hpp"
#include "qcut/simulator.hpp"
#include "qcut/wirecut.hpp"

namespace qcut {

/// One postselection record of an NSCC variant. The variant measures its
/// basis and resets to the prepare state; each of the 2^K outcome records is
/// a branch carrying a consolidated reconstruction coefficient. Zero-weight
/// branches are kept (the AGT accounting still references them).
struct NsccBranch {
  std::vector<CutOp> ops;      // on the base circuit
  double weight = 0.0;         // coefficient including the (1/2)^K normalization
  AnnotatedCircuit prepared;
  AnnotatedCircuit optimized;  // post-SDO, cut positions remapped
};

/// One executable subcircuit: per cut a (basis, prepare-eigenstate) pair.
struct NsccVariant {
  std::vector<Basis> bases;
  std::vector<StateLabel> prepares;
  std::vector<NsccBranch> branches;  // 2^K, branch b: cut c mismatched iff bit c of b
};

struct NsccPlan {
  Circuit base;
  std::vector<CutPoint> cuts;  // canonical (wire, position) order
  bool sdo = true;
  std::vector<NsccVariant> variants;  // 6^K
};

/// Enumerates the matched measure-and-prepare variants (6 per cut). Cuts may
/// be non-separating; positions are validated against the base circuit.
NsccPlan nscc_variants(const Circuit& circuit, const CutSpec& spec, bool sdo = true);

/// Simulates one branch; the returned masses sum to the branch postselection
/// probability. Zero-weight branches return an all-zero distribution.
Distribution run_nscc_branch(const NsccBranch& branch, int n_output_bits,
                             const NoiseModel& noise = {});

std::vector<std::vector<Distribution>> run_all_branches(const NsccPlan& plan,
                                                        const NoiseModel& noise = {});

/// Coefficient-weighted sum of the branch distributions; equals the uncut
/// output distribution under exact noiseless simulation.
Distribution nscc_reconstruct(const std::vector<std::vector<Distribution>>& results,
                              const NsccPlan& plan);

/// Greedy optimization-only cut placement: picks up to max_cuts slots, each
/// maximizing the estimated removable two-qubit gates summed over its 6
/// variants, rescoring after each pick. In strict mode only positive marginal
/// gains are taken (possibly returning an empty spec).
CutSpec nscc_find_cuts(const Circuit& circuit, int max_cuts, bool strict = true);

std::string nscc_plan_to_json(const NsccPlan& plan);

}  // namespace qcut
