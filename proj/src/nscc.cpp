#include "qcut/nscc.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace qcut {

namespace {

// Consolidated per-cut coefficient for variant basis Q, prepare w, record v:
// the I term (realized in the Z basis) contributes +1 to every Z record, and
// the Q term contributes sign(v)*sign(w). Halved per cut at plan build time.
double cut_coefficient(Basis basis, StateLabel prepare, StateLabel project) {
  double sign = (eigen_index(prepare) == 0 ? 1.0 : -1.0) *
                (eigen_index(project) == 0 ? 1.0 : -1.0);
  return (basis == Basis::Z ? 1.0 : 0.0) + sign;
}

}  // namespace

NsccPlan nscc_variants(const Circuit& circuit, const CutSpec& spec, bool sdo) {
  circuit.validate();
  NsccPlan plan;
  plan.base = circuit;
  plan.sdo = sdo;
  plan.cuts = spec.cuts;
  std::sort(plan.cuts.begin(), plan.cuts.end());
  for (size_t i = 0; i < plan.cuts.size(); ++i) {
    const CutPoint& c = plan.cuts[i];
    if (c.wire < 0 || c.wire >= circuit.n_qubits) {
      throw Error(ErrorCode::Invalid, "cut wire out of range");
    }
    if (c.position < -1 || c.position >= circuit.gate_count()) {
      throw Error(ErrorCode::Invalid, "cut position out of range");
    }
    if (i > 0 && plan.cuts[i] == plan.cuts[i - 1]) {
      throw Error(ErrorCode::Invalid, "duplicate cut point");
    }
  }

  const int k = static_cast<int>(plan.cuts.size());
  const size_t n_variants = static_cast<size_t>(std::pow(6, k) + 0.5);
  for (size_t v = 0; v < n_variants; ++v) {
    NsccVariant variant;
    size_t code = v;
    for (int c = 0; c < k; ++c) {
      int setting = static_cast<int>(code % 6);
      code /= 6;
      variant.bases.push_back(kAllBases[setting / 2]);
      variant.prepares.push_back(basis_state(kAllBases[setting / 2], setting % 2));
    }
    for (size_t b = 0; b < (size_t{1} << k); ++b) {
      NsccBranch branch;
      branch.weight = std::pow(0.5, k);
      for (int c = 0; c < k; ++c) {
        StateLabel prep = variant.prepares[c];
        StateLabel proj = ((b >> c) & 1) ? flip(prep) : prep;
        branch.ops.push_back({plan.cuts[c].position, plan.cuts[c].wire, proj, prep});
        branch.weight *= cut_coefficient(variant.bases[c], prep, proj);
      }
      branch.prepared = AnnotatedCircuit{circuit, branch.ops, {}, {}};
      branch.optimized = sdo ? sdo_optimize(branch.prepared) : branch.prepared;
      variant.branches.push_back(std::move(branch));
    }
    plan.variants.push_back(std::move(variant));
  }
  return plan;
}

Distribution run_nscc_branch(const NsccBranch& branch, int n_output_bits,
                             const NoiseModel& noise) {
  if (branch.weight == 0.0) return Distribution(n_output_bits);
  const Circuit& circ = branch.optimized.circuit;
  if (noise.is_zero()) {
    Branch b = measure_branches(circ, branch.optimized.cuts)[0];
    Distribution d = output_distribution(b.state, circ.measured);
    d.mass *= b.weight;
    return d;
  }
  DensityBranch b = density_branch(circ, branch.optimized.cuts, {}, noise);
  Distribution d = output_distribution(b.rho, circ.measured, noise.p_meas);
  d.mass *= b.weight;
  return d;
}

std::vector<std::vector<Distribution>> run_all_branches(const NsccPlan& plan,
                                                        const NoiseModel& noise) {
  const int n_bits = static_cast<int>(plan.base.measured.size());
  std::vector<std::vector<Distribution>> out;
  out.reserve(plan.variants.size());
  for (const NsccVariant& v : plan.variants) {
    std::vector<Distribution> dists;
    dists.reserve(v.branches.size());
    for (const NsccBranch& b : v.branches) {
      dists.push_back(run_nscc_branch(b, n_bits, noise));
    }
    out.push_back(std::move(dists));
  }
  return out;
}

Distribution nscc_reconstruct(const std::vector<std::vector<Distribution>>& results,
                              const NsccPlan& plan) {
  if (results.size() != plan.variants.size()) {
    throw Error(ErrorCode::Invalid, "missing variant result");
  }
  Distribution dist(static_cast<int>(plan.base.measured.size()));
  for (size_t v = 0; v < plan.variants.size(); ++v) {
    const NsccVariant& variant = plan.variants[v];
    if (results[v].size() != variant.branches.size()) {
      throw Error(ErrorCode::Invalid, "missing branch result");
    }
    for (size_t b = 0; b < variant.branches.size(); ++b) {
      double w = variant.branches[b].weight;
      if (w == 0.0) continue;
      dist.mass += w * results[v][b].mass;
    }
  }
  return dist;
}

namespace {

std::vector<CutOp> fixed_ops(const std::vector<CutPoint>& cuts) {
  std::vector<CutOp> ops;
  for (const CutPoint& c : cuts) {
    ops.push_back({c.position, c.wire, StateLabel::Zero, StateLabel::Zero});
  }
  return ops;
}

// Estimated removable two-qubit gates summed over the slot's 6 matched
// variants, with already-chosen cuts held at a fixed (Z, |0>) assignment.
int slot_score(const Circuit& circuit, const std::vector<CutPoint>& chosen,
               const CutPoint& cand) {
  int score = 0;
  for (Basis b : kAllBases) {
    for (int i = 0; i < 2; ++i) {
      StateLabel s = basis_state(b, i);
      std::vector<CutOp> ops = fixed_ops(chosen);
      ops.push_back({cand.position, cand.wire, s, s});
      score += estimate_reduction({circuit, ops, {}, {}}).two_qubit;
    }
  }
  return score;
}

}  // namespace

CutSpec nscc_find_cuts(const Circuit& circuit, int max_cuts, bool strict) {
  circuit.validate();
  if (max_cuts < 1) throw Error(ErrorCode::Config, "max_cuts must be at least 1");
  std::vector<CutPoint> cands = cut_candidates(circuit);
  std::vector<CutPoint> chosen;
  for (int round = 0; round < max_cuts && !cands.empty(); ++round) {
    int baseline = 6 * estimate_reduction({circuit, fixed_ops(chosen), {}, {}}).two_qubit;
    int best_gain = strict ? 0 : -1;
    size_t best = cands.size();
    for (size_t i = 0; i < cands.size(); ++i) {
      int gain = slot_score(circuit, chosen, cands[i]) - baseline;
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == cands.size()) break;  // strict: nothing scores above zero
    chosen.push_back(cands[best]);
    cands.erase(cands.begin() + static_cast<long>(best));
  }
  std::sort(chosen.begin(), chosen.end());
  return {chosen};
}

std::string nscc_plan_to_json(const NsccPlan& plan) {
  nlohmann::json j;
  j["cuts"] = nlohmann::json::parse(cutspec_to_json({plan.cuts})).at("cuts");
  j["sdo"] = plan.sdo;
  j["per_cut_scale"] = {{"num", 1}, {"den", 2}};
  j["variants"] = nlohmann::json::array();
  for (const NsccVariant& v : plan.variants) {
    nlohmann::json jv;
    jv["settings"] = nlohmann::json::array();
    for (size_t c = 0; c < v.bases.size(); ++c) {
      jv["settings"].push_back(
          {{"basis", to_string(v.bases[c])}, {"prepare", to_string(v.prepares[c])}});
    }
    jv["branches"] = nlohmann::json::array();
    for (const NsccBranch& b : v.branches) {
      nlohmann::json jb;
      jb["coeff"] = {{"num", static_cast<int>(std::round(
                                 b.weight * std::pow(2.0, v.bases.size())))},
                     {"den", 1 << v.bases.size()}};
      jb["records"] = nlohmann::json::array();
      for (const CutOp& op : b.ops) jb["records"].push_back(to_string(op.project));
      jv["branches"].push_back(jb);
    }
    j["variants"].push_back(jv);
  }
  return j.dump();
}

}  // namespace qcut
