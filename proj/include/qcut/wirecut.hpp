#pragma once

#include <string>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/distribution.hpp"
#include "qcut/passes.hpp"
#include "qcut/simulator.hpp"

namespace qcut {

/// A wire cut: the wire is severed right after gate index `position`
/// (-1 = before all gates).
struct CutPoint {
  int wire = 0;
  int position = -1;

  bool operator==(const CutPoint& o) const = default;
  bool operator<(const CutPoint& o) const {
    return wire != o.wire ? wire < o.wire : position < o.position;
  }
};

struct CutSpec {
  std::vector<CutPoint> cuts;
};

std::string cutspec_to_json(const CutSpec& spec);
CutSpec cutspec_from_json(const std::string& text);

/// One connected component of the cut circuit, on fragment-local wires.
struct Fragment {
  Circuit circuit;
  std::vector<int> host_map;     // fragment wire -> original wire
  std::vector<int> out_cuts;     // fragment wires measured for upstream roles
  std::vector<int> in_cuts;      // fragment wires initialized for downstream roles
  std::vector<int> out_cut_ids;  // global cut index per out_cuts entry
  std::vector<int> in_cut_ids;
  std::vector<int> outputs;      // fragment wires carrying circuit outputs
};

struct Partition {
  struct Endpoint {
    int fragment = 0;
    int wire = 0;  // fragment-local
  };

  std::vector<Fragment> fragments;
  std::vector<CutPoint> cuts;  // canonical (wire, position) order
  std::vector<Endpoint> upstream;   // per cut
  std::vector<Endpoint> downstream;
  std::vector<int> output_wires;    // original measured wires, sorted
  std::vector<Endpoint> outputs;    // location of each output wire
};

/// Splits the circuit at the cut points. Every cut must separate its two wire
/// segments into different connected components; a non-separating spec is an
/// InfeasibleCut error (that case belongs to nscc).
Partition partition(const Circuit& circuit, const CutSpec& spec);

/// Candidate cut slots: (wire, after-gate) positions adjacent to a two-qubit
/// gate, with at least one later gate on the wire.
std::vector<CutPoint> cut_candidates(const Circuit& circuit);

/// Searches for a cut spec whose fragments all have width <= max_fragment_width.
/// Exhaustive over subsets when there are <= 8 candidate slots; otherwise a
/// deterministic sequential chunking over the two-qubit gates.
CutSpec find_cuts(const Circuit& circuit, int max_fragment_width, int max_cuts);

enum class OutKind { Measure, Postselect };

/// Executable setting for one upstream cut wire: either measure in `basis`
/// (a basis rotation is appended and the Z outcome recorded), or postselect
/// the given eigenstate (MSDO split).
struct OutSetting {
  OutKind kind = OutKind::Measure;
  Basis basis = Basis::Z;
  StateLabel label = StateLabel::Zero;  // Postselect only

  auto operator<=>(const OutSetting&) const = default;
};

struct VariantKey {
  int fragment = 0;
  std::vector<OutSetting> outs;   // per fragment out-cut, in out_cuts order
  std::vector<StateLabel> inits;  // per fragment in-cut, in in_cuts order

  auto operator<=>(const VariantKey&) const = default;
};

struct SubcircuitVariant {
  VariantKey key;
  AnnotatedCircuit prepared;  // rotations appended; init/end labels attached
  Circuit optimized;          // post-SDO (equals prepared.circuit when SDO off)
};

struct WirecutPlan {
  Partition part;
  std::vector<Basis> biased;  // per cut
  bool msdo = true;
  bool sdo = false;
  std::vector<SubcircuitVariant> variants;  // sorted by key
};

/// Instantiates every executable subcircuit. Upstream settings per cut:
/// 4 with MSDO (biased split x2 + the two other Pauli measurements), 3 without;
/// downstream inits per cut: the biased basis pair + the other two +1 states.
WirecutPlan enumerate_variants(const Partition& part, const std::vector<Basis>& biased,
                               bool msdo, bool sdo);

/// Pauli maximizing the estimated removable two-qubit gates over the variants
/// the cut induces (upstream postselected pair + downstream eigenstate inits).
/// Ties broken Z > X > Y.
Basis select_biased_observable(const Partition& part, int cut);
std::vector<Basis> select_biased_observables(const Partition& part);

/// Runs one variant: exact statevector when noise is zero, else the density
/// path. The result is a signed-ready marginal over [fragment outputs] ++
/// [measured out-cut outcome bits]; its total mass is the postselection weight.
Distribution run_variant(const SubcircuitVariant& variant, const Fragment& fragment,
                         const NoiseModel& noise = {});

std::vector<Distribution> run_all_variants(const WirecutPlan& plan,
                                           const NoiseModel& noise = {});

/// Quasi-probability recombination: sum over per-cut term tuples of the
/// coefficient-table expansion, tensoring fragment marginals through the
/// host map. `results` is parallel to plan.variants.
Distribution reconstruct(const std::vector<Distribution>& results, const WirecutPlan& plan);

/// Plan dump with coefficients as exact rationals.
std::string plan_to_json(const WirecutPlan& plan);

// --- reconstruction term tables (shared with the metrics module) ---

/// Term indices per cut: 0 = I, 1 = biased Pauli, remaining two bases of
/// {Z, X, Y} in canonical order at 2 and 3.
Basis term_basis(Basis biased, int term);

struct UpEntry {
  OutSetting setting;
  double w0 = 1.0;  // weight for outcome bit 0 (Postselect: the only weight)
  double w1 = 1.0;
};
std::vector<UpEntry> upstream_entries(Basis biased, int term, bool msdo);

struct DownEntry {
  StateLabel label = StateLabel::Zero;
  double coeff = 1.0;
};
std::vector<DownEntry> downstream_entries(Basis biased, int term);

}  // namespace qcut
