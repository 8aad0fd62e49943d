#include "qcut/wirecut.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace qcut {

std::string cutspec_to_json(const CutSpec& spec) {
  nlohmann::json j;
  j["cuts"] = nlohmann::json::array();
  for (const CutPoint& c : spec.cuts) {
    j["cuts"].push_back({{"wire", c.wire}, {"after_gate", c.position}});
  }
  return j.dump();
}

CutSpec cutspec_from_json(const std::string& text) {
  CutSpec spec;
  auto j = nlohmann::json::parse(text);
  for (const auto& c : j.at("cuts")) {
    spec.cuts.push_back({c.at("wire").get<int>(), c.at("after_gate").get<int>()});
  }
  return spec;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition partition(const Circuit& circuit, const CutSpec& spec) {
  circuit.validate();
  Partition part;
  part.cuts = spec.cuts;
  std::sort(part.cuts.begin(), part.cuts.end());
  for (size_t i = 0; i < part.cuts.size(); ++i) {
    const CutPoint& c = part.cuts[i];
    if (c.wire < 0 || c.wire >= circuit.n_qubits) {
      throw Error(ErrorCode::Invalid, "cut wire out of range");
    }
    if (c.position < -1 || c.position >= circuit.gate_count()) {
      throw Error(ErrorCode::Invalid, "cut position out of range");
    }
    if (i > 0 && part.cuts[i] == part.cuts[i - 1]) {
      throw Error(ErrorCode::Invalid, "duplicate cut point");
    }
  }

  const int n = circuit.n_qubits;
  std::vector<std::vector<int>> wire_cuts(n);
  for (const CutPoint& c : part.cuts) wire_cuts[c.wire].push_back(c.position);

  std::vector<int> seg_base(n + 1, 0);
  for (int w = 0; w < n; ++w) {
    seg_base[w + 1] = seg_base[w] + static_cast<int>(wire_cuts[w].size()) + 1;
  }
  const int total_segs = seg_base[n];
  // Segment of gate i on wire w = number of cuts on w strictly before i.
  auto seg_of = [&](int w, int gate) {
    const auto& pos = wire_cuts[w];
    int s = static_cast<int>(std::lower_bound(pos.begin(), pos.end(), gate) - pos.begin());
    return seg_base[w] + s;
  };

  Dsu dsu(total_segs);
  for (int i = 0; i < circuit.gate_count(); ++i) {
    const Gate& g = circuit.gates[i];
    if (g.is_two_qubit()) {
      dsu.join(seg_of(g.qubits[0], i), seg_of(g.qubits[1], i));
    }
  }

  for (size_t i = 0; i < part.cuts.size(); ++i) {
    const CutPoint& c = part.cuts[i];
    int local = static_cast<int>(std::lower_bound(wire_cuts[c.wire].begin(),
                                                  wire_cuts[c.wire].end(), c.position) -
                                 wire_cuts[c.wire].begin());
    int up = seg_base[c.wire] + local;
    int down = up + 1;
    if (dsu.find(up) == dsu.find(down)) {
      throw Error(ErrorCode::InfeasibleCut, "cut at wire " + std::to_string(c.wire) +
                                                " after gate " + std::to_string(c.position) +
                                                " does not separate the circuit");
    }
  }

  // Fragments in order of first segment appearance; segments in (wire, index)
  // order become the fragment-local wires.
  std::vector<int> frag_of_root(total_segs, -1);
  std::vector<int> seg_frag(total_segs), seg_local(total_segs);
  for (int s = 0; s < total_segs; ++s) {
    int root = dsu.find(s);
    if (frag_of_root[root] < 0) {
      frag_of_root[root] = static_cast<int>(part.fragments.size());
      part.fragments.emplace_back();
    }
    Fragment& f = part.fragments[frag_of_root[root]];
    seg_frag[s] = frag_of_root[root];
    seg_local[s] = static_cast<int>(f.host_map.size());
    int w = static_cast<int>(std::upper_bound(seg_base.begin(), seg_base.end(), s) -
                             seg_base.begin()) -
            1;
    f.host_map.push_back(w);
  }
  for (Fragment& f : part.fragments) {
    f.circuit = Circuit(static_cast<int>(f.host_map.size()));
  }

  for (int i = 0; i < circuit.gate_count(); ++i) {
    const Gate& g = circuit.gates[i];
    std::vector<int> local;
    int frag = seg_frag[seg_of(g.qubits[0], i)];
    for (int q : g.qubits) {
      int s = seg_of(q, i);
      if (seg_frag[s] != frag) {
        throw Error(ErrorCode::Invalid, "internal: gate straddles fragments");
      }
      local.push_back(seg_local[s]);
    }
    part.fragments[frag].circuit.add(g.kind, g.params, local);
  }

  for (size_t i = 0; i < part.cuts.size(); ++i) {
    const CutPoint& c = part.cuts[i];
    int local = static_cast<int>(std::lower_bound(wire_cuts[c.wire].begin(),
                                                  wire_cuts[c.wire].end(), c.position) -
                                 wire_cuts[c.wire].begin());
    int up = seg_base[c.wire] + local;
    int down = up + 1;
    part.upstream.push_back({seg_frag[up], seg_local[up]});
    part.downstream.push_back({seg_frag[down], seg_local[down]});
    part.fragments[seg_frag[up]].out_cuts.push_back(seg_local[up]);
    part.fragments[seg_frag[up]].out_cut_ids.push_back(static_cast<int>(i));
    part.fragments[seg_frag[down]].in_cuts.push_back(seg_local[down]);
    part.fragments[seg_frag[down]].in_cut_ids.push_back(static_cast<int>(i));
  }

  part.output_wires = circuit.measured;
  for (int w : part.output_wires) {
    int s = seg_base[w] + static_cast<int>(wire_cuts[w].size());
    part.outputs.push_back({seg_frag[s], seg_local[s]});
    part.fragments[seg_frag[s]].outputs.push_back(seg_local[s]);
  }
  for (Fragment& f : part.fragments) {
    std::vector<int> m = f.outputs;
    f.circuit.set_measured(std::move(m));
  }
  return part;
}

namespace {

int max_fragment_width_of(const Partition& part) {
  int w = 0;
  for (const Fragment& f : part.fragments) {
    w = std::max(w, f.circuit.n_qubits);
  }
  return w;
}

}  // namespace

// Cutting dead wire tails never helps, hence the later-gate requirement.
std::vector<CutPoint> cut_candidates(const Circuit& circuit) {
  const int n = circuit.n_qubits;
  std::vector<std::vector<int>> gates_on(n);
  for (int i = 0; i < circuit.gate_count(); ++i) {
    for (int q : circuit.gates[i].qubits) gates_on[q].push_back(i);
  }
  std::vector<CutPoint> out;
  for (int w = 0; w < n; ++w) {
    const auto& seq = gates_on[w];
    for (size_t j = 0; j + 1 < seq.size(); ++j) {
      bool here2q = circuit.gates[seq[j]].is_two_qubit();
      bool next2q = circuit.gates[seq[j + 1]].is_two_qubit();
      if (here2q || next2q) out.push_back({w, seq[j]});
    }
  }
  return out;
}

namespace {

int estimated_reduction_score(const Partition& part) {
  int score = 0;
  for (size_t c = 0; c < part.cuts.size(); ++c) {
    Basis b = select_biased_observable(part, static_cast<int>(c));
    const Fragment& up = part.fragments[part.upstream[c].fragment];
    const Fragment& down = part.fragments[part.downstream[c].fragment];
    for (int i = 0; i < 2; ++i) {
      StateLabel s = basis_state(b, i);
      score += estimate_reduction({up.circuit, {}, {}, {{part.upstream[c].wire, s}}}).two_qubit;
      score +=
          estimate_reduction({down.circuit, {}, {{part.downstream[c].wire, s}}, {}}).two_qubit;
    }
  }
  return score;
}

CutSpec find_cuts_exhaustive(const Circuit& circuit, const std::vector<CutPoint>& cands,
                             int cap, int max_cuts) {
  const int m = static_cast<int>(cands.size());
  for (int size = 1; size <= std::min(max_cuts, m); ++size) {
    bool found = false;
    CutSpec best;
    int best_score = -1;
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      CutSpec spec;
      for (int i : pick) spec.cuts.push_back(cands[i]);
      try {
        Partition part = partition(circuit, spec);
        if (max_fragment_width_of(part) <= cap) {
          int score = estimated_reduction_score(part);
          if (!found || score > best_score) {
            found = true;
            best = spec;
            best_score = score;
          }
        }
      } catch (const Error&) {
        // non-separating subset
      }
      int j = size - 1;
      while (j >= 0 && pick[j] == m - size + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int l = j + 1; l < size; ++l) pick[l] = pick[l - 1] + 1;
    }
    if (found) return best;
  }
  throw Error(ErrorCode::WidthCap, "no cut set meets the width cap within the budget");
}

// Sequential chunking over the two-qubit gates: accumulate wires into the
// current chunk; when the next gate would push it past the cap, sever every
// chunk wire that still has two-qubit work ahead.
CutSpec find_cuts_chunking(const Circuit& circuit, int cap, int max_cuts) {
  const int n = circuit.n_qubits;
  std::vector<std::vector<int>> twoq_on(n);
  for (int i = 0; i < circuit.gate_count(); ++i) {
    if (circuit.gates[i].is_two_qubit()) {
      for (int q : circuit.gates[i].qubits) twoq_on[q].push_back(i);
    }
  }
  auto has_twoq_at_or_after = [&](int w, int i) {
    return std::lower_bound(twoq_on[w].begin(), twoq_on[w].end(), i) != twoq_on[w].end();
  };

  CutSpec spec;
  std::set<int> chunk;
  std::vector<int> last_gate(n, -1);
  for (int i = 0; i < circuit.gate_count(); ++i) {
    const Gate& g = circuit.gates[i];
    if (g.is_two_qubit()) {
      int needed = 0;
      for (int q : g.qubits) needed += chunk.count(q) ? 0 : 1;
      if (static_cast<int>(chunk.size()) + needed > cap) {
        for (int w : chunk) {
          if (has_twoq_at_or_after(w, i)) spec.cuts.push_back({w, last_gate[w]});
        }
        chunk.clear();
      }
      for (int q : g.qubits) chunk.insert(q);
    }
    for (int q : g.qubits) last_gate[q] = i;
  }
  if (static_cast<int>(spec.cuts.size()) > max_cuts) {
    throw Error(ErrorCode::WidthCap, "chunking needs " + std::to_string(spec.cuts.size()) +
                                         " cuts, over the budget");
  }
  Partition part = partition(circuit, spec);
  if (max_fragment_width_of(part) > cap) {
    throw Error(ErrorCode::WidthCap, "chunking failed to respect the width cap");
  }
  return spec;
}

}  // namespace

CutSpec find_cuts(const Circuit& circuit, int max_fragment_width, int max_cuts) {
  circuit.validate();
  if (max_fragment_width < 2) {
    throw Error(ErrorCode::Config, "max fragment width must be at least 2");
  }
  if (circuit.n_qubits <= max_fragment_width) return {};
  std::vector<CutPoint> cands = cut_candidates(circuit);
  if (cands.size() <= 8) {
    return find_cuts_exhaustive(circuit, cands, max_fragment_width, max_cuts);
  }
  return find_cuts_chunking(circuit, max_fragment_width, max_cuts);
}

Basis term_basis(Basis biased, int term) {
  if (term <= 1) return biased;
  int found = 0;
  for (Basis b : kAllBases) {
    if (b == biased) continue;
    if (++found == term - 1) return b;
  }
  throw Error(ErrorCode::Invalid, "term index out of range");
}

std::vector<UpEntry> upstream_entries(Basis biased, int term, bool msdo) {
  auto psel = [&](int i, double w) {
    return UpEntry{{OutKind::Postselect, biased, basis_state(biased, i)}, w, w};
  };
  auto meas = [&](Basis b, double w0, double w1) {
    return UpEntry{{OutKind::Measure, b, basis_state(b, 0)}, w0, w1};
  };
  switch (term) {
    case 0:
      if (msdo) return {psel(0, 1.0), psel(1, 1.0)};
      return {meas(biased, 1.0, 1.0)};
    case 1:
      if (msdo) return {psel(0, 1.0), psel(1, -1.0)};
      return {meas(biased, 1.0, -1.0)};
    case 2:
    case 3:
      return {meas(term_basis(biased, term), 1.0, -1.0)};
    default:
      throw Error(ErrorCode::Invalid, "term index out of range");
  }
}

std::vector<DownEntry> downstream_entries(Basis biased, int term) {
  StateLabel b0 = basis_state(biased, 0);
  StateLabel b1 = basis_state(biased, 1);
  switch (term) {
    case 0:
      return {{b0, 1.0}, {b1, 1.0}};
    case 1:
      return {{b0, 1.0}, {b1, -1.0}};
    case 2:
    case 3:
      return {{basis_state(term_basis(biased, term), 0), 2.0}, {b0, -1.0}, {b1, -1.0}};
    default:
      throw Error(ErrorCode::Invalid, "term index out of range");
  }
}

namespace {

std::vector<OutSetting> out_settings_for_cut(Basis biased, bool msdo) {
  std::vector<OutSetting> out;
  if (msdo) {
    out.push_back({OutKind::Postselect, biased, basis_state(biased, 0)});
    out.push_back({OutKind::Postselect, biased, basis_state(biased, 1)});
  } else {
    out.push_back({OutKind::Measure, biased, basis_state(biased, 0)});
  }
  for (int t = 2; t <= 3; ++t) {
    Basis b = term_basis(biased, t);
    out.push_back({OutKind::Measure, b, basis_state(b, 0)});
  }
  return out;
}

std::vector<StateLabel> init_labels_for_cut(Basis biased) {
  return {basis_state(biased, 0), basis_state(biased, 1),
          basis_state(term_basis(biased, 2), 0), basis_state(term_basis(biased, 3), 0)};
}

void append_rotation(Circuit& c, Basis basis, int wire) {
  if (basis == Basis::X) {
    c.add(GateKind::H, {wire});
  } else if (basis == Basis::Y) {
    c.add(GateKind::Sdg, {wire});
    c.add(GateKind::H, {wire});
  }
}

}  // namespace

WirecutPlan enumerate_variants(const Partition& part, const std::vector<Basis>& biased,
                               bool msdo, bool sdo) {
  if (biased.size() != part.cuts.size()) {
    throw Error(ErrorCode::Invalid, "one biased observable required per cut");
  }
  WirecutPlan plan;
  plan.part = part;
  plan.biased = biased;
  plan.msdo = msdo;
  plan.sdo = sdo;

  for (size_t fi = 0; fi < part.fragments.size(); ++fi) {
    const Fragment& f = part.fragments[fi];
    std::vector<std::vector<OutSetting>> out_choices;
    for (int id : f.out_cut_ids) out_choices.push_back(out_settings_for_cut(biased[id], msdo));
    std::vector<std::vector<StateLabel>> in_choices;
    for (int id : f.in_cut_ids) in_choices.push_back(init_labels_for_cut(biased[id]));

    std::vector<size_t> idx(out_choices.size() + in_choices.size(), 0);
    while (true) {
      SubcircuitVariant v;
      v.key.fragment = static_cast<int>(fi);
      for (size_t j = 0; j < out_choices.size(); ++j) {
        v.key.outs.push_back(out_choices[j][idx[j]]);
      }
      for (size_t j = 0; j < in_choices.size(); ++j) {
        v.key.inits.push_back(in_choices[j][idx[out_choices.size() + j]]);
      }

      v.prepared.circuit = f.circuit;
      for (size_t j = 0; j < v.key.outs.size(); ++j) {
        const OutSetting& s = v.key.outs[j];
        if (s.kind == OutKind::Measure) {
          append_rotation(v.prepared.circuit, s.basis, f.out_cuts[j]);
        } else {
          v.prepared.end_projectors[f.out_cuts[j]] = s.label;
        }
      }
      for (size_t j = 0; j < v.key.inits.size(); ++j) {
        v.prepared.init_labels[f.in_cuts[j]] = v.key.inits[j];
      }
      v.optimized = sdo ? sdo_optimize(v.prepared).circuit : v.prepared.circuit;
      plan.variants.push_back(std::move(v));

      size_t j = 0;
      for (; j < idx.size(); ++j) {
        size_t width = j < out_choices.size() ? out_choices[j].size()
                                              : in_choices[j - out_choices.size()].size();
        if (++idx[j] < width) break;
        idx[j] = 0;
      }
      if (j == idx.size()) break;
      if (idx.empty()) break;
    }
    if (out_choices.empty() && in_choices.empty()) {
      // the odometer above emits exactly one variant and then stops; nothing to do
    }
  }
  std::sort(plan.variants.begin(), plan.variants.end(),
            [](const SubcircuitVariant& a, const SubcircuitVariant& b) { return a.key < b.key; });
  return plan;
}

Basis select_biased_observable(const Partition& part, int cut) {
  if (cut < 0 || cut >= static_cast<int>(part.cuts.size())) {
    throw Error(ErrorCode::Invalid, "cut index out of range");
  }
  const Fragment& up = part.fragments[part.upstream[cut].fragment];
  const Fragment& down = part.fragments[part.downstream[cut].fragment];
  Basis best = Basis::Z;
  int best_score = -1;
  for (Basis b : kAllBases) {
    int score = 0;
    for (int i = 0; i < 2; ++i) {
      StateLabel s = basis_state(b, i);
      score += estimate_reduction({up.circuit, {}, {}, {{part.upstream[cut].wire, s}}}).two_qubit;
      score += estimate_reduction({down.circuit, {}, {{part.downstream[cut].wire, s}}, {}})
                   .two_qubit;
    }
    if (score > best_score) {
      best = b;
      best_score = score;
    }
  }
  return best;
}

std::vector<Basis> select_biased_observables(const Partition& part) {
  std::vector<Basis> out;
  for (size_t c = 0; c < part.cuts.size(); ++c) {
    out.push_back(select_biased_observable(part, static_cast<int>(c)));
  }
  return out;
}

Distribution run_variant(const SubcircuitVariant& variant, const Fragment& fragment,
                         const NoiseModel& noise) {
  std::vector<int> wires = fragment.outputs;
  for (size_t j = 0; j < variant.key.outs.size(); ++j) {
    if (variant.key.outs[j].kind == OutKind::Measure) {
      wires.push_back(fragment.out_cuts[j]);
    }
  }

  if (noise.is_zero()) {
    Statevector psi = simulate_state(variant.optimized, variant.prepared.init_labels);
    for (const auto& [wire, label] : variant.prepared.end_projectors) {
      apply_wire_op(psi, wire, projector(label));  // unnormalized: folds the weight
    }
    return output_distribution(psi, wires);
  }

  DensityMatrix rho =
      simulate_density(variant.optimized, variant.prepared.init_labels, noise);
  for (const auto& [wire, label] : variant.prepared.end_projectors) {
    // Postselection on a noisy record: with probability p_meas the retained
    // record belongs to the opposite outcome.
    DensityMatrix hit = rho;
    apply_wire_op(hit, wire, projector(label));
    if (noise.p_meas > 0.0) {
      DensityMatrix miss = rho;
      apply_wire_op(miss, wire, projector(flip(label)));
      rho.mat = (1.0 - noise.p_meas) * hit.mat + noise.p_meas * miss.mat;
    } else {
      rho.mat = hit.mat;
    }
  }
  return output_distribution(rho, wires, noise.p_meas);
}

std::vector<Distribution> run_all_variants(const WirecutPlan& plan, const NoiseModel& noise) {
  std::vector<Distribution> out;
  out.reserve(plan.variants.size());
  for (const SubcircuitVariant& v : plan.variants) {
    out.push_back(run_variant(v, plan.part.fragments[v.key.fragment], noise));
  }
  return out;
}

Distribution reconstruct(const std::vector<Distribution>& results, const WirecutPlan& plan) {
  if (results.size() != plan.variants.size()) {
    throw Error(ErrorCode::Invalid, "missing variant result");
  }
  std::map<VariantKey, size_t> index;
  for (size_t i = 0; i < plan.variants.size(); ++i) index[plan.variants[i].key] = i;
  auto lookup = [&](const VariantKey& key) {
    auto it = index.find(key);
    if (it == index.end()) throw Error(ErrorCode::Invalid, "missing variant result");
    return it->second;
  };

  const int k = static_cast<int>(plan.part.cuts.size());
  const int n_frags = static_cast<int>(plan.part.fragments.size());

  // Per fragment: signed marginal over its output bits for every local term
  // tuple (digits over the fragment's cuts, out-cuts first then in-cuts).
  std::vector<std::vector<RealVector>> tables(n_frags);
  std::vector<std::vector<int>> local_ids(n_frags);
  for (int fi = 0; fi < n_frags; ++fi) {
    const Fragment& f = plan.part.fragments[fi];
    local_ids[fi] = f.out_cut_ids;
    local_ids[fi].insert(local_ids[fi].end(), f.in_cut_ids.begin(), f.in_cut_ids.end());
    const int kf = static_cast<int>(local_ids[fi].size());
    const int n_out = static_cast<int>(f.outputs.size());
    const size_t n_tuples = size_t{1} << (2 * kf);
    tables[fi].assign(n_tuples, RealVector::Zero(int64_t{1} << n_out));

    const int n_outs = static_cast<int>(f.out_cut_ids.size());
    for (size_t tau = 0; tau < n_tuples; ++tau) {
      std::vector<std::vector<UpEntry>> up;
      std::vector<std::vector<DownEntry>> down;
      for (int j = 0; j < kf; ++j) {
        int term = static_cast<int>((tau >> (2 * j)) & 3);
        Basis b = plan.biased[local_ids[fi][j]];
        if (j < n_outs) {
          up.push_back(upstream_entries(b, term, plan.msdo));
        } else {
          down.push_back(downstream_entries(b, term));
        }
      }
      std::vector<size_t> idx(kf, 0);
      while (true) {
        VariantKey key;
        key.fragment = fi;
        double scalar = 1.0;
        std::vector<std::pair<double, double>> meas_weights;  // per Measure out
        for (int j = 0; j < n_outs; ++j) {
          const UpEntry& e = up[j][idx[j]];
          key.outs.push_back(e.setting);
          if (e.setting.kind == OutKind::Postselect) {
            scalar *= e.w0;
          } else {
            meas_weights.push_back({e.w0, e.w1});
          }
        }
        for (int j = n_outs; j < kf; ++j) {
          const DownEntry& e = down[j - n_outs][idx[j]];
          key.inits.push_back(e.label);
          scalar *= e.coeff;
        }

        const Distribution& d = results[lookup(key)];
        RealVector& m = tables[fi][tau];
        const int64_t out_size = m.size();
        for (int64_t u = 0; u < d.mass.size(); ++u) {
          double w = scalar;
          for (size_t b = 0; b < meas_weights.size(); ++b) {
            w *= ((u >> (n_out + b)) & 1) ? meas_weights[b].second : meas_weights[b].first;
          }
          m[u & (out_size - 1)] += w * d.mass[u];
        }

        int j = 0;
        for (; j < kf; ++j) {
          size_t width = j < n_outs ? up[j].size() : down[j - n_outs].size();
          if (++idx[j] < width) break;
          idx[j] = 0;
        }
        if (j == kf) break;
      }
    }
  }

  // Bit positions of each fragment's outputs in the global key.
  std::vector<std::vector<int>> gbits(n_frags);
  for (size_t g = 0; g < plan.part.outputs.size(); ++g) {
    gbits[plan.part.outputs[g].fragment].push_back(static_cast<int>(g));
  }

  const int n_out_global = static_cast<int>(plan.part.output_wires.size());
  Distribution dist(n_out_global);
  const double cut_norm = std::pow(0.5, k);
  const size_t n_tuples = size_t{1} << (2 * k);
  for (size_t tau = 0; tau < n_tuples; ++tau) {
    std::vector<size_t> local_tau(n_frags, 0);
    for (int fi = 0; fi < n_frags; ++fi) {
      for (size_t j = 0; j < local_ids[fi].size(); ++j) {
        size_t digit = (tau >> (2 * local_ids[fi][j])) & 3;
        local_tau[fi] |= digit << (2 * j);
      }
    }
    for (int64_t x = 0; x < dist.mass.size(); ++x) {
      double p = cut_norm;
      for (int fi = 0; fi < n_frags; ++fi) {
        int64_t xf = 0;
        for (size_t j = 0; j < gbits[fi].size(); ++j) {
          if ((x >> gbits[fi][j]) & 1) xf |= int64_t{1} << j;
        }
        p *= tables[fi][local_tau[fi]][xf];
      }
      dist.mass[x] += p;
    }
  }
  return dist;
}

std::string plan_to_json(const WirecutPlan& plan) {
  nlohmann::json j;
  j["cuts"] = nlohmann::json::parse(cutspec_to_json({plan.part.cuts})).at("cuts");
  j["msdo"] = plan.msdo;
  j["sdo"] = plan.sdo;
  j["per_cut_scale"] = {{"num", 1}, {"den", 2}};
  j["cut_terms"] = nlohmann::json::array();
  for (size_t c = 0; c < plan.part.cuts.size(); ++c) {
    nlohmann::json cut;
    cut["biased"] = to_string(plan.biased[c]);
    cut["terms"] = nlohmann::json::array();
    for (int t = 0; t < 4; ++t) {
      nlohmann::json term;
      term["name"] = t == 0 ? "I" : to_string(basis_pauli(term_basis(plan.biased[c], t)));
      term["upstream"] = nlohmann::json::array();
      for (const UpEntry& e : upstream_entries(plan.biased[c], t, plan.msdo)) {
        nlohmann::json u;
        u["kind"] = e.setting.kind == OutKind::Postselect ? "postselect" : "measure";
        u["basis"] = to_string(e.setting.basis);
        if (e.setting.kind == OutKind::Postselect) {
          u["label"] = to_string(e.setting.label);
          u["weight"] = {{"num", static_cast<int>(e.w0)}, {"den", 1}};
        } else {
          u["weight0"] = {{"num", static_cast<int>(e.w0)}, {"den", 1}};
          u["weight1"] = {{"num", static_cast<int>(e.w1)}, {"den", 1}};
        }
        term["upstream"].push_back(u);
      }
      term["downstream"] = nlohmann::json::array();
      for (const DownEntry& e : downstream_entries(plan.biased[c], t)) {
        term["downstream"].push_back(
            {{"label", to_string(e.label)}, {"coeff", {{"num", static_cast<int>(e.coeff)}, {"den", 1}}}});
      }
      cut["terms"].push_back(term);
    }
    j["cut_terms"].push_back(cut);
  }
  j["variant_count"] = plan.variants.size();
  return j.dump();
}

}  // namespace qcut
