// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "qcut/experiment.hpp"
#include "qcut/generators.hpp"
#include "qcut/metrics.hpp"
#include "qcut/nscc.hpp"
#include "qcut/wirecut.hpp"

using namespace qcut;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s (%s)\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<GateKind> kOneQ = {GateKind::H,  GateKind::X,  GateKind::Y,
                                     GateKind::Z,  GateKind::S,  GateKind::Sdg,
                                     GateKind::T,  GateKind::Rx, GateKind::Ry,
                                     GateKind::Rz};
const std::vector<GateKind> kTwoQ = {GateKind::Rzz, GateKind::Cx, GateKind::Cz,
                                     GateKind::Swap};

void add_block(Circuit& c, int lo, int hi, int gates, std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::uniform_int_distribution<int> wire(lo, hi);
  for (int i = 0; i < gates; ++i) {
    if (hi > lo && rng() % 2) {
      GateKind k = kTwoQ[rng() % kTwoQ.size()];
      int a = wire(rng), b = wire(rng);
      while (b == a) b = wire(rng);
      std::vector<double> params(gate_param_count(k), angle(rng));
      c.add(k, params, {a, b});
    } else {
      GateKind k = kOneQ[rng() % kOneQ.size()];
      std::vector<double> params(gate_param_count(k), angle(rng));
      c.add(k, params, {wire(rng)});
    }
  }
}

Circuit random_circuit(int n, int gates, std::mt19937& rng) {
  Circuit c(n);
  add_block(c, 0, n - 1, gates, rng);
  c.measure_all();
  return c;
}

// Blocks share one boundary wire; cutting it between blocks separates them.
Circuit chained_circuit(int n, int n_cuts, int gates_per_block, std::mt19937& rng,
                        CutSpec* spec) {
  std::vector<int> bounds = {0};
  for (int i = 1; i <= n_cuts; ++i) bounds.push_back(i * (n - 1) / (n_cuts + 1));
  bounds.push_back(n - 1);
  Circuit c(n);
  spec->cuts.clear();
  for (int b = 0; b + 1 < static_cast<int>(bounds.size()); ++b) {
    add_block(c, bounds[b], bounds[b + 1], gates_per_block, rng);
    if (b + 2 < static_cast<int>(bounds.size())) {
      spec->cuts.push_back({bounds[b + 1], c.gate_count() - 1});
    }
  }
  c.measure_all();
  return c;
}

Distribution uncut_reference(const Circuit& c) {
  return output_distribution(simulate_state(c), c.measured);
}

struct IdentityResult {
  double max_plain = 0.0;
  double max_sdo = 0.0;
};

// Criteria 1 and the wirecut half of 3 share the same 25 circuits.
IdentityResult wirecut_identities() {
  IdentityResult out;
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + trial % 6;  // 3..8 qubits
    int n_cuts = n >= 5 ? 1 + trial % 2 : 1;
    CutSpec spec;
    Circuit c = chained_circuit(n, n_cuts, 5, rng, &spec);
    Distribution ref = uncut_reference(c);
    Partition part = partition(c, spec);
    for (Basis biased : kAllBases) {
      std::vector<Basis> bias(part.cuts.size(), biased);
      WirecutPlan plain = enumerate_variants(part, bias, true, false);
      double l1 = l1_distance(reconstruct(run_all_variants(plain), plain), ref);
      out.max_plain = std::max(out.max_plain, l1);
      WirecutPlan opt = enumerate_variants(part, bias, true, true);
      double l1s = l1_distance(reconstruct(run_all_variants(opt), opt), ref);
      out.max_sdo = std::max(out.max_sdo, l1s);
    }
  }
  return out;
}

IdentityResult nscc_identities() {
  IdentityResult out;
  std::mt19937 rng(1717);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + trial % 4;
    int gates = 5 + static_cast<int>(rng() % 8);
    Circuit c = random_circuit(n, gates, rng);
    int n_cuts = 1 + trial % 2;
    CutSpec spec;
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(spec.cuts.size()) < n_cuts) {
      CutPoint p{static_cast<int>(rng() % n), static_cast<int>(rng() % gates)};
      if (used.insert({p.wire, p.position}).second) spec.cuts.push_back(p);
    }
    Distribution ref = uncut_reference(c);
    NsccPlan plain = nscc_variants(c, spec, false);
    out.max_plain = std::max(
        out.max_plain, l1_distance(nscc_reconstruct(run_all_branches(plain), plain), ref));
    NsccPlan opt = nscc_variants(c, spec, true);
    out.max_sdo = std::max(
        out.max_sdo, l1_distance(nscc_reconstruct(run_all_branches(opt), opt), ref));
  }
  return out;
}

int variant_two_qubit_total(const WirecutPlan& plan) {
  int total = 0;
  for (const SubcircuitVariant& v : plan.variants) total += v.optimized.two_qubit_count();
  return total;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

int main() {
  // 1: wire-cut reconstruction identity over 25 seeded circuits x 3 biased bases
  auto t0 = std::chrono::steady_clock::now();
  IdentityResult wc = wirecut_identities();
  double t1 = seconds_since(t0);
  report(1, wc.max_plain <= 1e-9 && t1 < 60.0,
         fmt("max L1 %.2e, %.1f s", wc.max_plain, t1));

  // 2: nscc reconstruction identity over 25 circuits with arbitrary cuts
  t0 = std::chrono::steady_clock::now();
  IdentityResult ns = nscc_identities();
  double t2 = seconds_since(t0);
  report(2, ns.max_plain <= 1e-9 && t2 < 120.0,
         fmt("max L1 %.2e, %.1f s", ns.max_plain, t2));

  // 3: sdo soundness on the same circuits + strict reduction on the qaoa suite
  bool strict = true;
  for (unsigned seed : {1u, 2u, 3u}) {
    for (int n : {6, 8}) {
      Graph g = random_graph(n, 0.4, seed);
      Circuit c = qaoa_circuit(g, 1, {0.8}, {0.4});
      Partition part = partition(c, find_cuts(c, n - 2, 8));
      std::vector<Basis> bias = select_biased_observables(part);
      int before = variant_two_qubit_total(enumerate_variants(part, bias, true, false));
      int after = variant_two_qubit_total(enumerate_variants(part, bias, true, true));
      if (after >= before) strict = false;
    }
  }
  report(3, wc.max_sdo <= 1e-9 && ns.max_sdo <= 1e-9 && strict,
         fmt("max L1 %.2e / %.2e, strict qaoa reduction: ", wc.max_sdo, ns.max_sdo) +
             (strict ? "yes" : "no"));

  // 4: paper worked example
  {
    Circuit c(3);
    c.add(GateKind::H, {0}).add(GateKind::H, {1}).add(GateKind::H, {2});
    c.add(GateKind::Rzz, {0.8}, {0, 1});
    c.add(GateKind::Rzz, {0.8}, {1, 2});
    c.add(GateKind::Rx, {0.4}, {0}).add(GateKind::Rx, {0.4}, {1}).add(GateKind::Rx, {0.4},
                                                                      {2});
    c.measure_all();
    Partition part = partition(c, find_cuts(c, 2, 2));
    WirecutPlan plan = enumerate_variants(part, {Basis::Z}, true, true);
    AgtReport r = agt(plan, c);
    int z_downstream_empty = 0;
    for (const SubcircuitVariant& v : plan.variants) {
      if (v.key.inits.size() == 1 &&
          (v.key.inits[0] == StateLabel::Zero || v.key.inits[0] == StateLabel::One) &&
          v.optimized.two_qubit_count() == 0) {
        ++z_downstream_empty;
      }
    }
    bool pass = r.total == 1.0 && r.uncut_total == 2.0 && subcircuit_count(plan) == 8 &&
                z_downstream_empty == 2;
    report(4, pass,
           fmt("agt %.3f vs %.3f uncut, %.0f subcircuits", r.total, r.uncut_total,
               static_cast<double>(subcircuit_count(plan))));
  }

  // 5: exact counting, 4^k msdo upstream and 6^K nscc
  {
    bool pass = true;
    for (int k : {1, 2, 3}) {
      // connected upstream block on wires 0..k feeding k cuts, one per wire
      Circuit c(2 * k + 1);
      for (int w = 0; w <= k; ++w) c.add(GateKind::H, {w});
      for (int w = 0; w < k; ++w) c.add(GateKind::Cz, {w, w + 1});
      CutSpec spec;
      for (int w = 0; w < k; ++w) spec.cuts.push_back({w, c.gate_count() - 1});
      for (int w = 0; w < k; ++w) c.add(GateKind::Cx, {w, k + 1 + w});
      c.measure_all();
      Partition part = partition(c, spec);
      WirecutPlan plan =
          enumerate_variants(part, std::vector<Basis>(k, Basis::Z), true, false);
      // count the upstream fragment's executable settings
      std::set<std::vector<OutSetting>> ups;
      for (const SubcircuitVariant& v : plan.variants) {
        if (v.key.outs.size() == static_cast<size_t>(k)) ups.insert(v.key.outs);
      }
      if (static_cast<int>(ups.size()) != 1 << (2 * k)) pass = false;
    }
    Circuit q = qaoa_circuit(random_graph(4, 0.5, 3), 1, {0.8}, {0.4});
    if (nscc_variants(q, {{{0, 2}}}, false).variants.size() != 6) pass = false;
    if (nscc_variants(q, {{{0, 2}, {1, 3}}}, false).variants.size() != 36) pass = false;
    report(5, pass, "4^k upstream for k=1..3, 6^K nscc for K=1,2");
  }

  // 6: noise ordering, cut+SDO vs plain cut over 5 seeds
  t0 = std::chrono::steady_clock::now();
  {
    NoiseModel noise{0.001, 0.01, 0.01};
    double mean_plain = 0.0, mean_sdo = 0.0;
    int nonneg = 0;
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
      Graph g = random_graph(6, 0.3, seed);
      Circuit c = qaoa_circuit(g, 1, {0.8}, {0.4});
      Distribution ref = uncut_reference(c);
      Partition part = partition(c, find_cuts(c, 3, 8));
      std::vector<Basis> bias_z(part.cuts.size(), Basis::Z);
      WirecutPlan plain = enumerate_variants(part, bias_z, false, false);
      WirecutPlan opt =
          enumerate_variants(part, select_biased_observables(part), true, true);
      double f_plain = fidelity(reconstruct(run_all_variants(plain, noise), plain), ref);
      double f_sdo = fidelity(reconstruct(run_all_variants(opt, noise), opt), ref);
      mean_plain += f_plain / 5.0;
      mean_sdo += f_sdo / 5.0;
      if (f_sdo >= f_plain - 1e-12) ++nonneg;
    }
    double t6 = seconds_since(t0);
    report(6, mean_sdo >= mean_plain && nonneg >= 4 && t6 < 300.0,
           fmt("mean fid %.4f (sdo) vs %.4f (plain), %.0f/5 seeds non-negative",
               mean_sdo, mean_plain, static_cast<double>(nonneg)));
  }

  // 7: nscc AGT trend on qaoa-6 p=2
  {
    Graph g = random_graph(6, 0.3, 1);
    Circuit c = qaoa_circuit(g, 2, {0.8, 0.8}, {0.4, 0.4});
    double uncut = static_cast<double>(c.two_qubit_count());
    NsccPlan one = nscc_variants(c, nscc_find_cuts(c, 1), true);
    NsccPlan two = nscc_variants(c, nscc_find_cuts(c, 2), true);
    double a1 = agt(one, c).total;
    double a2 = agt(two, c).total;
    report(7, uncut > a1 && a1 > a2,
           fmt("agt %.2f (uncut) > %.2f (1 cut) > %.2f (2 cuts)", uncut, a1, a2));
  }

  // 8: Fig. 3 qualitative ordering for qaoa-10 at density 0.3, analytic only
  t0 = std::chrono::steady_clock::now();
  {
    BenchmarkSpec spec;
    spec.kind = "qaoa";
    spec.n = 10;
    spec.density = 0.3;
    auto rows = scaling_table({spec}, {Mode::Uncut, Mode::CutSdo, Mode::NsccSdo}, 5, 12,
                              2, 1);
    const ExperimentRecord& u = rows[0];
    const ExperimentRecord& cut = rows[1];
    const ExperimentRecord& nscc = rows[2];
    double t8 = seconds_since(t0);
    bool pass = u.subcircuits == 1.0 && u.agt > nscc.agt && nscc.agt > cut.agt &&
                cut.subcircuits > nscc.subcircuits && nscc.subcircuits > 1.0 &&
                t8 < 30.0;
    report(8, pass,
           fmt("agt %.2f/%.2f/%.2f", u.agt, nscc.agt, cut.agt) +
               fmt(", subcircuits %.0f/%.0f/%.0f", u.subcircuits, nscc.subcircuits,
                   cut.subcircuits));
  }

  // 9: commutation implies factorability, exhaustively over the template set
  {
    int counterexamples = 0;
    std::vector<Gate> gates;
    for (GateKind k : {GateKind::Cx, GateKind::Cz, GateKind::Swap}) {
      gates.push_back(make_gate(k, {}, {0, 1}));
    }
    for (double theta : {0.0, 0.3, 1.0, M_PI / 2, M_PI, 2.0 * M_PI, -1.7}) {
      gates.push_back(make_gate(GateKind::Rzz, {theta}, {0, 1}));
    }
    for (const Gate& g : gates) {
      for (StateLabel label : kAllLabels) {
        for (int pos = 0; pos < 2; ++pos) {
          if (commutes_with_state(g.unitary, label, pos) &&
              !try_factor_initial(g.unitary, label, pos)) {
            ++counterexamples;
          }
          if (commutes_with_projector(g.unitary, label, pos) &&
              !try_factor_measure(g.unitary, label, pos)) {
            ++counterexamples;
          }
        }
      }
    }
    report(9, counterexamples == 0,
           fmt("%.0f counterexamples over %.0f cases",
               static_cast<double>(counterexamples), gates.size() * 6.0 * 2.0 * 2.0));
  }

  return failures == 0 ? 0 : 1;
}
