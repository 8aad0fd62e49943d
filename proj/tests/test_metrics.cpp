#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qcut/generators.hpp"
#include "qcut/metrics.hpp"

using namespace qcut;

namespace {

Circuit worked_example() {
  Circuit c(3);
  c.add(GateKind::H, {0}).add(GateKind::H, {1}).add(GateKind::H, {2});
  c.add(GateKind::Rzz, {0.8}, {0, 1});
  c.add(GateKind::Rzz, {0.8}, {1, 2});
  c.add(GateKind::Rx, {0.4}, {0}).add(GateKind::Rx, {0.4}, {1}).add(GateKind::Rx, {0.4}, {2});
  c.measure_all();
  return c;
}

WirecutPlan wirecut_plan(const Circuit& c, int max_width, bool sdo) {
  Partition part = partition(c, find_cuts(c, max_width, 8));
  std::vector<Basis> biased = sdo ? select_biased_observables(part)
                                  : std::vector<Basis>(part.cuts.size(), Basis::Z);
  return enumerate_variants(part, biased, sdo, sdo);
}

}  // namespace

TEST_CASE("worked example: cut-with-SDO AGT is exactly 1.0 against 2.0 uncut") {
  Circuit c = worked_example();
  WirecutPlan plan = wirecut_plan(c, 2, true);
  AgtReport report = agt(plan, c);
  CHECK(report.total == 1.0);
  CHECK(report.uncut_total == 2.0);
  REQUIRE(report.per_term.size() == 4);
  std::vector<double> sorted = report.per_term;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<double>{0.0, 0.0, 2.0, 2.0});
  CHECK(subcircuit_count(plan) == 8);
}

TEST_CASE("per-term contributions average to the total") {
  Circuit c = worked_example();
  for (bool sdo : {false, true}) {
    WirecutPlan plan = wirecut_plan(c, 2, sdo);
    AgtReport report = agt(plan, c);
    double mean = 0.0;
    for (double t : report.per_term) mean += t;
    mean /= static_cast<double>(report.per_term.size());
    CHECK(report.total == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("uncut plan reduces to the plain filtered count") {
  Graph g = random_graph(4, 0.6, 2);
  Circuit c = qaoa_circuit(g, 1, {0.8}, {0.4});
  Partition part = partition(c, CutSpec{});
  WirecutPlan plan = enumerate_variants(part, {}, true, false);
  CHECK(subcircuit_count(plan) == 1);
  AgtReport report = agt(plan, c);
  CHECK(report.total == static_cast<double>(c.two_qubit_count()));
  CHECK(report.uncut_total == report.total);
  // no gates passing the filter -> 0
  Circuit bare(2);
  bare.add(GateKind::H, {0}).add(GateKind::H, {1});
  bare.measure_all();
  Partition bp = partition(bare, CutSpec{});
  WirecutPlan bplan = enumerate_variants(bp, {}, true, false);
  CHECK(agt(bplan, bare).total == 0.0);
  CHECK(agt(bplan, bare, /*two_qubit_only=*/false).total == 2.0);
}

TEST_CASE("sdo never increases the AGT of a cut plan") {
  for (unsigned seed : {1u, 2u, 3u, 4u}) {
    Graph g = random_graph(6, 0.4, seed);
    Circuit c = qaoa_circuit(g, 1, {0.8}, {0.4});
    if (c.two_qubit_count() == 0) continue;
    WirecutPlan plain = wirecut_plan(c, 3, false);
    WirecutPlan opt = wirecut_plan(c, 3, true);
    double a_plain = agt(plain, c).total;
    double a_opt = agt(opt, c).total;
    CHECK(a_opt <= a_plain + 1e-12);
    // with SDO the cut plan beats the uncut count on this suite
    CHECK(a_opt <= static_cast<double>(c.two_qubit_count()) + 1e-12);
  }
}

TEST_CASE("nscc AGT trends down as the budget grows") {
  Graph g = random_graph(6, 0.4, 11);
  Circuit c = qaoa_circuit(g, 2, {0.8, 0.5}, {0.4, 0.3});
  double uncut = static_cast<double>(c.two_qubit_count());
  NsccPlan one = nscc_variants(c, nscc_find_cuts(c, 1), true);
  NsccPlan two = nscc_variants(c, nscc_find_cuts(c, 2), true);
  double a1 = agt(one, c).total;
  double a2 = agt(two, c).total;
  CHECK(a1 < uncut);
  CHECK(a2 < a1);
  CHECK(subcircuit_count(one) == 6);
  CHECK(subcircuit_count(two) == 36);
}

TEST_CASE("nscc AGT with no cuts is the plain count") {
  Circuit c = worked_example();
  NsccPlan plan = nscc_variants(c, CutSpec{}, true);
  CHECK(subcircuit_count(plan) == 1);
  // with no cut knowledge the passes cannot fire on |+>-free inputs
  CHECK(agt(plan, c).total <= 2.0);
  NsccPlan raw = nscc_variants(c, CutSpec{}, false);
  CHECK(agt(raw, c).total == 2.0);
}

TEST_CASE("scaling orders uncut / nscc / cut+SDO as in the qualitative picture") {
  Graph g = random_graph(10, 0.3, 1);
  Circuit c = qaoa_circuit(g, 1, {0.8}, {0.4});
  WirecutPlan cut = wirecut_plan(c, 5, true);
  NsccPlan nscc = nscc_variants(c, nscc_find_cuts(c, 2), true);
  double a_uncut = static_cast<double>(c.two_qubit_count());
  double a_cut = agt(cut, c).total;
  double a_nscc = agt(nscc, c).total;
  CHECK(a_cut < a_nscc);
  CHECK(a_nscc < a_uncut);
  CHECK(subcircuit_count(cut) > subcircuit_count(nscc));
  CHECK(subcircuit_count(nscc) > 1);
}
