#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcut/simulator.hpp"

using namespace qcut;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("bell state") {
  Circuit c(2);
  c.add(GateKind::H, {0}).add(GateKind::Cx, {0, 1});
  c.measure_all();
  Statevector s = simulate_state(c);
  const double s2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.amp[0] - s2) < 1e-14);
  CHECK(std::abs(s.amp[3] - s2) < 1e-14);
  CHECK(std::abs(s.amp[1]) < 1e-14);
  CHECK(std::abs(s.amp[2]) < 1e-14);
  CHECK(expectation(s, PauliOp::Z, 0) == doctest::Approx(0.0));
}

TEST_CASE("initial labels and gate placement respect little-endian wires") {
  Circuit c(3);
  c.add(GateKind::X, {2});
  Statevector s = simulate_state(c, {{0, StateLabel::One}});
  // wires 0 and 2 set -> index 1 + 4
  CHECK(std::abs(s.amp[5] - 1.0) < 1e-14);

  Circuit cx(2);
  cx.add(GateKind::Cx, {1, 0});  // control on wire 1
  Statevector t = simulate_state(cx, {{1, StateLabel::One}});
  CHECK(std::abs(t.amp[3] - 1.0) < 1e-14);  // target flipped
}

TEST_CASE("rzz applies the diagonal phases") {
  const double theta = 0.9;
  Circuit c(2);
  c.add(GateKind::Rzz, {theta}, {0, 1});
  for (int idx = 0; idx < 4; ++idx) {
    InitLabels init;
    if (idx & 1) init[0] = StateLabel::One;
    if (idx & 2) init[1] = StateLabel::One;
    Statevector s = simulate_state(c, init);
    int parity = ((idx & 1) ^ ((idx >> 1) & 1)) ? -1 : 1;
    Complex expected = std::exp(-kI * (theta / 2.0) * static_cast<double>(parity));
    CHECK(std::abs(s.amp[idx] - expected) < 1e-13);
  }
}

TEST_CASE("mid-circuit measure-and-prepare branches") {
  Circuit c(2);
  c.add(GateKind::H, {0}).add(GateKind::Cx, {0, 1});
  c.measure_all();
  // project wire 0 after the H: the two Z outcomes are equally likely
  double total = 0.0;
  for (StateLabel out : {StateLabel::Zero, StateLabel::One}) {
    std::vector<CutOp> ops = {{0, 0, out, StateLabel::Zero}};
    auto branches = measure_branches(c, ops);
    REQUIRE(branches.size() == 1);
    CHECK(branches[0].weight == doctest::Approx(0.5));
    total += branches[0].weight;
    // wire 0 was reset to |0>, so the CX leaves wire 1 untouched
    CHECK(std::abs(branches[0].state.amp[0] - 1.0) < 1e-13);
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("vanishing branch has zero weight") {
  Circuit c(1);
  c.add(GateKind::H, {0});
  std::vector<CutOp> ops = {{0, 0, StateLabel::Minus, StateLabel::Zero}};
  auto branches = measure_branches(c, ops);
  CHECK(branches[0].weight == doctest::Approx(0.0));
}

TEST_CASE("depolarizing channel oracle") {
  Circuit c(1);
  c.add(GateKind::H, {0});
  const double p = 0.2;
  NoiseModel noise;
  noise.p1 = p;
  DensityMatrix rho = simulate_density(c, {}, noise);
  Matrix2 plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  Matrix2 expected = (1 - p) * plus + p * 0.5 * Matrix2::Identity();
  CHECK((rho.mat - expected).norm() < 1e-14);
}

TEST_CASE("two-qubit depolarizing preserves the trace and mixes") {
  Circuit c(2);
  c.add(GateKind::H, {0}).add(GateKind::Cx, {0, 1});
  NoiseModel noise;
  noise.p2 = 0.3;
  DensityMatrix rho = simulate_density(c, {}, noise);
  CHECK(rho.trace() == doctest::Approx(1.0));
  // Bell projector fidelity drops by 3p/4
  Statevector bell = simulate_state(c);
  Complex overlap = (bell.amp.adjoint() * rho.mat * bell.amp)(0);
  CHECK(overlap.real() == doctest::Approx(1.0 - 0.3 * 0.75));
}

TEST_CASE("readout error on the bell distribution") {
  Circuit c(2);
  c.add(GateKind::H, {0}).add(GateKind::Cx, {0, 1});
  c.measure_all();
  NoiseModel noise;
  noise.p_meas = 0.1;
  DensityMatrix rho = simulate_density(c, {}, noise);
  Distribution d = output_distribution(rho, c.measured, noise.p_meas);
  CHECK(d.mass[0] == doctest::Approx(0.41));
  CHECK(d.mass[1] == doctest::Approx(0.09));
  CHECK(d.mass[2] == doctest::Approx(0.09));
  CHECK(d.mass[3] == doctest::Approx(0.41));
}

TEST_CASE("density path agrees with the statevector path at zero noise") {
  Circuit c(3);
  c.add(GateKind::H, {0})
      .add(GateKind::Cx, {0, 1})
      .add(GateKind::Rzz, {0.7}, {1, 2})
      .add(GateKind::T, {2})
      .add(GateKind::Swap, {0, 2});
  c.measure_all();
  Distribution ds = output_distribution(simulate_state(c), c.measured);
  Distribution dd = output_distribution(simulate_density(c), c.measured);
  CHECK(l1_distance(ds, dd) < 1e-12);

  std::vector<CutOp> ops = {{2, 1, StateLabel::Plus, StateLabel::Zero}};
  auto sv = measure_branches(c, ops)[0];
  auto db = density_branch(c, ops);
  CHECK(sv.weight == doctest::Approx(db.weight));
  Distribution m1 = output_distribution(sv.state, c.measured);
  Distribution m2 = output_distribution(db.rho, c.measured);
  m1.mass *= sv.weight;
  m2.mass *= db.weight;
  CHECK(l1_distance(m1, m2) < 1e-12);
}

TEST_CASE("width caps raise WidthCap") {
  Circuit c(kMaxStateQubits + 1);
  c.add(GateKind::H, {0});
  CHECK_THROWS_AS(simulate_state(c), Error);
  try {
    simulate_state(c);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WidthCap);
  }
}
