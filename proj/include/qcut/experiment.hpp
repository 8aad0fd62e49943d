#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcut/circuit.hpp"
#include "qcut/simulator.hpp"

namespace qcut {

struct BenchmarkSpec {
  std::string kind = "qaoa";  // qaoa | qft | bv
  int n = 6;
  int layers = 1;             // qaoa only
  double density = 0.3;       // qaoa only
  std::string secret;         // bv only; empty = alternating 10... on n-1 bits
  double gamma = 0.8;
  double beta = 0.4;
};

/// Deterministic instance; the seed draws the QAOA graph (qft/bv ignore it).
Circuit build_benchmark(const BenchmarkSpec& spec, unsigned seed);
std::string benchmark_id(const BenchmarkSpec& spec);

enum class Mode { Uncut, Cut, CutSdo, NsccSdo };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

struct ExperimentConfig {
  BenchmarkSpec benchmark;
  Mode mode = Mode::CutSdo;
  int max_width = 5;
  int max_cuts = 8;   // nscc+SDO: the cut budget K
  NoiseModel noise;
  std::vector<unsigned> seeds = {1, 2, 3, 4, 5};
  int64_t shots = 0;  // 0 = exact variant probabilities
  std::string out;
};

/// Schema-validated; unknown or ill-typed fields are a Config error.
ExperimentConfig config_from_json(const std::string& text);

struct ExperimentRecord {
  std::string benchmark;
  int qubits = 0;
  Mode mode = Mode::Uncut;
  double agt = 0.0;          // mean over seeds (QAOA graphs vary with the seed)
  double agt_uncut = 0.0;
  double subcircuits = 0.0;  // mean over seeds
  double fidelity_mean = 0.0;
  double fidelity_stderr = 0.0;
  int seed_count = 0;        // 0 = analytic row (no simulation)
  double wall_seconds = 0.0;
};

/// Full pipeline per seed: cut -> optional SDO -> simulate under noise ->
/// reconstruct -> fidelity against the ideal uncut distribution.
ExperimentRecord run_experiment(const ExperimentConfig& config);

/// AGT + subcircuit count only; no simulation, so width caps don't apply.
ExperimentRecord analyze(const ExperimentConfig& config, unsigned seed);

/// One analytic row per (benchmark, mode); nscc_cuts is the NSCC budget.
std::vector<ExperimentRecord> scaling_table(const std::vector<BenchmarkSpec>& benchmarks,
                                            const std::vector<Mode>& modes, int max_width,
                                            int max_cuts, int nscc_cuts, unsigned seed);

/// wall_seconds is the only field exempt from byte-for-byte determinism.
std::string record_to_json(const ExperimentRecord& record);

/// benchmark,qubits,mode,agt,subcircuits,fidelity_mean,fidelity_stderr,seed_count
/// Analytic rows leave the fidelity columns empty.
std::string records_to_csv(const std::vector<ExperimentRecord>& records);

}  // namespace qcut
