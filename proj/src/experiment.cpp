#include "qcut/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcut/generators.hpp"
#include "qcut/metrics.hpp"
#include "qcut/nscc.hpp"
#include "qcut/wirecut.hpp"

namespace qcut {

Circuit build_benchmark(const BenchmarkSpec& spec, unsigned seed) {
  if (spec.kind == "qaoa") {
    if (spec.n < 2) throw Error(ErrorCode::Config, "qaoa needs n >= 2");
    if (spec.layers < 1) throw Error(ErrorCode::Config, "qaoa needs layers >= 1");
    if (spec.density < 0.0 || spec.density > 1.0) {
      throw Error(ErrorCode::Config, "density must be in [0, 1]");
    }
    Graph g = random_graph(spec.n, spec.density, seed);
    std::vector<double> gammas(spec.layers, spec.gamma);
    std::vector<double> betas(spec.layers, spec.beta);
    return qaoa_circuit(g, spec.layers, gammas, betas);
  }
  if (spec.kind == "qft") {
    if (spec.n < 1) throw Error(ErrorCode::Config, "qft needs n >= 1");
    return qft_circuit(spec.n);
  }
  if (spec.kind == "bv") {
    std::string secret = spec.secret;
    if (secret.empty()) {
      if (spec.n < 2) throw Error(ErrorCode::Config, "bv needs n >= 2");
      for (int i = 0; i + 1 < spec.n; ++i) secret += (i % 2 == 0 ? '1' : '0');
    }
    return bv_circuit(secret);
  }
  throw Error(ErrorCode::Config, "unknown benchmark kind: " + spec.kind);
}

std::string benchmark_id(const BenchmarkSpec& spec) {
  std::ostringstream os;
  if (spec.kind == "qaoa") {
    os << "qaoa-" << spec.n << "x" << spec.layers;
  } else if (spec.kind == "bv") {
    int n = spec.secret.empty() ? spec.n : static_cast<int>(spec.secret.size()) + 1;
    os << "bv-" << n;
  } else {
    os << spec.kind << "-" << spec.n;
  }
  return os.str();
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Uncut: return "uncut";
    case Mode::Cut: return "cut";
    case Mode::CutSdo: return "cut+SDO";
    case Mode::NsccSdo: return "nscc+SDO";
  }
  throw Error(ErrorCode::Invalid, "bad mode");
}

Mode mode_from_string(const std::string& s) {
  if (s == "uncut") return Mode::Uncut;
  if (s == "cut") return Mode::Cut;
  if (s == "cut+SDO") return Mode::CutSdo;
  if (s == "nscc+SDO") return Mode::NsccSdo;
  throw Error(ErrorCode::Config, "unknown mode: " + s);
}

namespace {

const nlohmann::json* get(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

BenchmarkSpec benchmark_from_json(const nlohmann::json& j) {
  BenchmarkSpec spec;
  if (!j.is_object()) throw Error(ErrorCode::Config, "benchmark must be an object");
  if (auto* v = get(j, "kind")) spec.kind = v->get<std::string>();
  if (auto* v = get(j, "n")) spec.n = v->get<int>();
  if (auto* v = get(j, "layers")) spec.layers = v->get<int>();
  if (auto* v = get(j, "density")) spec.density = v->get<double>();
  if (auto* v = get(j, "secret")) spec.secret = v->get<std::string>();
  if (auto* v = get(j, "gamma")) spec.gamma = v->get<double>();
  if (auto* v = get(j, "beta")) spec.beta = v->get<double>();
  return spec;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Config, std::string("bad config JSON: ") + e.what());
  }
  ExperimentConfig config;
  try {
    if (auto* v = get(j, "benchmark")) config.benchmark = benchmark_from_json(*v);
    if (auto* v = get(j, "mode")) config.mode = mode_from_string(v->get<std::string>());
    if (auto* v = get(j, "max_width")) config.max_width = v->get<int>();
    if (auto* v = get(j, "max_cuts")) config.max_cuts = v->get<int>();
    if (auto* v = get(j, "noise")) {
      if (auto* p = get(*v, "p1")) config.noise.p1 = p->get<double>();
      if (auto* p = get(*v, "p2")) config.noise.p2 = p->get<double>();
      if (auto* p = get(*v, "p_meas")) config.noise.p_meas = p->get<double>();
    }
    if (auto* v = get(j, "seeds")) config.seeds = v->get<std::vector<unsigned>>();
    if (auto* v = get(j, "shots")) config.shots = v->get<int64_t>();
    if (auto* v = get(j, "out")) config.out = v->get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Config, std::string("bad config field: ") + e.what());
  }
  if (config.max_width < 1) throw Error(ErrorCode::Config, "max_width must be >= 1");
  if (config.max_cuts < 0) throw Error(ErrorCode::Config, "max_cuts must be >= 0");
  if (config.shots < 0) throw Error(ErrorCode::Config, "shots must be >= 0");
  for (double p : {config.noise.p1, config.noise.p2, config.noise.p_meas}) {
    if (p < 0.0 || p > 1.0) throw Error(ErrorCode::Config, "noise rate must be in [0, 1]");
  }
  if (config.seeds.empty()) throw Error(ErrorCode::Config, "seeds must be non-empty");
  return config;
}

namespace {

struct SeedStats {
  double fid = 0.0;
  double agt = 0.0;
  double agt_uncut = 0.0;
  double subs = 1.0;
};

uint64_t mix(uint64_t a, uint64_t b) {
  uint64_t x = a * 0x9E3779B97F4A7C15ull + b + 0xD1B54A32D192ED03ull;
  x ^= x >> 32;
  x *= 0xFF51AFD7ED558CCDull;
  return x ^ (x >> 32);
}

// Multinomial estimate of d from `shots` draws; preserves the total mass
// (variant postselection weight) exactly.
Distribution sample_dist(const Distribution& d, int64_t shots, uint64_t key) {
  Distribution out(d.n_bits);
  const double w = d.total();
  if (w <= 0.0 || shots <= 0) return out;
  std::mt19937_64 rng(key);
  std::discrete_distribution<int64_t> pick(d.mass.data(), d.mass.data() + d.mass.size());
  const double unit = w / static_cast<double>(shots);
  for (int64_t s = 0; s < shots; ++s) out.mass[pick(rng)] += unit;
  return out;
}

SeedStats run_seed(const ExperimentConfig& config, unsigned seed) {
  const Circuit circuit = build_benchmark(config.benchmark, seed);
  const Distribution ideal =
      clipped(output_distribution(simulate_state(circuit), circuit.measured));
  SeedStats stats;
  stats.agt_uncut = circuit.two_qubit_count();

  switch (config.mode) {
    case Mode::Uncut: {
      Distribution dist = ideal;
      if (!config.noise.is_zero()) {
        DensityMatrix rho = simulate_density(circuit, {}, config.noise);
        dist = output_distribution(rho, circuit.measured, config.noise.p_meas);
      }
      if (config.shots > 0) dist = sample_dist(dist, config.shots, mix(seed, 0));
      stats.fid = fidelity(dist, ideal);
      stats.agt = stats.agt_uncut;
      stats.subs = 1.0;
      break;
    }
    case Mode::Cut:
    case Mode::CutSdo: {
      const bool sdo = config.mode == Mode::CutSdo;
      CutSpec spec = find_cuts(circuit, config.max_width, config.max_cuts);
      Partition part = partition(circuit, spec);
      std::vector<Basis> biased = sdo ? select_biased_observables(part)
                                      : std::vector<Basis>(part.cuts.size(), Basis::Z);
      WirecutPlan plan = enumerate_variants(part, biased, sdo, sdo);
      std::vector<Distribution> results = run_all_variants(plan, config.noise);
      if (config.shots > 0) {
        for (size_t i = 0; i < results.size(); ++i) {
          results[i] = sample_dist(results[i], config.shots, mix(seed, i + 1));
        }
      }
      stats.fid = fidelity(reconstruct(results, plan), ideal);
      AgtReport report = agt(plan, circuit);
      stats.agt = report.total;
      stats.subs = static_cast<double>(subcircuit_count(plan));
      break;
    }
    case Mode::NsccSdo: {
      CutSpec spec = config.max_cuts > 0 ? nscc_find_cuts(circuit, config.max_cuts)
                                         : CutSpec{};
      NsccPlan plan = nscc_variants(circuit, spec, true);
      std::vector<std::vector<Distribution>> results = run_all_branches(plan, config.noise);
      if (config.shots > 0) {
        for (size_t v = 0; v < results.size(); ++v) {
          for (size_t b = 0; b < results[v].size(); ++b) {
            if (plan.variants[v].branches[b].weight == 0.0) continue;
            results[v][b] =
                sample_dist(results[v][b], config.shots, mix(seed, (v << 8) + b + 1));
          }
        }
      }
      stats.fid = fidelity(nscc_reconstruct(results, plan), ideal);
      AgtReport report = agt(plan, circuit);
      stats.agt = report.total;
      stats.subs = static_cast<double>(subcircuit_count(plan));
      break;
    }
  }
  return stats;
}

}  // namespace

ExperimentRecord run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (config.seeds.empty()) throw Error(ErrorCode::Config, "seeds must be non-empty");

  ExperimentRecord record;
  record.benchmark = benchmark_id(config.benchmark);
  record.qubits = build_benchmark(config.benchmark, config.seeds[0]).n_qubits;
  record.mode = config.mode;
  record.seed_count = static_cast<int>(config.seeds.size());

  std::vector<double> fids;
  for (unsigned seed : config.seeds) {
    SeedStats stats = run_seed(config, seed);
    fids.push_back(stats.fid);
    record.agt += stats.agt;
    record.agt_uncut += stats.agt_uncut;
    record.subcircuits += stats.subs;
  }
  const double m = static_cast<double>(fids.size());
  record.agt /= m;
  record.agt_uncut /= m;
  record.subcircuits /= m;
  for (double f : fids) record.fidelity_mean += f;
  record.fidelity_mean /= m;
  if (fids.size() >= 2) {
    double var = 0.0;
    for (double f : fids) var += (f - record.fidelity_mean) * (f - record.fidelity_mean);
    record.fidelity_stderr = std::sqrt(var / (m - 1.0)) / std::sqrt(m);
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

ExperimentRecord analyze(const ExperimentConfig& config, unsigned seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const Circuit circuit = build_benchmark(config.benchmark, seed);
  ExperimentRecord record;
  record.benchmark = benchmark_id(config.benchmark);
  record.qubits = circuit.n_qubits;
  record.mode = config.mode;
  record.agt_uncut = circuit.two_qubit_count();
  record.subcircuits = 1.0;

  switch (config.mode) {
    case Mode::Uncut:
      record.agt = record.agt_uncut;
      break;
    case Mode::Cut:
    case Mode::CutSdo: {
      const bool sdo = config.mode == Mode::CutSdo;
      Partition part = partition(circuit, find_cuts(circuit, config.max_width, config.max_cuts));
      std::vector<Basis> biased = sdo ? select_biased_observables(part)
                                      : std::vector<Basis>(part.cuts.size(), Basis::Z);
      WirecutPlan plan = enumerate_variants(part, biased, sdo, sdo);
      record.agt = agt(plan, circuit).total;
      record.subcircuits = static_cast<double>(subcircuit_count(plan));
      break;
    }
    case Mode::NsccSdo: {
      CutSpec spec = config.max_cuts > 0 ? nscc_find_cuts(circuit, config.max_cuts)
                                         : CutSpec{};
      NsccPlan plan = nscc_variants(circuit, spec, true);
      record.agt = agt(plan, circuit).total;
      record.subcircuits = static_cast<double>(subcircuit_count(plan));
      break;
    }
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return record;
}

std::vector<ExperimentRecord> scaling_table(const std::vector<BenchmarkSpec>& benchmarks,
                                            const std::vector<Mode>& modes, int max_width,
                                            int max_cuts, int nscc_cuts, unsigned seed) {
  std::vector<ExperimentRecord> rows;
  for (const BenchmarkSpec& b : benchmarks) {
    for (Mode mode : modes) {
      ExperimentConfig config;
      config.benchmark = b;
      config.mode = mode;
      config.max_width = max_width;
      config.max_cuts = mode == Mode::NsccSdo ? nscc_cuts : max_cuts;
      rows.push_back(analyze(config, seed));
    }
  }
  return rows;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string record_to_json(const ExperimentRecord& record) {
  nlohmann::json j;
  j["benchmark"] = record.benchmark;
  j["qubits"] = record.qubits;
  j["mode"] = to_string(record.mode);
  j["agt"] = record.agt;
  j["agt_uncut"] = record.agt_uncut;
  j["subcircuits"] = record.subcircuits;
  if (record.seed_count > 0) {
    j["fidelity_mean"] = record.fidelity_mean;
    j["fidelity_stderr"] = record.fidelity_stderr;
  }
  j["seed_count"] = record.seed_count;
  j["wall_seconds"] = record.wall_seconds;
  return j.dump(2);
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out =
      "benchmark,qubits,mode,agt,subcircuits,fidelity_mean,fidelity_stderr,seed_count\n";
  for (const ExperimentRecord& r : records) {
    out += r.benchmark + "," + std::to_string(r.qubits) + "," + to_string(r.mode) + "," +
           fmt(r.agt) + "," + fmt(r.subcircuits) + ",";
    if (r.seed_count > 0) {
      out += fmt(r.fidelity_mean) + "," + fmt(r.fidelity_stderr);
    } else {
      out += ",";
    }
    out += "," + std::to_string(r.seed_count) + "\n";
  }
  return out;
}

}  // namespace qcut
