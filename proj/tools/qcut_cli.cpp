#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcut/experiment.hpp"
#include "qcut/qasm.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qcut::Error(qcut::ErrorCode::Config, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qcut::Error(qcut::ErrorCode::Config, "cannot write " + path);
  out << content;
}

struct Flags {
  std::string config_path;
  std::string benchmark;
  std::string mode;
  int max_width = -1;
  int max_cuts = -1;
  double p1 = -1.0, p2 = -1.0, pmeas = -1.0;
  std::vector<unsigned> seeds;
  int64_t shots = -1;
  std::string out;
  int n = -1, layers = -1;
  double density = -1.0, gamma = 1e9, beta = 1e9;
  std::string secret;
};

void add_benchmark_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--benchmark", f.benchmark, "benchmark kind: qaoa | qft | bv");
  cmd->add_option("-n,--qubits", f.n, "benchmark width");
  cmd->add_option("--layers", f.layers, "QAOA layers");
  cmd->add_option("--density", f.density, "QAOA edge density");
  cmd->add_option("--secret", f.secret, "BV secret bitstring");
  cmd->add_option("--gamma", f.gamma, "QAOA gamma (default 0.8)");
  cmd->add_option("--beta", f.beta, "QAOA beta (default 0.4)");
}

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
  add_benchmark_flags(cmd, f);
  cmd->add_option("--mode", f.mode, "uncut | cut | cut+SDO | nscc+SDO");
  cmd->add_option("--max-width", f.max_width, "fragment width cap");
  cmd->add_option("--max-cuts", f.max_cuts, "cut budget");
  cmd->add_option("--p1", f.p1, "one-qubit depolarizing rate");
  cmd->add_option("--p2", f.p2, "two-qubit depolarizing rate");
  cmd->add_option("--pmeas", f.pmeas, "readout flip rate");
  cmd->add_option("--seeds", f.seeds, "seed list")->delimiter(',');
  cmd->add_option("--shots", f.shots, "shots per variant (0 = exact)");
  cmd->add_option("--out", f.out, "output path (default stdout)");
}

void apply_benchmark_flags(const Flags& f, qcut::BenchmarkSpec& spec) {
  if (!f.benchmark.empty()) spec.kind = f.benchmark;
  if (f.n >= 0) spec.n = f.n;
  if (f.layers >= 0) spec.layers = f.layers;
  if (f.density >= 0.0) spec.density = f.density;
  if (!f.secret.empty()) spec.secret = f.secret;
  if (f.gamma < 1e8) spec.gamma = f.gamma;
  if (f.beta < 1e8) spec.beta = f.beta;
}

qcut::ExperimentConfig build_config(const Flags& f) {
  qcut::ExperimentConfig config;
  if (!f.config_path.empty()) config = qcut::config_from_json(read_file(f.config_path));
  apply_benchmark_flags(f, config.benchmark);
  if (!f.mode.empty()) config.mode = qcut::mode_from_string(f.mode);
  if (f.max_width >= 0) config.max_width = f.max_width;
  if (f.max_cuts >= 0) config.max_cuts = f.max_cuts;
  if (f.p1 >= 0.0) config.noise.p1 = f.p1;
  if (f.p2 >= 0.0) config.noise.p2 = f.p2;
  if (f.pmeas >= 0.0) config.noise.p_meas = f.pmeas;
  if (!f.seeds.empty()) config.seeds = f.seeds;
  if (f.shots >= 0) config.shots = f.shots;
  if (!f.out.empty()) config.out = f.out;
  return config;
}

int cmd_gen(const Flags& f) {
  qcut::BenchmarkSpec spec;
  if (!f.config_path.empty()) {
    spec = qcut::config_from_json(read_file(f.config_path)).benchmark;
  }
  apply_benchmark_flags(f, spec);
  unsigned seed = f.seeds.empty() ? 1u : f.seeds[0];
  qcut::Circuit circuit = qcut::build_benchmark(spec, seed);
  write_output(f.out, qcut::emit_qasm(circuit));
  return 0;
}

int cmd_run(const Flags& f) {
  qcut::ExperimentConfig config = build_config(f);
  qcut::ExperimentRecord record = qcut::run_experiment(config);
  write_output(config.out, qcut::record_to_json(record) + "\n");
  return 0;
}

int cmd_scaling(const Flags& f, int nscc_cuts, const std::vector<int>& sizes,
                const std::vector<std::string>& mode_names) {
  qcut::ExperimentConfig base;
  std::vector<qcut::BenchmarkSpec> benchmarks;
  std::vector<qcut::Mode> modes;
  int budget = nscc_cuts;
  if (!f.config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(f.config_path));
    } catch (const nlohmann::json::exception& e) {
      throw qcut::Error(qcut::ErrorCode::Config, std::string("bad config JSON: ") + e.what());
    }
    nlohmann::json shared = j;
    shared.erase("benchmarks");
    shared.erase("modes");
    shared.erase("nscc_cuts");
    base = qcut::config_from_json(shared.dump());
    if (j.contains("benchmarks")) {
      for (const auto& b : j["benchmarks"]) {
        nlohmann::json one;
        one["benchmark"] = b;
        benchmarks.push_back(qcut::config_from_json(one.dump()).benchmark);
      }
    }
    if (j.contains("modes")) {
      for (const auto& m : j["modes"]) {
        modes.push_back(qcut::mode_from_string(m.get<std::string>()));
      }
    }
    if (j.contains("nscc_cuts")) budget = j["nscc_cuts"].get<int>();
  }
  apply_benchmark_flags(f, base.benchmark);
  if (f.max_width >= 0) base.max_width = f.max_width;
  if (f.max_cuts >= 0) base.max_cuts = f.max_cuts;
  if (!f.out.empty()) base.out = f.out;
  if (!f.seeds.empty()) base.seeds = f.seeds;

  if (benchmarks.empty()) {
    if (sizes.empty()) {
      benchmarks.push_back(base.benchmark);
    } else {
      for (int n : sizes) {
        qcut::BenchmarkSpec spec = base.benchmark;
        spec.n = n;
        spec.secret.clear();
        benchmarks.push_back(spec);
      }
    }
  }
  for (const std::string& m : mode_names) modes.push_back(qcut::mode_from_string(m));
  if (modes.empty()) {
    modes = {qcut::Mode::Uncut, qcut::Mode::Cut, qcut::Mode::NsccSdo};
  }
  std::vector<qcut::ExperimentRecord> rows = qcut::scaling_table(
      benchmarks, modes, base.max_width, base.max_cuts, budget, base.seeds[0]);
  write_output(base.out, qcut::records_to_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circuit cutting with state-dependent optimization"};
  app.require_subcommand(1);

  Flags gen_flags, run_flags, scaling_flags;
  int nscc_cuts = 2;
  std::vector<int> sizes;
  std::vector<std::string> mode_names;

  CLI::App* gen = app.add_subcommand("gen", "emit a benchmark as QASM");
  gen->add_option("--config", gen_flags.config_path, "JSON config file");
  add_benchmark_flags(gen, gen_flags);
  gen->add_option("--seeds", gen_flags.seeds, "seed (first entry used)")->delimiter(',');
  gen->add_option("--out", gen_flags.out, "output path (default stdout)");

  CLI::App* run = app.add_subcommand("run", "run one experiment, emit a JSON record");
  add_run_flags(run, run_flags);

  CLI::App* scaling = app.add_subcommand("scaling", "analytic AGT/subcircuit CSV");
  add_run_flags(scaling, scaling_flags);
  scaling->add_option("--sizes", sizes, "benchmark widths, one row group each")
      ->delimiter(',');
  scaling->add_option("--modes", mode_names, "modes to tabulate")->delimiter(',');
  scaling->add_option("--nscc-cuts", nscc_cuts, "NSCC cut budget (default 2)");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_flags);
    if (run->parsed()) return cmd_run(run_flags);
    return cmd_scaling(scaling_flags, nscc_cuts, sizes, mode_names);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qcut::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
