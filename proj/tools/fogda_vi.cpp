// Copyright 2026 The fogda-vi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, compare, lyapunov, generate.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fogda/gamebench.hpp"
#include "fogda/lyapunov.hpp"
#include "fogda/metrics.hpp"
#include "fogda/solvers.hpp"
#include "fogda/trace_io.hpp"

namespace {

using namespace fogda;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Flags shared by every subcommand that builds a game and runs a solver.
struct GameFlags {
  long m = 50;
  long n = 50;
  std::uint64_t seed = 42;
  std::string instance;  // empty means generate from (m, n, seed)
  long iters = 1000;
  std::optional<double> gamma;
  std::optional<double> gamma_frac;
  double alpha = 10.0;
  long stride = 1;
  double tol = 0.0;
  std::string start = "uniform";
  std::string cadence = "log";
  bool reference = false;
};

void add_game_flags(CLI::App* cmd, GameFlags& f) {
  cmd->add_option("--m", f.m, "rows of the payoff matrix");
  cmd->add_option("--n", f.n, "columns of the payoff matrix");
  cmd->add_option("--seed", f.seed, "instance and solver seed");
  cmd->add_option("--instance", f.instance, "read the payoff matrix from a file");
  cmd->add_option("--iters", f.iters, "iteration budget");
  auto* g = cmd->add_option("--gamma", f.gamma, "explicit step size");
  auto* gf = cmd->add_option("--gamma-frac", f.gamma_frac,
                             "step size as a fraction of the bound");
  g->excludes(gf);
  cmd->add_option("--alpha", f.alpha, "momentum parameter (> 2)");
  cmd->add_option("--stride", f.stride, "counter stride for the momentum");
  cmd->add_option("--tol", f.tol, "stop when the natural residual is <= tol");
  cmd->add_option("--start", f.start, "uniform or random:<seed>");
  cmd->add_option("--cadence", f.cadence, "log or every")
      ->check(CLI::IsMember({"log", "every"}));
  cmd->add_flag("--reference", f.reference,
                "presolve a reference solution for dist_to_ref");
}

GameInstance load_instance(const GameFlags& f) {
  if (!f.instance.empty()) return read_instance(f.instance);
  return generate_game(f.m, f.n, f.seed);
}

Point make_start(const GameFlags& f, const GameInstance& inst) {
  if (f.start == "uniform") return uniform_start(inst.m, inst.n);
  if (f.start.rfind("random:", 0) == 0) {
    try {
      return random_feasible_start(inst.m, inst.n,
                                   std::stoull(f.start.substr(7)));
    } catch (const std::logic_error&) {
    }
  }
  throw ConfigError("--start must be 'uniform' or 'random:<seed>', got '" +
                    f.start + "'");
}

SolverConfig make_config(const GameFlags& f, Algorithm algorithm) {
  if (f.iters < 0) throw ConfigError("--iters must be >= 0");
  SolverConfig c;
  c.algorithm = algorithm;
  c.gamma = f.gamma;
  c.safety_fraction = f.gamma_frac;
  c.alpha = f.alpha;
  c.counter_stride = f.stride;
  c.max_iters = f.iters;
  c.seed = f.seed;
  c.stop_tolerance = f.tol;
  return c;
}

RecordCadence cadence_of(const std::string& name) {
  return name == "every" ? RecordCadence::kEveryStep
                         : RecordCadence::kLogarithmic;
}

TraceHeader header_for(const GameFlags& f, const GameInstance& inst,
                       const IterTrace& trace) {
  TraceHeader h;
  h.trace = &trace;
  h.m = inst.m;
  h.n = inst.n;
  h.instance = f.instance.empty() ? "generated" : f.instance;
  h.start = f.start;
  h.cadence = f.cadence;
  h.reference = f.reference ? "presolve" : "none";
  return h;
}

std::optional<Point> maybe_reference(const GameFlags& f,
                                     const GameInstance& inst) {
  if (!f.reference) return std::nullopt;
  return presolve_reference(inst).solution;
}

int report_status(const IterTrace& trace) {
  if (trace.status == RunStatus::kDiverged) {
    std::cerr << "error: " << trace.diagnostic << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_run(const GameFlags& f, const std::string& algo,
            const std::string& out) {
  const GameInstance inst = load_instance(f);
  const SolverConfig config = make_config(f, parse_algorithm(algo));
  validate_config(config, inst.lipschitz);
  const VIProblem problem = game_problem(inst, maybe_reference(f, inst));
  RunOptions options;
  options.cadence = cadence_of(f.cadence);
  const IterTrace trace = run(config, problem, make_start(f, inst), options);
  write_trace(out, make_trace_file(header_for(f, inst, trace)));
  const MetricRecord& last = trace.records.back();
  std::printf("%s: k=%ld res=%.6e status=%s\n",
              std::string(algorithm_label(config.algorithm)).c_str(), last.k,
              last.res_natural, std::string(to_string(trace.status)).c_str());
  return report_status(trace);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string alpha_tag(double alpha) {
  std::string s = format_real(alpha);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

int cmd_compare(const GameFlags& f, const std::string& algos,
                const std::string& alphas, const std::string& algo,
                const std::string& out_dir) {
  if (algos.empty() == alphas.empty()) {
    throw ConfigError("compare needs exactly one of --algos or --alphas");
  }
  const GameInstance inst = load_instance(f);
  RunSpec spec;
  spec.instance = inst;
  std::vector<std::string> names;
  if (!algos.empty()) {
    std::set<Algorithm> seen;
    for (const std::string& name : split_list(algos)) {
      const Algorithm a = parse_algorithm(name);
      if (!seen.insert(a).second) {
        throw ConfigError("duplicate algorithm '" + name + "' in --algos");
      }
      spec.configs.push_back(make_config(f, a));
      names.push_back(std::string(algorithm_name(a)));
    }
  } else {
    const Algorithm a = parse_algorithm(algo);
    std::set<double> seen;
    for (const std::string& text : split_list(alphas)) {
      double value = 0.0;
      try {
        value = std::stod(text);
      } catch (const std::logic_error&) {
        throw ConfigError("bad value '" + text + "' in --alphas");
      }
      if (!seen.insert(value).second) {
        throw ConfigError("duplicate value '" + text + "' in --alphas");
      }
      GameFlags g = f;
      g.alpha = value;
      spec.configs.push_back(make_config(g, a));
      names.push_back(std::string(algorithm_name(a)) + "_a" + alpha_tag(value));
    }
  }
  if (spec.configs.empty()) throw ConfigError("compare: empty run list");
  for (const SolverConfig& c : spec.configs) validate_config(c, inst.lipschitz);
  spec.cadence = cadence_of(f.cadence);
  spec.start = make_start(f, inst);
  spec.reference = maybe_reference(f, inst);

  const ComparisonResult result = run_comparison(spec);
  int code = kExitOk;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SummaryRow& row = result.rows[i];
    if (!result.traces[i]) {
      std::cerr << "error: run " << i << " (" << names[i]
                << ") failed: " << row.message << '\n';
      code = kExitNumerical;
      continue;
    }
    GameFlags g = f;
    g.alpha = spec.configs[i].alpha;
    const std::filesystem::path path =
        std::filesystem::path(out_dir) /
        (std::to_string(i) + "_" + names[i] + ".csv");
    write_trace(path.string(),
                make_trace_file(header_for(g, inst, *result.traces[i])));
    std::printf("%-22s k=%-7ld res=%.6e status=%s\n", names[i].c_str(),
                row.final_k, row.final_res, row.status.c_str());
    if (row.status == "diverged") code = kExitNumerical;
  }
  write_file_atomic(
      (std::filesystem::path(out_dir) / "summary.csv").string(),
      render_summary(result.rows));
  return code;
}

// Rebuilds the flags of a stored trace from its metadata.
GameFlags flags_from_trace(const TraceFile& file) {
  auto need = [&file](const std::string& key) {
    const auto v = file.meta(key);
    if (!v || v->empty()) {
      throw ConfigError("trace lacks required metadata '" + key + "'");
    }
    return *v;
  };
  if (parse_algorithm(need("algorithm")) != Algorithm::kFOGDA_VI) {
    throw ConfigError("lyapunov needs a fogda-vi trace, got '" +
                      need("algorithm") + "'");
  }
  GameFlags f;
  try {
    f.m = std::stol(need("m"));
    f.n = std::stol(need("n"));
    f.seed = std::stoull(need("seed"));
    f.iters = std::stol(need("iters"));
    f.gamma = std::stod(need("gamma"));
    f.alpha = std::stod(need("alpha"));
    f.stride = std::stol(need("stride"));
    f.tol = std::stod(need("stop_tol"));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError("trace metadata is not numeric");
  }
  f.start = need("start");
  f.cadence = need("cadence");
  const std::string instance = need("instance");
  if (instance != "generated") f.instance = instance;
  f.reference = file.meta("reference").value_or("none") == "presolve";
  return f;
}

// Compares a rerun with the stored rows, ignoring wall time.
bool reproduces(const TraceFile& stored, const TraceFile& fresh) {
  if (stored.rows.size() != fresh.rows.size()) return false;
  const auto wall = stored.column("wall_ns");
  for (std::size_t r = 0; r < stored.rows.size(); ++r) {
    for (std::size_t c = 0; c < std::size(kTraceColumns); ++c) {
      if (wall && c == *wall) continue;
      if (c >= stored.rows[r].size() || stored.rows[r][c] != fresh.rows[r][c]) {
        return false;
      }
    }
  }
  return true;
}

int cmd_lyapunov(GameFlags f, const std::string& trace_path,
                 std::optional<double> lambda, const std::string& out) {
  std::optional<TraceFile> stored;
  if (!trace_path.empty()) {
    stored = read_trace(trace_path);
    f = flags_from_trace(*stored);
  }
  const GameInstance inst = load_instance(f);
  const SolverConfig config = make_config(f, Algorithm::kFOGDA_VI);
  validate_config(config, inst.lipschitz);
  const Point z_ref = presolve_reference(inst).solution;
  const VIProblem problem = game_problem(inst, f.reference
                                                   ? std::optional<Point>(z_ref)
                                                   : std::nullopt);
  std::vector<FogdaViSnapshot> snaps;
  RunOptions options;
  options.cadence = cadence_of(f.cadence);
  options.on_step = snapshot_recorder(problem, snaps);
  const IterTrace trace = run(config, problem, make_start(f, inst), options);
  if (trace.status == RunStatus::kDiverged) return report_status(trace);

  TraceFile fresh = make_trace_file(header_for(f, inst, trace));
  if (stored && !reproduces(*stored, fresh)) {
    std::cerr << "error: rerun does not reproduce the stored trace\n";
    return kExitConfig;
  }

  const EnergyParams params =
      make_energy_params(f.alpha, trace.gamma, inst.lipschitz, lambda);
  const LyapunovReport rep = analyze(snaps, params, z_ref);

  auto yes = [](bool b) { return b ? "yes" : "NO"; };
  std::printf("alpha          %.17g\n", params.alpha);
  std::printf("gamma          %.17g\n", params.gamma);
  std::printf("L              %.17g\n", params.lipschitz);
  std::printf("epsilon        %.17g\n", params.epsilon);
  std::printf("lambda         %.17g  range (%.17g, %.17g)%s\n", params.lambda,
              rep.range.lower, rep.range.upper,
              lambda_in_range(params) ? "" : "  OUTSIDE");
  std::printf("k0             %ld\n", rep.k0);
  auto opt_k = [](const std::optional<long>& k) {
    return k ? std::to_string(*k) : std::string("none below cap");
  };
  std::printf("k_lambda       %s\n", opt_k(rep.k_lambda).c_str());
  std::printf("k_epsilon      %s\n", opt_k(rep.k_epsilon).c_str());
  std::printf("descent first valid k  %s\n",
              opt_k(rep.descent.first_valid_k).c_str());
  std::printf("descent holds from k0  %s (worst slack %.3e)\n",
              yes(rep.descent.all_hold), rep.descent.worst_slack);
  std::printf("G >= lower bound >= 0  %s\n", yes(rep.lower_bound_holds));
  std::printf("E >= 0                 %s\n", yes(rep.E_nonnegative));
  std::printf("R_k certificate        %s\n", yes(rep.rk_certified));
  std::printf("Lipschitz chain        %s\n", yes(rep.lipschitz_chain_holds));
  std::printf("E final variation      %.3e (max step change %.3e)\n",
              rep.E_final_variation, rep.E_final_step_change);
  std::printf("G final variation      %.3e (max step change %.3e)\n",
              rep.G_final_variation, rep.G_final_step_change);
  const auto& s = rep.summability;
  std::printf("sums dv dz v           %.6e %.6e %.6e\n", s.sum_dv, s.sum_dz,
              s.sum_v);
  std::printf("k*step max / decade    %.6e / %.6e\n", s.max_k_step,
              s.max_k_step_last_decade);

  if (!out.empty()) {
    ExtraColumn e{"lyap_E", {}}, g{"lyap_G", {}}, lb{"lyap_lower_bound", {}};
    ExtraColumn ds{"lyap_descent_slack", {}}, ch{"lyap_chain_slack", {}};
    for (const EnergyRecord& r : rep.energies) {
      e.values[r.k] = r.E;
      g.values[r.k] = r.G;
      lb.values[r.k] = r.lower_bound;
    }
    for (const DescentRow& r : rep.descent.rows) ds.values[r.k] = r.slack;
    for (const LipschitzChainRow& r : rep.lipschitz_chain) {
      ch.values[r.k] = r.slack;
    }
    write_trace(out, make_trace_file(header_for(f, inst, trace),
                                     {e, g, lb, ds, ch}));
  }
  return kExitOk;
}

int cmd_generate(long m, long n, std::uint64_t seed, const std::string& out) {
  write_instance(out, generate_game(m, n, seed));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order solvers for monotone variational inequalities"};
  app.require_subcommand(1);

  GameFlags run_flags;
  std::string run_algo, run_out;
  auto* run_cmd = app.add_subcommand("run", "run one solver, write a trace");
  add_game_flags(run_cmd, run_flags);
  run_cmd->add_option("--algo", run_algo, "algorithm name")->required();
  run_cmd->add_option("--out", run_out, "trace CSV path")->required();

  GameFlags cmp_flags;
  std::string cmp_algos, cmp_alphas, cmp_algo = "fogda-vi", cmp_out;
  auto* cmp_cmd = app.add_subcommand("compare", "run a sweep, write traces");
  add_game_flags(cmp_cmd, cmp_flags);
  cmp_cmd->add_option("--algos", cmp_algos, "comma-separated algorithms");
  cmp_cmd->add_option("--alphas", cmp_alphas, "comma-separated alpha values");
  cmp_cmd->add_option("--algo", cmp_algo, "algorithm for an --alphas sweep");
  cmp_cmd->add_option("--out", cmp_out, "output directory")->required();

  GameFlags lyap_flags;
  lyap_flags.m = 5;
  lyap_flags.n = 5;
  lyap_flags.seed = 7;
  lyap_flags.iters = 200;
  lyap_flags.alpha = 4.0;
  std::string lyap_trace, lyap_out;
  std::optional<double> lyap_lambda;
  auto* lyap_cmd =
      app.add_subcommand("lyapunov", "check the energy estimates on fOGDA-VI");
  add_game_flags(lyap_cmd, lyap_flags);
  lyap_cmd->add_option("--trace", lyap_trace, "stored fogda-vi trace");
  lyap_cmd->add_option("--lambda", lyap_lambda,
                       "energy parameter, default midpoint of its range");
  lyap_cmd->add_option("--out", lyap_out, "trace CSV with lyap_* columns");

  long gen_m = 50, gen_n = 50;
  std::uint64_t gen_seed = 42;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "write a game instance file");
  gen_cmd->add_option("--m", gen_m);
  gen_cmd->add_option("--n", gen_n);
  gen_cmd->add_option("--seed", gen_seed);
  gen_cmd->add_option("--out", gen_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags, run_algo, run_out);
    if (*cmp_cmd) {
      return cmd_compare(cmp_flags, cmp_algos, cmp_alphas, cmp_algo, cmp_out);
    }
    if (*lyap_cmd) {
      return cmd_lyapunov(lyap_flags, lyap_trace, lyap_lambda, lyap_out);
    }
    if (*gen_cmd) return cmd_generate(gen_m, gen_n, gen_seed, gen_out);
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
