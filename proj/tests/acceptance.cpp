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

// Acceptance suite A1-A10. Prints one PASS/FAIL line per criterion and
// exits nonzero when any selected criterion fails.
//
//   fogda_acceptance            run everything
//   fogda_acceptance --only A7  run one criterion

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogda/gamebench.hpp"
#include "fogda/lyapunov.hpp"
#include "fogda/metrics.hpp"
#include "fogda/rng.hpp"
#include "fogda/solvers.hpp"
#include "test_support.hpp"

using namespace fogda;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::optional<double> res_at(const IterTrace& t, long k) {
  for (const MetricRecord& r : t.records) {
    if (r.k == k) return r.res_natural;
  }
  return std::nullopt;
}

// The large-game trace shared by A1, A4 and A8.
struct LargeRun {
  IterTrace trace;
  double seconds = 0.0;
  double worst_cone = 0.0;  // max of violation / (1 + ||zeta||)
  long cone_checks = 0;
  SummabilityAccumulator::Report summability;
};

const LargeRun& large_run() {
  static const LargeRun cached = [] {
    LargeRun out;
    const GameInstance inst = generate_game(50, 50, 42);
    const VIProblem problem = game_problem(inst);
    SolverConfig c;
    c.algorithm = Algorithm::kFOGDA_VI;
    c.alpha = 50.0;
    c.max_iters = 100000;
    SummabilityAccumulator acc;
    RunOptions options;
    options.on_step = [&acc](const SolverState& s) { acc.observe(s); };
    options.on_record = [&](const SolverState& s, const MetricRecord&) {
      const double v = normal_cone_violation(problem.set, s.z_curr, s.zeta,
                                             1000, 1000 + s.k);
      out.worst_cone = std::max(out.worst_cone, v / (1.0 + s.zeta.norm()));
      ++out.cone_checks;
    };
    const auto t0 = std::chrono::steady_clock::now();
    out.trace = run(c, problem, uniform_start(50, 50), options);
    out.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    out.summability = acc.report();
    return out;
  }();
  return cached;
}

Verdict a1() {
  const LargeRun& r = large_run();
  const auto r3 = res_at(r.trace, 1000), r5 = res_at(r.trace, 100000);
  if (!r3 || !r5) return {false, "checkpoints 1e3 / 1e5 missing from trace"};
  const double ratio = (1e5 * *r5) / (1e3 * *r3);
  const double slope = rate_slope(r.trace.records, "res_natural", 1000);
  const bool pass = ratio <= 0.2 && slope <= -1.0 && r.seconds <= 120.0;
  return {pass, "kRes(1e5)/kRes(1e3)=" + fmt("%.3e", ratio) +
                    " (<=0.2) slope=" + fmt("%.3f", slope) +
                    " (<=-1) time=" + fmt("%.2f", r.seconds) + "s (<=120)"};
}

Verdict a2() {
  RunSpec spec;
  spec.instance = generate_game(50, 50, 42);
  for (Algorithm a : kConstrainedAlgorithms) {
    SolverConfig c;
    c.algorithm = a;
    c.alpha = 50.0;
    c.max_iters = 10000;
    spec.configs.push_back(c);
  }
  const ComparisonResult result = run_comparison(spec);
  std::map<Algorithm, double> res;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!result.traces[i]) return {false, "run failed: " + result.rows[i].message};
    const auto r = res_at(*result.traces[i], 10000);
    if (!r) return {false, "checkpoint 1e4 missing"};
    res[result.rows[i].algorithm] = *r;
  }
  const double ours = res[Algorithm::kFOGDA_VI];
  bool pass = true;
  std::string detail = "fOGDA-VI=" + fmt("%.3e", ours);
  for (const auto& [a, value] : res) {
    if (a == Algorithm::kFOGDA_VI) continue;
    pass = pass && ours < value;
    detail += " " + std::string(algorithm_label(a)) + "=" + fmt("%.3e", value);
  }
  return {pass, detail};
}

Verdict a3() {
  RunSpec spec;
  spec.instance = generate_game(50, 50, 42);
  for (double alpha : {3.0, 100.0}) {
    SolverConfig c;
    c.alpha = alpha;
    c.max_iters = 100000;
    spec.configs.push_back(c);
  }
  const ComparisonResult result = run_comparison(spec);
  const auto r3 = res_at(*result.traces[0], 100000);
  const auto r100 = res_at(*result.traces[1], 100000);
  if (!r3 || !r100) return {false, "checkpoint 1e5 missing"};
  return {*r100 <= *r3, "Res(1e5) alpha=100: " + fmt("%.3e", *r100) +
                            " alpha=3: " + fmt("%.3e", *r3)};
}

Verdict a4() {
  const LargeRun& r = large_run();
  return {r.worst_cone <= 1e-8,
          "max violation/(1+|zeta|)=" + fmt("%.3e", r.worst_cone) +
              " over " + std::to_string(r.cone_checks) +
              " records (<=1e-8)"};
}

Verdict a5() {
  const int d = 10, steps = 1000;
  const Matrix m = testing::random_skew(d, 2024);
  const VIProblem p =
      make_problem(make_linear_operator(m, 7), FeasibleSet::whole_space(d));
  SplitMix64 rng(55);
  Point start(d);
  for (int i = 0; i < d; ++i) start(i) = rng.normal();

  auto make = [&](Algorithm a) {
    SolverConfig c;
    c.algorithm = a;
    return init(c, p, start);
  };
  double dev_fogda = 0.0, dev_zeta = 0.0, dev_eg = 0.0, dev_frb = 0.0;
  SolverState vi = make(Algorithm::kFOGDA_VI), fo = make(Algorithm::kFOGDA);
  SolverState eg = make(Algorithm::kEG), fbf = make(Algorithm::kFBF);
  SolverState frb = make(Algorithm::kFRB);
  const std::vector<Point> ogda = testing::ogda_recursion(m, start, frb.gamma, steps);
  for (int t = 0; t < steps; ++t) {
    step(vi, p);
    step(fo, p);
    step(eg, p);
    step(fbf, p);
    step(frb, p);
    dev_fogda = std::max(dev_fogda, (vi.z_curr - fo.z_curr).cwiseAbs().maxCoeff());
    dev_zeta = std::max(dev_zeta, vi.zeta.cwiseAbs().maxCoeff());
    dev_eg = std::max(dev_eg, (eg.z_curr - fbf.z_curr).cwiseAbs().maxCoeff());
    dev_frb = std::max(dev_frb,
                       (frb.z_curr - ogda[t + 2]).cwiseAbs().maxCoeff());
  }
  const bool pass = dev_fogda <= 1e-12 && dev_zeta <= 1e-12 &&
                    dev_eg <= 1e-12 && dev_frb <= 1e-12;
  return {pass, "fOGDA-VI/fOGDA=" + fmt("%.1e", dev_fogda) +
                    " zeta=" + fmt("%.1e", dev_zeta) +
                    " EG/FBF=" + fmt("%.1e", dev_eg) +
                    " FRB/OGDA=" + fmt("%.1e", dev_frb) + " (<=1e-12)"};
}

Verdict a6() {
  const GameInstance inst = generate_game(6, 5, 11);
  bool pass = true;
  std::string detail;
  for (Algorithm a : kAllAlgorithms) {
    auto set_impl = std::make_shared<testing::CountingSet>(
        FeasibleSet::product({FeasibleSet::simplex(6), FeasibleSet::simplex(5)}));
    auto evals = std::make_shared<long>(0);
    const VIProblem p = make_problem(
        testing::counting_operator(make_game_operator(inst.a, inst.lipschitz), evals),
        FeasibleSet(set_impl));
    SolverConfig c;
    c.algorithm = a;
    SolverState s = init(c, p, uniform_start(6, 5));
    *evals = 0;
    *set_impl->counter() = 0;
    for (int t = 0; t < 100; ++t) step(s, p);
    const CallCounts per = calls_per_step(a);
    const bool ok = *evals == 100L * per.operator_evals &&
                    *set_impl->counter() == 100L * per.projections &&
                    s.operator_evals == *evals &&
                    s.projections == *set_impl->counter();
    pass = pass && ok;
    detail += std::string(algorithm_label(a)) + "=" + std::to_string(*evals) +
              "/" + std::to_string(*set_impl->counter()) + (ok ? " " : "(!) ");
  }
  return {pass, detail + "(evals/projections over 100 steps)"};
}

Verdict a7() {
  const GameInstance inst = generate_game(5, 5, 7);
  const Point z_ref = presolve_reference(inst).solution;
  const VIProblem problem = game_problem(inst);
  SolverConfig c;
  c.alpha = 4.0;
  c.max_iters = 200;
  std::vector<FogdaViSnapshot> snaps;
  RunOptions options;
  options.on_step = snapshot_recorder(problem, snaps);
  const IterTrace t = run(c, problem, uniform_start(5, 5), options);
  const EnergyParams params =
      make_energy_params(4.0, t.gamma, inst.lipschitz, 25.0 / 12.0);
  const LyapunovReport rep = analyze(snaps, params, z_ref);

  double worst_chain = INFINITY;
  long chain_failures = 0;
  for (const LipschitzChainRow& r : rep.lipschitz_chain) {
    worst_chain = std::min(worst_chain, r.slack);
    if (r.slack < 0.0) ++chain_failures;
  }
  const bool a = rep.lower_bound_holds;
  const bool b = rep.descent.all_hold;
  const bool cc = rep.rk_certified;
  const bool d = rep.E_final_variation < 0.01 && rep.G_final_variation < 0.01;
  const bool e = rep.lipschitz_chain_holds;
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  std::string detail =
      std::string("(a) G>=lb>=0 ") + mark(a) + "; (b) descent from k0=" +
      std::to_string(rep.k0) + " " + mark(b) + " worst slack " +
      fmt("%.2e", rep.descent.worst_slack) + "; (c) R_k<=0 from k_lambda=" +
      (rep.k_lambda ? std::to_string(*rep.k_lambda) : std::string("none")) +
      " " + mark(cc) + "; (d) final-tenth variation E=" +
      fmt("%.3e", rep.E_final_variation) + " G=" +
      fmt("%.3e", rep.G_final_variation) + " (<1e-2, per-step change " +
      fmt("%.2e", rep.E_final_step_change) + ") " + mark(d) +
      "; (e) Lipschitz chain worst slack " + fmt("%.3e", worst_chain) + ", " +
      std::to_string(chain_failures) + "/" +
      std::to_string(rep.lipschitz_chain.size()) + " steps negative " +
      mark(e);
  return {a && b && cc && d && e, detail};
}

Verdict a8() {
  const auto& s = large_run().summability;
  const bool growth = s.growth_dv < 0.01 && s.growth_dz < 0.01 && s.growth_v < 0.01;
  const bool decay = s.max_k_step_last_decade < 0.1 * s.max_k_step;
  return {growth && decay,
          "final-half growth dv=" + fmt("%.2e", s.growth_dv) + " dz=" +
              fmt("%.2e", s.growth_dz) + " v=" + fmt("%.2e", s.growth_v) +
              " (<1e-2); k|dz| last decade/global=" +
              fmt("%.3e", s.max_k_step_last_decade / s.max_k_step) + " (<0.1)"};
}

Verdict a9() {
  SplitMix64 rng(909);
  double worst_proj = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int d = 1 + t % 4;
    Point v(d);
    for (int i = 0; i < d; ++i) v(i) = 2.0 * rng.normal();
    worst_proj = std::max(worst_proj, (project_simplex(v) -
                                       testing::simplex_projection_oracle(v))
                                          .cwiseAbs()
                                          .maxCoeff());
  }
  double worst_gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Matrix a = testing::random_matrix(3, 4, 5000 + t);
    Point x(3), y(4);
    for (int i = 0; i < 3; ++i) x(i) = rng.exponential();
    for (int i = 0; i < 4; ++i) y(i) = rng.exponential();
    x /= x.sum();
    y /= y.sum();
    worst_gap = std::max(worst_gap, std::abs(restricted_gap_bilinear(a, x, y) -
                                             testing::gap_vertex_oracle(a, x, y)));
  }
  const LambdaRange r = lambda_range(4.0);
  const bool exact = r.lower == 5.0 / 3.0 && r.upper == 5.0 / 2.0;
  return {worst_proj <= 1e-9 && worst_gap <= 1e-10 && exact,
          "projection dev=" + fmt("%.1e", worst_proj) + " (<=1e-9) gap dev=" +
              fmt("%.1e", worst_gap) + " (<=1e-10) lambda range (" +
              fmt("%.17g", r.lower) + ", " + fmt("%.17g", r.upper) + ")" +
              (exact ? " exact" : " NOT exact")};
}

Verdict a10() {
  const GameInstance inst = make_instance(Matrix::Identity(2, 2));
  const Point target = Point::Constant(4, 0.5);
  // The uniform start is already the saddle, so start from a seeded random
  // feasible point instead.
  const Point start = random_feasible_start(2, 2, 1);
  RunSpec spec;
  spec.instance = inst;
  spec.start = start;
  for (Algorithm a : kConstrainedAlgorithms) {
    SolverConfig c;
    c.algorithm = a;
    c.max_iters = 100000;
    c.stop_tolerance = 1e-6;
    spec.configs.push_back(c);
  }
  const ComparisonResult result = run_comparison(spec);
  bool pass = true;
  std::string detail = "Res0=" + fmt("%.2e", result.rows[0].initial_res) + ";";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SummaryRow& row = result.rows[i];
    if (!result.traces[i]) return {false, "run failed: " + row.message};
    const double dist = (result.traces[i]->final_iterate - target).norm();
    const bool ok = row.final_res <= 1e-6 && dist <= 1e-4;
    pass = pass && ok;
    detail += " " + std::string(algorithm_label(row.algorithm)) + " Res=" +
              fmt("%.1e", row.final_res) + "@" + std::to_string(row.final_k) +
              " dist=" + fmt("%.1e", dist) + (ok ? "" : "(!)");
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
  }
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
  int failures = 0;
  bool ran = false;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && only != name) continue;
    ran = true;
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%-4s %s  %s\n", name.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  if (!ran) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
