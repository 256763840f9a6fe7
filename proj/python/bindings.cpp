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


// Python bindings for the solver library.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "fogda/core.hpp"
#include "fogda/gamebench.hpp"
#include "fogda/lyapunov.hpp"
#include "fogda/metrics.hpp"
#include "fogda/problem.hpp"
#include "fogda/sets.hpp"
#include "fogda/solvers.hpp"
#include "fogda/trace_io.hpp"

namespace py = pybind11;
using namespace fogda;

namespace {

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::kEG,  Algorithm::kPopov, Algorithm::kFBF,
          Algorithm::kFRB, Algorithm::kRG,    Algorithm::kEAG,
          Algorithm::kARG, Algorithm::kFOGDA, Algorithm::kFOGDA_VI};
}

py::dict trace_to_dict(const IterTrace& t) {
  std::vector<long> k;
  std::vector<double> res, step;
  std::vector<std::optional<double>> gap, dist, tangent;
  for (const auto& r : t.records) {
    k.push_back(r.k);
    res.push_back(r.res_natural);
    step.push_back(r.step_norm);
    gap.push_back(r.gap);
    dist.push_back(r.dist_to_ref);
    tangent.push_back(r.tangent_ub);
  }
  py::dict d;
  d["algorithm"] = std::string(algorithm_name(t.algorithm));
  d["gamma"] = t.gamma;
  d["alpha"] = t.alpha;
  d["lipschitz"] = t.lipschitz;
  d["status"] = std::string(to_string(t.status));
  d["diagnostic"] = t.diagnostic;
  d["steps"] = t.steps;
  d["operator_evals"] = t.operator_evals;
  d["projections"] = t.projections;
  d["final_iterate"] = t.final_iterate;
  d["delta0"] = t.delta0;
  d["k"] = k;
  d["res"] = res;
  d["gap"] = gap;
  d["tangent_ub"] = tangent;
  d["dist_to_ref"] = dist;
  d["step_norm"] = step;
  return d;
}

SolverConfig make_config(const std::string& algorithm, long iters,
                         std::optional<double> gamma, double alpha,
                         long stride, std::uint64_t seed, double stop_tol) {
  SolverConfig c;
  c.algorithm = parse_algorithm(algorithm);
  c.max_iters = iters;
  c.gamma = gamma;
  c.alpha = alpha;
  c.counter_stride = stride;
  c.seed = seed;
  c.stop_tolerance = stop_tol;
  return c;
}

RecordCadence parse_cadence(const std::string& s) {
  if (s == "log") return RecordCadence::kLogarithmic;
  if (s == "every") return RecordCadence::kEveryStep;
  throw ConfigError("cadence must be 'log' or 'every', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monotone VI solvers with fOGDA-VI and bilinear game benchmarks";

  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_RuntimeError);

  m.def("algorithms", [] {
    std::vector<std::string> out;
    for (auto a : all_algorithms()) out.emplace_back(algorithm_name(a));
    return out;
  });
  m.def("calls_per_step", [](const std::string& name) {
    auto c = calls_per_step(parse_algorithm(name));
    return py::make_tuple(c.operator_evals, c.projections);
  });
  m.def("step_size_bound", [](const std::string& name) {
    auto b = step_size_bound(parse_algorithm(name));
    return py::make_tuple(b.factor, b.inclusive);
  }, "(factor, inclusive): gamma must be below factor / L");

  m.def("project_simplex", &project_simplex, py::arg("v"));
  m.def("lipschitz_bilinear",
        [](const Matrix& a, std::uint64_t seed) {
          return lipschitz_bilinear(a, seed);
        },
        py::arg("a"), py::arg("seed") = 0);
  m.def("game_operator", &evaluate_game_operator, py::arg("a"), py::arg("x"),
        py::arg("y"));
  m.def("game_gap", &restricted_gap_bilinear, py::arg("a"), py::arg("x"),
        py::arg("y"));
  m.def("game_residual",
        [](const Matrix& a, const Point& z) {
          return natural_residual(make_game_problem(a, 1.0), z);
        },
        py::arg("a"), py::arg("z"));

  py::class_<GameInstance>(m, "GameInstance")
      .def_readonly("a", &GameInstance::a)
      .def_readonly("m", &GameInstance::m)
      .def_readonly("n", &GameInstance::n)
      .def_readonly("seed", &GameInstance::seed)
      .def_readonly("lipschitz", &GameInstance::lipschitz)
      .def("__repr__", [](const GameInstance& g) {
        return "GameInstance(m=" + std::to_string(g.m) +
               ", n=" + std::to_string(g.n) +
               ", seed=" + std::to_string(g.seed) + ")";
      });
  m.def("generate_game", &generate_game, py::arg("m"), py::arg("n"),
        py::arg("seed"));
  m.def("make_instance", &make_instance, py::arg("a"), py::arg("seed") = 0);
  m.def("write_instance", &write_instance, py::arg("path"),
        py::arg("instance"));
  m.def("read_instance", &read_instance, py::arg("path"));
  m.def("uniform_start", &uniform_start, py::arg("m"), py::arg("n"));
  m.def("random_feasible_start", &random_feasible_start, py::arg("m"),
        py::arg("n"), py::arg("seed"));
  m.def("presolve_reference",
        [](const GameInstance& g, double tol, long max_iters) {
          auto r = presolve_reference(g, tol, max_iters);
          return py::make_tuple(r.solution, r.residual, r.iterations);
        },
        py::arg("instance"), py::arg("tol") = kPresolveTolerance,
        py::arg("max_iters") = kPresolveMaxIters,
        "Returns (solution, residual, iterations).");

  m.def("solve_game",
        [](const GameInstance& g, const std::string& algorithm, long iters,
           std::optional<double> gamma, double alpha, long stride,
           std::uint64_t seed, double stop_tol, std::optional<Point> start,
           std::optional<Point> reference, const std::string& cadence) {
          auto config =
              make_config(algorithm, iters, gamma, alpha, stride, seed,
                          stop_tol);
          auto problem = game_problem(g, reference);
          Point z0 = start ? *start : uniform_start(g.m, g.n);
          RunOptions opts;
          opts.cadence = parse_cadence(cadence);
          IterTrace t;
          {
            py::gil_scoped_release release;
            t = run(config, problem, z0, opts);
          }
          return trace_to_dict(t);
        },
        py::arg("instance"), py::arg("algorithm") = "fogda-vi",
        py::arg("iters") = 1000, py::arg("gamma") = py::none(),
        py::arg("alpha") = SolverConfig{}.alpha, py::arg("stride") = 1,
        py::arg("seed") = 0, py::arg("stop_tol") = 0.0,
        py::arg("start") = py::none(), py::arg("reference") = py::none(),
        py::arg("cadence") = "log",
        "Runs one solver on a game and returns its recorded trace as a dict.");

  m.def("compare",
        [](const GameInstance& g, const std::vector<std::string>& algorithms,
           long iters, double alpha, std::optional<Point> start,
           std::optional<Point> reference, const std::string& cadence,
           unsigned threads) {
          RunSpec spec;
          spec.instance = g;
          for (const auto& a : algorithms)
            spec.configs.push_back(
                make_config(a, iters, std::nullopt, alpha, 1, 0, 0.0));
          spec.cadence = parse_cadence(cadence);
          spec.start = start;
          spec.reference = reference;
          spec.threads = threads;
          ComparisonResult r;
          {
            py::gil_scoped_release release;
            r = run_comparison(spec);
          }
          py::list traces;
          for (const auto& t : r.traces) {
            if (t) traces.append(trace_to_dict(*t));
            else traces.append(py::none());
          }
          return py::make_tuple(traces, render_summary(r.rows));
        },
        py::arg("instance"), py::arg("algorithms"), py::arg("iters") = 1000,
        py::arg("alpha") = SolverConfig{}.alpha, py::arg("start") = py::none(),
        py::arg("reference") = py::none(), py::arg("cadence") = "log",
        py::arg("threads") = 0,
        "Runs several algorithms; returns (traces, summary CSV text).");

  m.def("lambda_range",
        [](double alpha) {
          auto r = lambda_range(alpha);
          return py::make_tuple(r.lower, r.upper);
        },
        py::arg("alpha"));
  m.def("check_Rk",
        [](double alpha, double gamma, double lipschitz, double lambda,
           long k) {
          EnergyParams p{alpha, gamma, lipschitz,
                         epsilon_of(gamma, lipschitz), lambda};
          return check_Rk(p, k);
        },
        py::arg("alpha"), py::arg("gamma"), py::arg("lipschitz"),
        py::arg("lam"), py::arg("k"));
  m.def("descent_start", &descent_start, py::arg("alpha"));

  m.def("read_trace",
        [](const std::string& path) {
          auto f = read_trace(path);
          py::dict meta;
          for (const auto& [k, v] : f.metadata) meta[py::str(k)] = v;
          return py::make_tuple(meta, f.columns, f.rows);
        },
        py::arg("path"), "Returns (metadata, columns, rows) as strings.");
}
