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

#include "fogda/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fogda {
namespace {

double sq(double x) { return x * x; }

// sqrt((5 alpha - 2) / (2 (3 alpha - 2))), the weight splitting R_k.
double rk_weight(double alpha) {
  return std::sqrt((5.0 * alpha - 2.0) / (2.0 * (3.0 * alpha - 2.0)));
}

void require_alpha(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw ConfigError("momentum parameter must satisfy α > 2");
  }
}

}  // namespace

double epsilon_of(double gamma, double lipschitz) {
  if (!(lipschitz > 0.0)) throw ConfigError("epsilon_of: L must be positive");
  if (!(gamma > 0.0) || !(4.0 * gamma * lipschitz < 1.0)) {
    throw ConfigError("epsilon_of: need 0 < γ < 1/(4L)");
  }
  return 1.0 - 4.0 * gamma * lipschitz;
}

Point v_of(const Point& f_w_prev, const Point& zeta) {
  if (f_w_prev.size() != zeta.size()) {
    throw DimensionError("v_of: dimension mismatch");
  }
  return f_w_prev + zeta;
}

LambdaRange lambda_range(double alpha) {
  require_alpha(alpha);
  const double root = std::sqrt((alpha - 2.0) * (5.0 * alpha - 2.0));
  // alpha - 1 + xi over a common denominator, so exact inputs give a single
  // rounding.
  const double den = 8.0 * (alpha - 1.0);
  const double base = den * (alpha - 1.0);
  const double lower =
      (base - (alpha - 2.0) * (3.0 * alpha - 2.0 + root)) / den;
  const double upper =
      (base - (alpha - 2.0) * (3.0 * alpha - 2.0 - root)) / den;
  return {lower, std::min(0.75 * alpha - 0.5, upper)};
}

EnergyConstants constants_of(double alpha, double lambda, long k,
                             double epsilon) {
  require_alpha(alpha);
  const double a = alpha;
  const double shift = lambda + 1.0 - a;
  const double kp1 = static_cast<double>(k) + 1.0;
  EnergyConstants c{};
  c.eta0 = (4.0 * (a - 1.0) * shift - a * (a - 2.0)) / (2.0 * (a - 1.0));
  c.eta1 = (2.0 * a * (a - 1.0) * shift + a - 2.0 * sq(a - 1.0)) /
           (2.0 * (a - 1.0));
  c.eta2 = 4.0 * shift;
  c.eta3 = -(a - 2.0) * (3.0 * a - 2.0) / (2.0 * (a - 1.0));
  c.kappa0 = (a - 2.0) * std::sqrt(a - 2.0) / (a - 1.0);
  c.kappa1 = (a - 2.0) * a / (4.0 * (a - 1.0));
  c.mu_k = kp1 * (epsilon * kp1 + a * a * std::sqrt(kp1) + (a - 4.0)) -
           (a - 2.0);
  return c;
}

EnergyParams make_energy_params(double alpha, double gamma, double lipschitz,
                                std::optional<double> lambda) {
  require_alpha(alpha);
  EnergyParams p{alpha, gamma, lipschitz, epsilon_of(gamma, lipschitz),
                 lambda.value_or(lambda_range(alpha).midpoint())};
  if (!(p.lambda >= 0.0) || p.lambda > alpha - 1.0) {
    throw ConfigError("energy parameter λ must satisfy 0 ≤ λ ≤ α − 1");
  }
  // The G energy is written with (1 - epsilon); the lower bound uses 4 gamma L.
  if (std::abs((1.0 - p.epsilon) - 4.0 * gamma * lipschitz) >
      1e-12 * (1.0 + 4.0 * gamma * lipschitz)) {
    throw NumericalError("1 - ε and 4γL disagree");
  }
  return p;
}

bool lambda_in_range(const EnergyParams& params) {
  const LambdaRange r = lambda_range(params.alpha);
  return params.lambda > r.lower && params.lambda < r.upper;
}

Point u_lambda_of(const EnergyParams& p, long k, const Point& z_k,
                  const Point& z_prev, const Point& v_k, const Point& z_ref) {
  const double kk = static_cast<double>(k);
  const double a = p.alpha;
  return 2.0 * p.lambda * (z_k - z_ref) + 2.0 * kk * (z_k - z_prev) +
         ((3.0 * a - 2.0) / (a - 1.0) * p.gamma * kk) * v_k;
}

double energy_E(const EnergyParams& p, long k, const Point& z_k,
                const Point& z_prev, const Point& v_k, const Point& z_ref) {
  const double kk = static_cast<double>(k);
  const double a = p.alpha;
  const double l = p.lambda;
  const double g = p.gamma;
  const Point offset = z_k - z_ref;
  const Point u = u_lambda_of(p, k, z_k, z_prev, v_k, z_ref);
  return 0.5 * u.squaredNorm() +
         2.0 * l * (a - 1.0 - l) * offset.squaredNorm() +
         2.0 * (a - 2.0) / (a - 1.0) * l * g * kk * offset.dot(v_k) +
         (a - 2.0) / (a - 1.0) * g * g * kk *
             ((3.0 * a - 2.0) / (2.0 * (a - 1.0)) * kk + a) *
             v_k.squaredNorm();
}

double energy_G(const EnergyParams& p, long k, const Point& z_k,
                const Point& z_prev, const Point& v_k, const Point& v_prev,
                const Point& f_z_k, const Point& f_w_prev, const Point& z_ref) {
  const double kk = static_cast<double>(k);
  const double a = p.alpha;
  const double g = p.gamma;
  const double root_k = std::sqrt(kk);
  return energy_E(p, k, z_k, z_prev, v_k, z_ref) -
         2.0 * (a - 2.0) / (a - 1.0) * g * kk * kk *
             (z_k - z_prev).dot(f_z_k - f_w_prev) +
         (a - 2.0) / (a - 1.0) * g * g * kk * root_k *
             ((1.0 - p.epsilon) * root_k + a) * (v_k - v_prev).squaredNorm();
}

double lower_bound_G(const EnergyParams& p, long k, const Point& z_k,
                     const Point& z_prev, const Point& v_k,
                     const Point& z_ref) {
  const double kk = static_cast<double>(k);
  const double a = p.alpha;
  const double l = p.lambda;
  const Point mixed = 4.0 * l * (z_k - z_ref) + 2.0 * kk * (z_k - z_prev) +
                      (2.0 * (3.0 * a - 2.0) / (a - 1.0) * p.gamma * kk) * v_k;
  return (a - 2.0) / (4.0 * (3.0 * a - 2.0)) * mixed.squaredNorm() +
         sq(a - 2.0) / (4.0 * (3.0 * a - 2.0) * (a - 1.0)) * kk * kk *
             (z_k - z_prev).squaredNorm() +
         2.0 * (a - 1.0) * l * (1.0 - 4.0 * l / (3.0 * a - 2.0)) *
             (z_k - z_ref).squaredNorm();
}

namespace {

struct RkCoefficients {
  double a, b, c;
};

RkCoefficients rk_coefficients(const EnergyParams& p, long k) {
  const EnergyConstants c = constants_of(p.alpha, p.lambda, k, p.epsilon);
  const double kk = static_cast<double>(k);
  const double root_k = std::sqrt(kk);
  const double w = rk_weight(p.alpha);
  return {w * (c.eta2 * kk + c.kappa0 * root_k),
          2.0 * p.gamma * (c.eta0 * kk + c.eta1),
          4.0 * w * p.gamma * p.gamma * (c.eta3 * kk + c.kappa1 * root_k)};
}

}  // namespace

double check_Rk(const EnergyParams& params, long k) {
  const RkCoefficients q = rk_coefficients(params, k);
  return q.b * q.b - q.a * q.c;
}

double rk_leading_coefficient(double alpha, double lambda) {
  const EnergyConstants c = constants_of(alpha, lambda, 1, 0.0);
  const double w = rk_weight(alpha);
  return c.eta0 * c.eta0 - w * w * c.eta2 * c.eta3;
}

double rk_value(const EnergyParams& params, long k, const Point& x,
                const Point& y) {
  const RkCoefficients q = rk_coefficients(params, k);
  return q.a * x.squaredNorm() + 2.0 * q.b * x.dot(y) + q.c * y.squaredNorm();
}

long descent_start(double alpha) {
  require_alpha(alpha);
  return std::max(2L, static_cast<long>(std::ceil(1.0 / (alpha - 2.0))));
}

std::optional<long> scan_k_lambda(const EnergyParams& params, long cap) {
  long last_bad = 0;
  for (long k = 1; k <= cap; ++k) {
    const RkCoefficients q = rk_coefficients(params, k);
    if (!(q.a < 0.0) || q.b * q.b - q.a * q.c > 0.0) last_bad = k;
  }
  if (last_bad == cap) return std::nullopt;
  return last_bad + 1;
}

std::optional<long> scan_k_epsilon(double alpha, double lambda, double epsilon,
                                   long cap) {
  long last_bad = 0;
  for (long k = 1; k <= cap; ++k) {
    const double kp1 = static_cast<double>(k) + 1.0;
    if (constants_of(alpha, lambda, k, epsilon).mu_k < 0.5 * epsilon * kp1 * kp1) {
      last_bad = k;
    }
  }
  if (last_bad == cap) return std::nullopt;
  return last_bad + 1;
}

std::function<void(const SolverState&)> snapshot_recorder(
    const VIProblem& problem, std::vector<FogdaViSnapshot>& out) {
  return [&problem, &out](const SolverState& s) {
    if (s.algorithm != Algorithm::kFOGDA_VI) {
      throw ConfigError("energy snapshots require an fOGDA-VI run");
    }
    out.push_back(FogdaViSnapshot{s.k, s.z_curr, s.z_prev, s.zeta, s.F_w_prev,
                                  problem.op(s.z_curr)});
  };
}

std::vector<EnergyRecord> energy_records(std::span<const FogdaViSnapshot> trace,
                                         const EnergyParams& params,
                                         const Point& z_ref) {
  std::vector<EnergyRecord> out;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const FogdaViSnapshot& cur = trace[i];
    const FogdaViSnapshot& prev = trace[i - 1];
    if (prev.k + 1 != cur.k) {
      throw ConfigError("energy_records: snapshots must be consecutive in k");
    }
    EnergyRecord r;
    r.k = cur.k;
    r.v_k = cur.v();
    r.v_prev = prev.v();
    r.u_lambda = u_lambda_of(params, cur.k, cur.z, cur.z_prev, r.v_k, z_ref);
    r.E = energy_E(params, cur.k, cur.z, cur.z_prev, r.v_k, z_ref);
    r.G = energy_G(params, cur.k, cur.z, cur.z_prev, r.v_k, r.v_prev, cur.f_z,
                   cur.f_w_prev, z_ref);
    r.lower_bound = lower_bound_G(params, cur.k, cur.z, cur.z_prev, r.v_k, z_ref);
    r.constants = constants_of(params.alpha, params.lambda, cur.k, params.epsilon);
    r.rk_certificate = check_Rk(params, cur.k);
    out.push_back(std::move(r));
  }
  return out;
}

DescentReport check_descent(std::span<const FogdaViSnapshot> trace,
                            const EnergyParams& p, const Point& z_ref,
                            long k_start) {
  if (trace.size() < 3) {
    throw ConfigError("check_descent: need at least three consecutive snapshots");
  }
  const std::vector<EnergyRecord> energies = energy_records(trace, p, z_ref);
  DescentReport report{{}, std::numeric_limits<double>::infinity(),
                       std::nullopt, true};
  const double a = p.alpha;
  const double l = p.lambda;
  const double g = p.gamma;
  // energies[j] describes trace[j + 1].
  for (std::size_t j = 0; j + 1 < energies.size(); ++j) {
    const EnergyRecord& now = energies[j];
    const EnergyRecord& next = energies[j + 1];
    const long k = now.k;
    if (k < k_start) continue;
    const FogdaViSnapshot& snap_next = trace[j + 2];
    const double kk = static_cast<double>(k);
    const double root_k = std::sqrt(kk);
    const EnergyConstants c = now.constants;
    const Point dz = snap_next.z - snap_next.z_prev;
    const Point offset = snap_next.z - z_ref;
    const Point& v_next = next.v_k;
    const Point& v_now = now.v_k;

    const double rhs =
        (a - 1.0) * (a - 2.0) / (p.epsilon * sq(kk + 1.0)) * l * l *
            offset.squaredNorm() -
        4.0 * (a - 2.0) * l * g * offset.dot(snap_next.zeta + snap_next.f_z) +
        4.0 * (c.eta0 * kk + c.eta1) * g * dz.dot(v_next) +
        (c.eta2 * kk + c.kappa0 * root_k) * dz.squaredNorm() +
        4.0 * (c.eta3 * kk + c.kappa1 * root_k) * g * g * v_next.squaredNorm() -
        (a - 2.0) / (a - 1.0) * c.mu_k * g * g * (v_next - v_now).squaredNorm();
    const double lhs = next.G - now.G;
    const double slack = rhs - lhs;
    const double tol = 1e-9 * (1.0 + std::abs(now.G) + std::abs(next.G));
    DescentRow row{k, lhs, rhs, slack, slack >= -tol,
                   rk_value(p, k, dz, v_next)};
    report.worst_slack = std::min(report.worst_slack, slack);
    report.all_hold = report.all_hold && row.holds;
    report.rows.push_back(row);
  }
  if (report.rows.empty()) {
    throw ConfigError("check_descent: trace does not reach k_start");
  }
  if (report.rows.back().holds) {
    std::size_t i = report.rows.size();
    while (i > 0 && report.rows[i - 1].holds) --i;
    report.first_valid_k = report.rows[i].k;
  }
  return report;
}

std::vector<LipschitzChainRow> check_lipschitz_chain(
    std::span<const FogdaViSnapshot> trace, const EnergyParams& p) {
  std::vector<LipschitzChainRow> rows;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const FogdaViSnapshot& prev = trace[i - 1];
    const FogdaViSnapshot& cur = trace[i];
    const Point v_next = cur.v();
    const double lhs = (cur.zeta + cur.f_z - v_next).norm();
    const double rhs = p.gamma * p.lipschitz * (v_next - prev.v()).norm();
    rows.push_back({prev.k, lhs, rhs, rhs + 1e-10 - lhs});
  }
  return rows;
}

void SummabilityAccumulator::observe(const SolverState& state) {
  observe(state.k, state.z_curr, state.z_prev, state.F_w_prev + state.zeta);
}

void SummabilityAccumulator::observe(long k, const Point& z,
                                     const Point& z_prev, const Point& v) {
  const double kk = static_cast<double>(k);
  if (prev_v_) {
    // Summands are indexed by the previous counter j = k - 1.
    const double km1 = kk - 1.0;
    sum_dv_ += km1 * km1 * (v - *prev_v_).squaredNorm();
    sum_dz_ += km1 * (z - z_prev).squaredNorm();
    sum_v_ += km1 * v.squaredNorm();
  }
  prev_v_ = v;
  entries_.push_back({k, sum_dv_, sum_dz_, sum_v_, kk * (z - z_prev).norm()});
}

SummabilityAccumulator::Report SummabilityAccumulator::report() const {
  Report r;
  if (entries_.empty()) return r;
  const Entry& last = entries_.back();
  r.last_k = last.k;
  r.sum_dv = last.sum_dv;
  r.sum_dz = last.sum_dz;
  r.sum_v = last.sum_v;
  const long half_k = last.k / 2;
  const Entry* half = &entries_.front();
  for (const Entry& e : entries_) {
    if (e.k <= half_k) half = &e;
  }
  auto growth = [](double total, double at_half) {
    return total > 0.0 ? (total - at_half) / total : 0.0;
  };
  r.growth_dv = growth(last.sum_dv, half->sum_dv);
  r.growth_dz = growth(last.sum_dz, half->sum_dz);
  r.growth_v = growth(last.sum_v, half->sum_v);
  const long decade_start = last.k / 10;
  for (const Entry& e : entries_) {
    r.max_k_step = std::max(r.max_k_step, e.k_step);
    if (e.k >= decade_start) {
      r.max_k_step_last_decade = std::max(r.max_k_step_last_decade, e.k_step);
    }
  }
  return r;
}

SummabilityAccumulator::Report summability_report(
    std::span<const FogdaViSnapshot> trace) {
  SummabilityAccumulator acc;
  for (const FogdaViSnapshot& s : trace) acc.observe(s.k, s.z, s.z_prev, s.v());
  return acc.report();
}

double relative_variation(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  return scale > 0.0 ? (*hi - *lo) / scale : 0.0;
}

double max_step_change(std::span<const double> values) {
  double worst = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double base = std::abs(values[i - 1]);
    const double diff = std::abs(values[i] - values[i - 1]);
    if (diff == 0.0) continue;
    worst = std::max(worst, base > 0.0
                                ? diff / base
                                : std::numeric_limits<double>::infinity());
  }
  return worst;
}

LyapunovReport analyze(std::span<const FogdaViSnapshot> trace,
                       const EnergyParams& params, const Point& z_ref) {
  LyapunovReport rep;
  rep.params = params;
  rep.range = lambda_range(params.alpha);
  rep.k0 = descent_start(params.alpha);
  rep.k_lambda = scan_k_lambda(params);
  rep.k_epsilon =
      scan_k_epsilon(params.alpha, params.lambda, params.epsilon);
  rep.leading_coefficient = rk_leading_coefficient(params.alpha, params.lambda);
  rep.energies = energy_records(trace, params, z_ref);
  rep.descent = check_descent(trace, params, z_ref, rep.k0);
  rep.lipschitz_chain = check_lipschitz_chain(trace, params);
  rep.summability = summability_report(trace);

  rep.lower_bound_holds = true;
  rep.E_nonnegative = true;
  for (const EnergyRecord& r : rep.energies) {
    const double tol = 1e-9 * (1.0 + std::abs(r.G));
    if (r.G < r.lower_bound - tol || r.lower_bound < -tol) {
      rep.lower_bound_holds = false;
    }
    if (r.E < -1e-9 * (1.0 + std::abs(r.E))) rep.E_nonnegative = false;
  }

  rep.rk_certified = false;
  if (rep.k_lambda) {
    rep.rk_certified = true;
    const long kl = *rep.k_lambda;
    for (long k : {kl, 2 * kl, 10 * kl, kThresholdScanCap}) {
      if (check_Rk(params, k) > 0.0) rep.rk_certified = false;
    }
  }

  rep.lipschitz_chain_holds = std::all_of(
      rep.lipschitz_chain.begin(), rep.lipschitz_chain.end(),
      [](const LipschitzChainRow& r) { return r.slack >= 0.0; });

  std::vector<double> e_tail, g_tail;
  if (!rep.energies.empty()) {
    const long last_k = rep.energies.back().k;
    const long from = last_k - last_k / 10;
    for (const EnergyRecord& r : rep.energies) {
      if (r.k >= from) {
        e_tail.push_back(r.E);
        g_tail.push_back(r.G);
      }
    }
  }
  rep.E_final_variation = relative_variation(e_tail);
  rep.G_final_variation = relative_variation(g_tail);
  rep.E_final_step_change = max_step_change(e_tail);
  rep.G_final_step_change = max_step_change(g_tail);
  return rep;
}

}  // namespace fogda
