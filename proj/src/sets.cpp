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

#include "fogda/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace fogda {
namespace {

class WholeSpace final : public ConvexSet {
 public:
  explicit WholeSpace(Eigen::Index dim) : dim_(dim) {}

  SetKind kind() const override { return SetKind::kWholeSpace; }
  Eigen::Index dim() const override { return dim_; }
  bool bounded() const override { return false; }
  Point project(const Point& v) const override { return v; }
  bool contains(const Point& z, double) const override {
    return all_finite(z);
  }
  LinearMax linear_maximize(const Point&) const override {
    throw ConfigError("linear_maximize: whole space is unbounded");
  }
  Point sample(const Point& center, SplitMix64& rng) const override {
    Point out(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
      out[i] = center[i] + 2.0 * rng.uniform() - 1.0;
    }
    return out;
  }

 private:
  Eigen::Index dim_;
};

class Box final : public ConvexSet {
 public:
  Box(Point lower, Point upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) {
      throw DimensionError("box: bound dimensions differ");
    }
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
      if (std::isnan(lower_[i]) || std::isnan(upper_[i]) ||
          lower_[i] > upper_[i] || lower_[i] == kInf || upper_[i] == -kInf) {
        throw ConfigError("box: invalid bounds at coordinate " +
                          std::to_string(i));
      }
    }
  }

  SetKind kind() const override { return SetKind::kBox; }
  Eigen::Index dim() const override { return lower_.size(); }
  bool bounded() const override {
    return lower_.allFinite() && upper_.allFinite();
  }
  Point project(const Point& v) const override {
    return v.cwiseMax(lower_).cwiseMin(upper_);
  }
  bool contains(const Point& z, double tol) const override {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      if (!std::isfinite(z[i]) || z[i] < lower_[i] - tol ||
          z[i] > upper_[i] + tol) {
        return false;
      }
    }
    return true;
  }
  LinearMax linear_maximize(const Point& c) const override {
    if (!bounded()) throw ConfigError("linear_maximize: box is unbounded");
    Point arg(c.size());
    double value = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      arg[i] = c[i] >= 0.0 ? upper_[i] : lower_[i];
      value += c[i] * arg[i];
    }
    return {value, std::move(arg)};
  }
  Point sample(const Point& center, SplitMix64& rng) const override {
    Point out(lower_.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      const double lo = std::isfinite(lower_[i])
                            ? lower_[i]
                            : std::min(center[i], upper_[i]) - 1.0;
      const double hi = std::isfinite(upper_[i])
                            ? upper_[i]
                            : std::max(center[i], lower_[i]) + 1.0;
      out[i] = lo + (hi - lo) * rng.uniform();
    }
    return out;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  Point lower_;
  Point upper_;
};

class Ball final : public ConvexSet {
 public:
  Ball(Point center, double radius)
      : center_(std::move(center)), radius_(radius) {
    if (!(radius_ >= 0.0) || !std::isfinite(radius_) || !all_finite(center_)) {
      throw ConfigError("ball: radius must be finite and nonnegative");
    }
  }

  SetKind kind() const override { return SetKind::kBall; }
  Eigen::Index dim() const override { return center_.size(); }
  bool bounded() const override { return true; }
  Point project(const Point& v) const override {
    const Point offset = v - center_;
    const double dist = offset.norm();
    if (dist <= radius_) return v;
    return center_ + (radius_ / dist) * offset;
  }
  bool contains(const Point& z, double tol) const override {
    return all_finite(z) && (z - center_).norm() <= radius_ + tol;
  }
  LinearMax linear_maximize(const Point& c) const override {
    const double norm = c.norm();
    Point arg = norm > 0.0 ? Point(center_ + (radius_ / norm) * c) : center_;
    return {c.dot(center_) + radius_ * norm, std::move(arg)};
  }
  Point sample(const Point&, SplitMix64& rng) const override {
    const Eigen::Index d = center_.size();
    Point dir(d);
    double norm = 0.0;
    while (norm == 0.0) {
      for (Eigen::Index i = 0; i < d; ++i) dir[i] = rng.normal();
      norm = dir.norm();
    }
    const double r =
        radius_ * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
    return center_ + (r / norm) * dir;
  }

 private:
  Point center_;
  double radius_;
};

class Simplex final : public ConvexSet {
 public:
  explicit Simplex(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) throw DimensionError("simplex: dimension must be >= 1");
  }

  SetKind kind() const override { return SetKind::kSimplex; }
  Eigen::Index dim() const override { return dim_; }
  bool bounded() const override { return true; }
  Point project(const Point& v) const override { return project_simplex(v); }
  bool contains(const Point& z, double tol) const override {
    if (!all_finite(z)) return false;
    if (z.minCoeff() < -tol) return false;
    return std::abs(z.sum() - 1.0) <= tol;
  }
  LinearMax linear_maximize(const Point& c) const override {
    Eigen::Index best = 0;
    const double value = c.maxCoeff(&best);
    Point arg = Point::Zero(dim_);
    arg[best] = 1.0;
    return {value, std::move(arg)};
  }
  Point sample(const Point&, SplitMix64& rng) const override {
    // Normalized exponential spacings are uniform on the simplex.
    Point out(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) out[i] = rng.exponential();
    return out / out.sum();
  }

 private:
  Eigen::Index dim_;
};

class Product final : public ConvexSet {
 public:
  explicit Product(std::vector<FeasibleSet> blocks)
      : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw ConfigError("product: no blocks");
    dim_ = 0;
    for (const auto& b : blocks_) dim_ += b.dim();
  }

  SetKind kind() const override { return SetKind::kProduct; }
  Eigen::Index dim() const override { return dim_; }
  bool bounded() const override {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const FeasibleSet& b) { return b.bounded(); });
  }
  Point project(const Point& v) const override {
    Point out(dim_);
    Eigen::Index offset = 0;
    for (const auto& b : blocks_) {
      out.segment(offset, b.dim()) = b.project(v.segment(offset, b.dim()));
      offset += b.dim();
    }
    return out;
  }
  bool contains(const Point& z, double tol) const override {
    Eigen::Index offset = 0;
    for (const auto& b : blocks_) {
      if (!b.contains(z.segment(offset, b.dim()), tol)) return false;
      offset += b.dim();
    }
    return true;
  }
  LinearMax linear_maximize(const Point& c) const override {
    LinearMax out{0.0, Point(dim_)};
    Eigen::Index offset = 0;
    for (const auto& b : blocks_) {
      LinearMax part = b.linear_maximize(c.segment(offset, b.dim()));
      out.value += part.value;
      out.argmax.segment(offset, b.dim()) = part.argmax;
      offset += b.dim();
    }
    return out;
  }
  Point sample(const Point& center, SplitMix64& rng) const override {
    Point out(dim_);
    Eigen::Index offset = 0;
    for (const auto& b : blocks_) {
      out.segment(offset, b.dim()) =
          b.sample(center.segment(offset, b.dim()), rng);
      offset += b.dim();
    }
    return out;
  }

 private:
  std::vector<FeasibleSet> blocks_;
  Eigen::Index dim_;
};

}  // namespace

std::string to_string(SetKind kind) {
  switch (kind) {
    case SetKind::kWholeSpace: return "whole-space";
    case SetKind::kBox: return "box";
    case SetKind::kBall: return "ball";
    case SetKind::kSimplex: return "simplex";
    case SetKind::kProduct: return "product";
    case SetKind::kCustom: return "custom";
  }
  return "unknown";
}

FeasibleSet::FeasibleSet(std::shared_ptr<const ConvexSet> impl)
    : impl_(std::move(impl)) {
  if (!impl_) throw ConfigError("FeasibleSet: null implementation");
}

FeasibleSet FeasibleSet::whole_space(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("whole space: dimension must be >= 1");
  return FeasibleSet(std::make_shared<WholeSpace>(dim));
}

FeasibleSet FeasibleSet::box(Point lower, Point upper) {
  return FeasibleSet(std::make_shared<Box>(std::move(lower), std::move(upper)));
}

FeasibleSet FeasibleSet::ball(Point center, double radius) {
  return FeasibleSet(std::make_shared<Ball>(std::move(center), radius));
}

FeasibleSet FeasibleSet::simplex(Eigen::Index dim) {
  return FeasibleSet(std::make_shared<Simplex>(dim));
}

FeasibleSet FeasibleSet::product(std::vector<FeasibleSet> blocks) {
  return FeasibleSet(std::make_shared<Product>(std::move(blocks)));
}

void FeasibleSet::check_dim(const Point& v, const char* what) const {
  if (v.size() != dim()) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(dim()) + ", got " +
                         std::to_string(v.size()));
  }
}

bool FeasibleSet::contains(const Point& z, double tol) const {
  check_dim(z, "contains");
  return impl_->contains(z, tol);
}

Point FeasibleSet::project(const Point& v) const {
  check_dim(v, "project");
  return impl_->project(v);
}

LinearMax FeasibleSet::linear_maximize(const Point& c) const {
  check_dim(c, "linear_maximize");
  if (!bounded()) {
    throw ConfigError("linear_maximize: set (" + to_string(kind()) +
                      ") is unbounded");
  }
  return impl_->linear_maximize(c);
}

Point FeasibleSet::sample(const Point& center, SplitMix64& rng) const {
  check_dim(center, "sample");
  return impl_->sample(center, rng);
}

Point project(const FeasibleSet& set, const Point& v) { return set.project(v); }

Point project_simplex(const Point& v) {
  const Eigen::Index d = v.size();
  if (d == 0) throw DimensionError("project_simplex: empty vector");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&v](Eigen::Index a, Eigen::Index b) { return v[a] > v[b]; });

  // Largest rho with u_rho - (S_rho - 1) / rho > 0; rho = 1 always qualifies.
  double running = 0.0;
  double theta = 0.0;
  for (Eigen::Index rho = 1; rho <= d; ++rho) {
    const double u = v[order[static_cast<std::size_t>(rho - 1)]];
    running += u;
    const double candidate = (running - 1.0) / static_cast<double>(rho);
    if (u - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0).matrix();
}

double normal_cone_violation(const FeasibleSet& set, const Point& z,
                             const Point& zeta, int n_samples,
                             std::uint64_t seed) {
  if (zeta.size() != set.dim()) {
    throw DimensionError("normal_cone_violation: zeta has wrong dimension");
  }
  if (!set.contains(z)) {
    throw std::domain_error(
        "normal_cone_violation: z is not in C, its normal cone is empty");
  }
  if (n_samples < 1) throw ConfigError("normal_cone_violation: n_samples < 1");
  SplitMix64 rng(seed);
  // z itself is a member of C, so the result is never negative.
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const Point v = set.sample(z, rng);
    worst = std::max(worst, (v - z).dot(zeta));
  }
  return worst;
}

LinearMax linear_maximize(const FeasibleSet& set, const Point& c) {
  return set.linear_maximize(c);
}

}  // namespace fogda
