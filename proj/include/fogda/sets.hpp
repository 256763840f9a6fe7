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

// Closed convex feasible sets: projection, membership, linear maximization
// and sampling, plus the normal-cone test built on top of them.

#ifndef FOGDA_SETS_HPP_
#define FOGDA_SETS_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fogda/core.hpp"
#include "fogda/rng.hpp"

namespace fogda {

// Absolute per-constraint slack accepted by membership tests.
inline constexpr double kMembershipTolerance = 1e-9;

enum class SetKind { kWholeSpace, kBox, kBall, kSimplex, kProduct, kCustom };

std::string to_string(SetKind kind);

struct LinearMax {
  double value;
  Point argmax;
};

// Interface for a nonempty closed convex subset of R^d. Implementations are
// immutable; FeasibleSet shares them by pointer.
class ConvexSet {
 public:
  virtual ~ConvexSet() = default;

  virtual SetKind kind() const = 0;
  virtual Eigen::Index dim() const = 0;
  virtual bool bounded() const = 0;
  virtual Point project(const Point& v) const = 0;
  virtual bool contains(const Point& z, double tol) const = 0;
  // Only called on bounded sets.
  virtual LinearMax linear_maximize(const Point& c) const = 0;
  // Uniform draw from the set, or, along unbounded directions, from the
  // intersection of the set with the unit box around `center`.
  virtual Point sample(const Point& center, SplitMix64& rng) const = 0;
};

class FeasibleSet {
 public:
  explicit FeasibleSet(std::shared_ptr<const ConvexSet> impl);

  static FeasibleSet whole_space(Eigen::Index dim);
  // Bounds may be infinite; lower <= upper componentwise.
  static FeasibleSet box(Point lower, Point upper);
  static FeasibleSet ball(Point center, double radius);
  static FeasibleSet simplex(Eigen::Index dim);
  // Cartesian product; block i occupies the next blocks[i].dim() coordinates.
  static FeasibleSet product(std::vector<FeasibleSet> blocks);

  SetKind kind() const { return impl_->kind(); }
  Eigen::Index dim() const { return impl_->dim(); }
  bool bounded() const { return impl_->bounded(); }
  bool contains(const Point& z, double tol = kMembershipTolerance) const;
  Point project(const Point& v) const;
  LinearMax linear_maximize(const Point& c) const;
  Point sample(const Point& center, SplitMix64& rng) const;

  const ConvexSet& impl() const { return *impl_; }

 private:
  void check_dim(const Point& v, const char* what) const;

  std::shared_ptr<const ConvexSet> impl_;
};

Point project(const FeasibleSet& set, const Point& v);

// Euclidean projection onto the standard simplex by sort-and-threshold.
// Ties in the sort are broken by original index.
Point project_simplex(const Point& v);

// max of <v - z, zeta> over v = z and `n_samples` uniform draws v in C. A value at or
// below a small tolerance certifies zeta in N_C(z) empirically. Throws
// std::domain_error when z is not in C (the normal cone is empty there).
double normal_cone_violation(const FeasibleSet& set, const Point& z,
                             const Point& zeta, int n_samples,
                             std::uint64_t seed);

// Support function of a bounded set: max_{w in C} <c, w> and a maximizer.
LinearMax linear_maximize(const FeasibleSet& set, const Point& c);

}  // namespace fogda

#endif  // FOGDA_SETS_HPP_
