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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "fogda/rng.hpp"
#include "fogda/sets.hpp"
#include "test_support.hpp"

using namespace fogda;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("sets") {

TEST_CASE("whole space projection is the identity") {
  const FeasibleSet c = FeasibleSet::whole_space(3);
  const Point v{{1.5, -2.0, 7.0}};
  CHECK(project(c, v) == v);
  CHECK(c.contains(v));
  CHECK_FALSE(c.bounded());
}

TEST_CASE("simplex projection hand values") {
  CHECK(project_simplex(Point{{0.2, 0.3, 0.5}}).isApprox(Point{{0.2, 0.3, 0.5}}));
  CHECK(project_simplex(Point{{1.0, 1.0}}).isApprox(Point{{0.5, 0.5}}));
  CHECK(project_simplex(Point{{2.0, 0.0}}).isApprox(Point{{1.0, 0.0}}));
  const FeasibleSet c = FeasibleSet::simplex(2);
  CHECK(project(c, Point{{0.5, 0.5}}).isApprox(Point{{0.5, 0.5}}));
  CHECK(project(c, Point{{2.0, 0.0}}).isApprox(Point{{1.0, 0.0}}));
}

TEST_CASE("simplex projection agrees with a grid search") {
  SplitMix64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    Point v(d);
    for (int i = 0; i < d; ++i) v(i) = 3.0 * rng.normal();
    const Point grid = testing::simplex_grid_nearest(v, 400);
    CHECK((project_simplex(v) - grid).norm() < 2.0 / 400);
  }
  CHECK((testing::simplex_grid_nearest(Point{{2.0, 0.0}}, 1000) -
         Point{{1.0, 0.0}})
            .norm() == 0.0);
}

TEST_CASE("simplex projection agrees with support enumeration") {
  SplitMix64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const int d = 1 + t % 8;
    Point v(d);
    for (int i = 0; i < d; ++i) v(i) = 2.0 * rng.normal();
    const Point p = project_simplex(v);
    CHECK((p - testing::simplex_projection_oracle(v)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    CHECK(p.minCoeff() >= 0.0);
  }
}

TEST_CASE("simplex projection handles ties and large offsets") {
  CHECK(project_simplex(Point{{5.0, 5.0, 5.0}}).isApprox(Point::Constant(3, 1.0 / 3)));
  const Point shifted = project_simplex(Point{{1e6 + 0.3, 1e6 + 0.1}});
  CHECK(shifted(0) == doctest::Approx(0.6));
  CHECK(shifted(1) == doctest::Approx(0.4));
  CHECK_THROWS_AS(project_simplex(Point(0)), DimensionError);
}

TEST_CASE("box and ball projections") {
  const FeasibleSet box =
      FeasibleSet::box(Point{{0.0, -1.0}}, Point{{kInf, 1.0}});
  CHECK(project(box, Point{{-3.0, 4.0}}).isApprox(Point{{0.0, 1.0}}));
  CHECK(project(box, Point{{2.0, 0.5}}).isApprox(Point{{2.0, 0.5}}));
  CHECK_FALSE(box.bounded());
  CHECK_THROWS_AS(FeasibleSet::box(Point{{1.0}}, Point{{0.0}}), ConfigError);

  const FeasibleSet ball = FeasibleSet::ball(Point{{1.0, 1.0}}, 2.0);
  CHECK(project(ball, Point{{1.0, 5.0}}).isApprox(Point{{1.0, 3.0}}));
  CHECK(project(ball, Point{{1.5, 1.0}}).isApprox(Point{{1.5, 1.0}}));
  CHECK(ball.bounded());
}

TEST_CASE("product projection works block by block") {
  const FeasibleSet c = FeasibleSet::product(
      {FeasibleSet::simplex(2), FeasibleSet::simplex(3)});
  CHECK(c.dim() == 5);
  const Point v{{2.0, 0.0, 1.0, 1.0, 1.0}};
  Point expected(5);
  expected << 1.0, 0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3;
  CHECK(project(c, v).isApprox(expected));
  CHECK(c.contains(expected));
  CHECK_FALSE(c.contains(v));
  CHECK_THROWS_AS(project(c, Point(4)), DimensionError);
}

TEST_CASE("projection is idempotent and firmly nonexpansive") {
  const FeasibleSet sets[] = {
      FeasibleSet::simplex(4),
      FeasibleSet::ball(Point::Zero(4), 0.7),
      FeasibleSet::box(Point::Constant(4, -0.5), Point::Constant(4, 0.25)),
      FeasibleSet::product({FeasibleSet::simplex(2), FeasibleSet::simplex(2)})};
  SplitMix64 rng(99);
  for (const FeasibleSet& c : sets) {
    for (int t = 0; t < 50; ++t) {
      Point u(4), v(4);
      for (int i = 0; i < 4; ++i) {
        u(i) = 2.0 * rng.normal();
        v(i) = 2.0 * rng.normal();
      }
      const Point pu = project(c, u), pv = project(c, v);
      CHECK(c.contains(pu));
      CHECK((project(c, pu) - pu).norm() < 1e-12);
      // ||Pu - Pv||^2 <= <Pu - Pv, u - v>
      CHECK((pu - pv).squaredNorm() <= (pu - pv).dot(u - v) + 1e-12);
    }
  }
}

TEST_CASE("normal cone violation") {
  const FeasibleSet simplex = FeasibleSet::simplex(2);
  CHECK(normal_cone_violation(simplex, Point{{0.3, 0.7}}, Point::Zero(2), 100,
                              1) == 0.0);
  CHECK(normal_cone_violation(simplex, Point{{1.0, 0.0}}, Point{{1.0, 0.0}},
                              100, 1) == 0.0);
  // (0, 1) is not normal at (1, 0): the vertex (0, 1) gives <v - z, zeta> = 1.
  CHECK(normal_cone_violation(simplex, Point{{1.0, 0.0}}, Point{{0.0, 1.0}},
                              1000, 1) > 0.5);

  const FeasibleSet ray = FeasibleSet::box(Point{{0.0}}, Point{{kInf}});
  CHECK(normal_cone_violation(ray, Point{{0.0}}, Point{{-1.0}}, 100, 2) <= 0.0);
  CHECK(normal_cone_violation(ray, Point{{0.0}}, Point{{1.0}}, 100, 2) > 0.0);
  CHECK_THROWS_AS(
      normal_cone_violation(simplex, Point{{2.0, 0.0}}, Point::Zero(2), 10, 1),
      std::domain_error);
}

TEST_CASE("normal cone violation is zero for the residual of a projection") {
  const FeasibleSet c = FeasibleSet::product(
      {FeasibleSet::simplex(3), FeasibleSet::simplex(2)});
  SplitMix64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Point v(5);
    for (int i = 0; i < 5; ++i) v(i) = rng.normal();
    const Point z = project(c, v);
    const Point zeta = v - z;
    CHECK(normal_cone_violation(c, z, zeta, 1000, t) <=
          1e-12 * (1.0 + zeta.norm()));
  }
}

TEST_CASE("samples lie in the set") {
  const FeasibleSet c = FeasibleSet::product(
      {FeasibleSet::simplex(3), FeasibleSet::ball(Point::Zero(2), 1.0),
       FeasibleSet::box(Point{{0.0}}, Point{{kInf}})});
  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    CHECK(c.contains(c.sample(Point::Zero(6), rng)));
  }
}

TEST_CASE("linear maximization hand values") {
  const LinearMax s = linear_maximize(FeasibleSet::simplex(3), Point{{1.0, 5.0, 2.0}});
  CHECK(s.value == 5.0);
  CHECK(s.argmax.isApprox(Point{{0.0, 1.0, 0.0}}));

  const LinearMax b =
      linear_maximize(FeasibleSet::ball(Point::Zero(2), 1.0), Point{{3.0, 4.0}});
  CHECK(b.value == doctest::Approx(5.0));
  CHECK(b.argmax.isApprox(Point{{0.6, 0.8}}));

  const FeasibleSet prod = FeasibleSet::product(
      {FeasibleSet::simplex(2), FeasibleSet::simplex(2)});
  const LinearMax p = linear_maximize(prod, Point{{1.0, 0.0, 0.0, 2.0}});
  CHECK(p.value == 3.0);
  CHECK(p.argmax.isApprox(Point{{1.0, 0.0, 0.0, 1.0}}));
  // Vertex enumeration of the product.
  double best = -kInf;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Point v = Point::Zero(4);
      v(i) = 1.0;
      v(2 + j) = 1.0;
      best = std::max(best, v.dot(Point{{1.0, 0.0, 0.0, 2.0}}));
    }
  }
  CHECK(p.value == best);

  CHECK_THROWS_AS(linear_maximize(FeasibleSet::whole_space(2), Point{{1.0, 0.0}}),
                  ConfigError);
}

}  // TEST_SUITE
