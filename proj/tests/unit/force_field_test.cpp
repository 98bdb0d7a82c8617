/*
 * pmseg: physically modeled active contours
 *
 * Copyright 2026 The pmseg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pmseg/error.hpp>
#include <pmseg/force_field.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace pmseg {
namespace {

ForceFieldParams params(TransferKind kind, double k, double p, double h)
{
  ForceFieldParams fp;
  fp.kind = kind;
  fp.k = k;
  fp.p = p;
  fp.h = h;
  return fp;
}

// Independent double sum over every source/sample pair.
Grid<double> oracle_potential(const Grid<double> &edges, const ForceFieldParams &fp)
{
  Grid<double> out(edges.width(), edges.height());
  for (int y = 0; y < edges.height(); ++y) {
    for (int x = 0; x < edges.width(); ++x) {
      double sum = 0.0;
      for (int j = 0; j < edges.height(); ++j) {
        for (int i = 0; i < edges.width(); ++i) {
          if (edges(i, j) == 0.0) continue;
          const double r = std::sqrt(double((x - i) * (x - i) + (y - j) * (y - j)) + fp.h * fp.h);
          sum += edges(i, j) * transfer(r, fp);
        }
      }
      out(x, y) = sum;
    }
  }
  return out;
}

double max_relative_error(const Grid<double> &a, const Grid<double> &b)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(b[i]), 1e-300);
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

TEST(Transfer, UnitCases)
{
  EXPECT_DOUBLE_EQ(transfer(1.0, params(TransferKind::inverse_power, 1, 1, 1)), 1.0);
  const ForceFieldParams ex = params(TransferKind::exponential, 1, 1, 1);
  EXPECT_NEAR(transfer(1e-12, ex), 1.0, 1e-11);
  EXPECT_NEAR(transfer(std::log(2.0), ex), 0.5, 1e-15);
  const ForceFieldParams at = params(TransferKind::arctan, 1, 1, 1);
  EXPECT_NEAR(transfer(1.0, at), std::numbers::pi / 4.0, 1e-15);
  EXPECT_LT(transfer(1e9, at), 1e-8);
  EXPECT_THROW(transfer(0.0, ex), ValidationError);
}

TEST(Transfer, StrictlyDecreasing)
{
  for (TransferKind kind : {TransferKind::inverse_power, TransferKind::exponential,
                            TransferKind::arctan}) {
    const ForceFieldParams fp = params(kind, 0.7, 1.3, 1.0);
    double prev = transfer(1.0, fp);
    for (double r = 1.05; r < 20.0; r += 0.05) {
      const double v = transfer(r, fp);
      EXPECT_LT(v, prev) << to_string(kind) << " r=" << r;
      prev = v;
    }
  }
}

TEST(ForceFieldParams, Validation)
{
  ForceFieldParams fp;
  EXPECT_NO_THROW(fp.validate());
  fp.h = 3.0;
  EXPECT_THROW(fp.validate(), ValidationError);
  fp.h = 0.0;
  EXPECT_THROW(fp.validate(), ValidationError);
  fp = {};
  fp.k = -1.0;
  EXPECT_THROW(fp.validate(), ValidationError);
  fp = {};
  fp.r_max = 0.5;
  EXPECT_THROW(fp.validate(), ValidationError);
}

TEST(ComputePotential, ZeroEdgesGiveZero)
{
  const PotentialField pot = compute_potential(EdgeMap(Grid<double>(12, 9)), ForceFieldParams{});
  for (double v : pot.grid().values()) EXPECT_EQ(v, 0.0);
}

TEST(ComputePotential, SingleChargeValues)
{
  Grid<double> g(16, 16);
  g(5, 6) = 1.0;
  const ForceFieldParams fp = params(TransferKind::inverse_power, 1, 1, 1);
  const PotentialField pot = compute_potential(EdgeMap(g), fp);
  EXPECT_DOUBLE_EQ(pot(5, 6), 1.0);
  EXPECT_NEAR(pot(8, 10), 1.0 / std::sqrt(26.0), 1e-15);
}

TEST(ComputePotential, MatchesDoubleSumOracle)
{
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid<double> g(32, 32);
  for (double &v : g.values()) v = u(rng) < 0.3 ? u(rng) : 0.0;
  for (TransferKind kind : {TransferKind::inverse_power, TransferKind::exponential,
                            TransferKind::arctan}) {
    ForceFieldParams fp = params(kind, 0.8, 0.9, 1.3);
    fp.r_max = ForceFieldParams::untruncated;
    const Grid<double> oracle = oracle_potential(g, fp);
    EXPECT_LT(max_relative_error(compute_potential(EdgeMap(g), fp).grid(), oracle), 1e-9);
    EXPECT_LT(max_relative_error(compute_potential_direct(EdgeMap(g), fp).grid(), oracle), 1e-9);
  }
}

TEST(ComputePotential, ConvolutionMatchesDirectWithTruncation)
{
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Grid<double> g(40, 30);
  for (double &v : g.values()) v = u(rng) < 0.2 ? u(rng) : 0.0;
  ForceFieldParams fp = params(TransferKind::exponential, 0.3, 1.0, 1.0);
  fp.r_max = 7.5;
  EXPECT_LT(max_relative_error(compute_potential(EdgeMap(g), fp).grid(),
                               compute_potential_direct(EdgeMap(g), fp).grid()),
            1e-9);
}

TEST(ComputePotential, RingRidgeOnPixelGrid)
{
  // Ridge of the row profile through the center, on both sides.
  const Grid<double> ring = test::ring_edges(64, 64, {32, 32}, 10.0);
  std::vector<int> errors;
  for (double h : {1.0, 2.0, 3.0, 4.0}) {
    ForceFieldParams fp = params(TransferKind::inverse_power, 1, 0.5, 1.0);
    fp.h = h;
    fp.r_max = ForceFieldParams::untruncated;
    int worst = 0;
    for (int side : {-1, 1}) {
      int best_r = 0;
      double best = -1.0;
      for (int r = 1; r < 30; ++r) {
        const double v = potential_at(EdgeMap(ring), fp, {32.0 + side * r, 32.0});
        if (v > best) {
          best = v;
          best_r = r;
        }
      }
      worst = std::max(worst, std::abs(best_r - 10));
    }
    errors.push_back(worst);
  }
  EXPECT_LE(errors[0], 1);
  EXPECT_LE(errors[1], 1);
  EXPECT_GT(errors[2], errors[1]);
  EXPECT_GT(errors[3], errors[2]);
}

TEST(ComputePotential, MonotoneAlongRayFromCharge)
{
  Grid<double> g(41, 41);
  g(20, 20) = 1.0;
  ForceFieldParams fp;
  fp.r_max = ForceFieldParams::untruncated;
  const PotentialField pot = compute_potential(EdgeMap(g), fp);
  for (int x = 21; x < 41; ++x) EXPECT_LT(pot(x, 20), pot(x - 1, 20));
  for (int d = 1; d < 20; ++d) EXPECT_LT(pot(20 + d, 20 + d), pot(19 + d, 19 + d));
}

TEST(ComputePotential, TranslationEquivariant)
{
  Grid<double> a(30, 30), b(30, 30);
  a(8, 9) = 1.0;
  a(12, 7) = 0.5;
  a(10, 14) = 0.25;
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 30; ++x) {
      if (a(x, y) != 0.0) b(x + 3, y + 2) = a(x, y);
    }
  }
  const ForceFieldParams fp = params(TransferKind::exponential, 0.5, 1.0, 1.0);
  const PotentialField pa = compute_potential(EdgeMap(a), fp);
  const PotentialField pb = compute_potential(EdgeMap(b), fp);
  for (int y = 0; y < 28; ++y) {
    for (int x = 0; x < 27; ++x) EXPECT_NEAR(pb(x + 3, y + 2), pa(x, y), 1e-15);
  }
}

TEST(ComputePotential, LargerHFlattensNoise)
{
  // Strong edge (1.0) at the origin, weak noise pixel (0.1) 3 px away. The
  // share of the noise pixel's own potential shrinks as h grows.
  double prev = std::numeric_limits<double>::infinity();
  for (double h : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const ForceFieldParams fp = params(TransferKind::exponential, 1, 1, h);
    const double self = 0.1 * transfer(h, fp);
    const double strong = 1.0 * transfer(std::sqrt(9.0 + h * h), fp);
    const double ratio = self / strong;
    EXPECT_LT(ratio, prev) << "h=" << h;
    prev = ratio;
  }
}

TEST(ComputeForce, ConstantPotentialGivesZero)
{
  const VectorField f = compute_force(PotentialField(Grid<double>(7, 7, 3.0)));
  for (std::size_t i = 0; i < f.fx.size(); ++i) {
    EXPECT_EQ(f.fx[i], 0.0);
    EXPECT_EQ(f.fy[i], 0.0);
  }
}

TEST(ComputeForce, PointsTowardChargeAndMatchesAnalyticDerivative)
{
  const int n = 41, c = 20;
  Grid<double> g(n, n);
  g(c, c) = 1.0;
  ForceFieldParams fp = params(TransferKind::inverse_power, 1, 1, 1);
  fp.r_max = ForceFieldParams::untruncated;
  const VectorField f = compute_force(compute_potential(EdgeMap(g), fp));
  for (int y = 1; y < n - 1; ++y) {
    for (int x = 1; x < n - 1; ++x) {
      const double dx = x - c, dy = y - c;
      const Vec2 force = f(x, y);
      if (norm(force) > 0.0) {
        EXPECT_GT(dot(force, {-dx, -dy}), 0.0);
      }
      // phi = (d^2 + 1)^(-1/2); the central difference of it is exact.
      auto phi = [&](double px, double py) {
        return 1.0 / std::sqrt((px - c) * (px - c) + (py - c) * (py - c) + 1.0);
      };
      EXPECT_NEAR(force.x, 0.5 * (phi(x + 1, y) - phi(x - 1, y)), 1e-12);
      EXPECT_NEAR(force.y, 0.5 * (phi(x, y + 1) - phi(x, y - 1)), 1e-12);
      const double d2 = dx * dx + dy * dy;
      if (d2 < 36.0) continue;
      const double ax = -dx * std::pow(d2 + 1.0, -1.5);
      const double ay = -dy * std::pow(d2 + 1.0, -1.5);
      if (std::abs(ax) > 1e-6) {
        EXPECT_NEAR(force.x, ax, 0.05 * std::abs(ax)) << x << "," << y;
      }
      if (std::abs(ay) > 1e-6) {
        EXPECT_NEAR(force.y, ay, 0.05 * std::abs(ay)) << x << "," << y;
      }
    }
  }
}

TEST(ComputeForce, SymmetricRingCancelsAtCenter)
{
  const Grid<double> ring = test::ring_edges(41, 41, {20, 20}, 12.0);
  const VectorField f = compute_force(compute_potential(EdgeMap(ring), ForceFieldParams{}));
  EXPECT_LT(norm(f(20, 20)), 1e-9);
}

TEST(SampleForce, Interpolation)
{
  VectorField f{Grid<double>(4, 3), Grid<double>(4, 3)};
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 4; ++x) {
      f.fx(x, y) = x * 1.0;
      f.fy(x, y) = 10.0 * y - x;
    }
  }
  EXPECT_EQ(sample_force(f, {2, 1}), (Vec2{2.0, 8.0}));
  EXPECT_DOUBLE_EQ(sample_force(f, {0.5, 0}).x, 0.5);
  EXPECT_EQ(sample_force(f, {-5, -5}), f(0, 0));
  EXPECT_EQ(sample_force(f, {50, 50}), f(3, 2));

  VectorField c{Grid<double>(5, 5, 0.3), Grid<double>(5, 5, -0.7)};
  for (Vec2 p : {Vec2{0.1, 3.9}, Vec2{2.5, 2.5}, Vec2{4, 0}}) {
    EXPECT_NEAR(sample_force(c, p).x, 0.3, 1e-15);
    EXPECT_NEAR(sample_force(c, p).y, -0.7, 1e-15);
  }
}

} // namespace
} // namespace pmseg
