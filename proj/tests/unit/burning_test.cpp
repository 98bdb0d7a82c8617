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

#include <pmseg/burning.hpp>
#include <pmseg/error.hpp>
#include <pmseg/geometry.hpp>
#include <pmseg/topology.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pmseg {
namespace {

SnakeContour circle_contour(Vec2 c, double r, int n = 240)
{
  return SnakeContour(circle_polyline(c, r, n));
}

/// White image with a dark ring of the given radius, two pixels wide.
GrayImage ring_image(int size, Vec2 c, double r)
{
  Grid<double> g(size, size, 1.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if (std::abs(std::hypot(x - c.x, y - c.y) - r) < 1.0) g(x, y) = 0.0;
    }
  }
  return GrayImage(std::move(g));
}

VectorField normalized_force(const Grid<double> &edges, const ForceFieldParams &fp)
{
  VectorField f = compute_force(compute_potential(EdgeMap(edges), fp));
  double peak = 0.0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) peak = std::max(peak, norm(f(x, y)));
  }
  for (double &v : f.fx.values()) v /= peak;
  for (double &v : f.fy.values()) v /= peak;
  return f;
}

TEST(UpdateBurn, StationaryContourChangesNothing)
{
  BurnGrid grid(32, 32, 1.5);
  const SnakeContour c = circle_contour({16, 16}, 6);
  EXPECT_EQ(update_burn(grid, c, {}), 0u);
  EXPECT_EQ(grid.burned_count(), 0u);
}

TEST(UpdateBurn, InflatedCircleBurnsBehindGap)
{
  const Vec2 c{32, 32};
  BurnGrid grid(64, 64, 2.0);
  const SnakeContour small = circle_contour(c, 5);
  const Polyline interior = small.vertices;
  update_burn(grid, small, std::span<const Polyline>(&interior, 1));

  const SnakeContour big = circle_contour(c, 10);
  const std::vector<Polyline> quads = sweep_quads(small.vertices, big.vertices);
  update_burn(grid, big, quads);

  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const double r = std::hypot(x - c.x, y - c.y);
      if (r < 7.99) {
        EXPECT_TRUE(grid.burned(x, y)) << x << "," << y;
      } else if (r > 8.01) {
        EXPECT_FALSE(grid.burned(x, y)) << x << "," << y;
      }
      if (r > 8.01 && r < 9.99) {
        EXPECT_TRUE(grid.swept(x, y)) << x << "," << y;
      }
    }
  }
}

TEST(UpdateBurn, GapWiderThanSweepBurnsNothing)
{
  BurnGrid grid(32, 32, 2.0);
  const SnakeContour before = circle_contour({16, 16}, 5);
  const SnakeContour after = circle_contour({16, 16}, 6);
  const std::vector<Polyline> quads = sweep_quads(before.vertices, after.vertices);
  EXPECT_EQ(update_burn(grid, after, quads), 0u);
}

TEST(UpdateBurn, NeverUnburns)
{
  BurnGrid grid(32, 32, 1.5);
  grid.burn(16, 16);
  const SnakeContour c = circle_contour({16, 16}, 3);
  const Polyline disk = c.vertices;
  update_burn(grid, c, std::span<const Polyline>(&disk, 1));
  EXPECT_TRUE(grid.burned(16, 16));
}

TEST(CollisionCheck, Examples)
{
  BurnGrid grid(16, 16, 1.5);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) EXPECT_FALSE(collision_check({x + 0.3, y + 0.2}, grid));
  }
  grid.burn(5, 5);
  EXPECT_TRUE(collision_check({5.0, 5.0}, grid));
  EXPECT_TRUE(collision_check({5.4, 5.0}, grid));
  EXPECT_TRUE(collision_check({4.6, 4.8}, grid));
  EXPECT_FALSE(collision_check({6.0, 5.0}, grid));
}

TEST(StageTwoRelease, ZeroExtraStepsLeavesGridAlone)
{
  BurnGrid grid(32, 32, 1.5);
  SnakeContour c = circle_contour({16, 16}, 6);
  const Polyline disk = c.vertices;
  update_burn(grid, c, std::span<const Polyline>(&disk, 1));
  const Grid<std::uint8_t> before = grid.burned_mask();
  c.frozen.assign(c.size(), 1);
  const VectorField none{Grid<double>(32, 32), Grid<double>(32, 32)};
  const ReleaseReport report = stage_two_release(c, grid, none, SnakeParams{}, 0);
  EXPECT_EQ(report.steps, 0);
  EXPECT_TRUE(grid.burned_mask() == before);
  EXPECT_EQ(c.frozen_count(), 0u);
}

TEST(StageTwoRelease, SingleObjectStaysConnected)
{
  BurnGrid grid(48, 48, 1.5);
  SnakeContour c = circle_contour({24, 24}, 10);
  const Polyline disk = c.vertices;
  update_burn(grid, c, std::span<const Polyline>(&disk, 1));
  const VectorField none{Grid<double>(48, 48), Grid<double>(48, 48)};
  SnakeParams p;
  p.alpha = 0.0;
  const ReleaseReport report = stage_two_release(c, grid, none, p, 5);
  EXPECT_EQ(report.components, 1);
  EXPECT_EQ(label_components(grid.burned_mask(), Connectivity::four).count, 1);
}

TEST(StageTwoRelease, BurnsThroughBandBetweenFronts)
{
  // Two burned halves separated by a swept, unburned band of width 3.
  BurnGrid grid(40, 20, 1.5);
  const Polyline all{{0, 0}, {39, 0}, {39, 19}, {0, 19}};
  grid.mark_swept(all);
  std::vector<std::size_t> pending;
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 40; ++x) {
      if (x < 18 || x > 20) {
        grid.burn(x, y);
      } else {
        pending.push_back(static_cast<std::size_t>(y) * 40 + static_cast<std::size_t>(x));
      }
    }
  }
  grid.set_pending(pending);
  EXPECT_EQ(label_components(grid.burned_mask(), Connectivity::four).count, 2);
  SnakeContour c({{18, 2}, {20, 2}, {20, 17}, {18, 17}});
  const VectorField none{Grid<double>(40, 20), Grid<double>(40, 20)};
  SnakeParams p;
  p.alpha = 0.0;
  p.lambda = 0.0;
  const ReleaseReport report = stage_two_release(c, grid, none, p, 1);
  EXPECT_EQ(report.components, 1);
  EXPECT_EQ(grid.burned_count(), 40u * 20u);
}

BurnGrid grid_from_mask(const Grid<std::uint8_t> &mask)
{
  BurnGrid grid(mask.width(), mask.height(), 1.5);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask(x, y)) grid.burn(x, y);
    }
  }
  return grid;
}

Grid<std::uint8_t> minus_disks(Grid<std::uint8_t> mask)
{
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (std::hypot(x - 20.0, y - 30.0) < 8.0 || std::hypot(x - 45.0, y - 30.0) < 10.0) {
        mask(x, y) = 0;
      }
    }
  }
  return mask;
}

TEST(ExtractChildContours, EmptyRegionGivesNothing)
{
  EXPECT_TRUE(extract_child_contours(BurnGrid(16, 16, 1.5)).empty());
}

TEST(ExtractChildContours, BurnedDiskGivesOneLoop)
{
  Grid<std::uint8_t> mask(48, 48);
  fill_polygon(mask, circle_polyline({24, 24}, 12, 128));
  const std::vector<SnakeContour> loops = extract_child_contours(grid_from_mask(mask));
  ASSERT_EQ(loops.size(), 1u);
  EXPECT_EQ(loops[0].orientation, Orientation::clockwise);
  EXPECT_LE(hausdorff_distance(loops[0].vertices, circle_polyline({24, 24}, 12, 256)), 1.0);
}

TEST(ExtractChildContours, InsetRegionMinusTwoDisks)
{
  Grid<std::uint8_t> mask(64, 60);
  for (int y = 5; y < 55; ++y) {
    for (int x = 5; x < 59; ++x) mask(x, y) = 1;
  }
  const std::vector<SnakeContour> loops = extract_child_contours(grid_from_mask(minus_disks(mask)));
  ASSERT_EQ(loops.size(), 3u);
  int holes = 0;
  for (const SnakeContour &c : loops) holes += c.orientation == Orientation::counterclockwise;
  EXPECT_EQ(holes, 2);
}

TEST(ExtractChildContours, FrameLoopIsDropped)
{
  const Grid<std::uint8_t> mask = minus_disks(Grid<std::uint8_t>(64, 60, 1));
  const std::vector<SnakeContour> loops = extract_child_contours(grid_from_mask(mask));
  ASSERT_EQ(loops.size(), 2u);
  for (const SnakeContour &c : loops) EXPECT_EQ(c.orientation, Orientation::counterclockwise);
  std::vector<double> r;
  for (const SnakeContour &c : loops) r.push_back(std::sqrt(std::abs(signed_area(c.vertices)) / M_PI));
  std::sort(r.begin(), r.end());
  EXPECT_NEAR(r[0], 8.0, 1.0);
  EXPECT_NEAR(r[1], 10.0, 1.0);
}

TEST(RefineChildren, OffsetChildMovesOntoRidge)
{
  const Vec2 c{40, 40};
  const VectorField f = normalized_force(test::ring_edges(80, 80, c, 20.0), ForceFieldParams{});
  SnakeParams p;
  p.lambda = 0.0;
  p.alpha = 0.05;
  const RefineReport report = refine_children({circle_contour(c, 18, 80)}, f, p, 400);
  ASSERT_EQ(report.children.size(), 1u);
  EXPECT_TRUE(report.converged[0]);
  for (const Vec2 &v : report.children[0].vertices) EXPECT_NEAR(distance(v, c), 20.0, 1.0);
}

TEST(RefineChildren, ChildOnRidgeIsFixedPoint)
{
  const Vec2 c{40, 40};
  const VectorField f = normalized_force(test::ring_edges(80, 80, c, 20.0), ForceFieldParams{});
  SnakeParams p;
  p.lambda = 0.0;
  p.alpha = 0.0;
  const SnakeContour on = refine_children({circle_contour(c, 20, 80)}, f, p, 400).children.at(0);
  const SnakeContour next = step(on, f, p);
  EXPECT_LT(shape_displacement(on.vertices, next.vertices), p.conv_eps);
}

TEST(RefineChildren, ZeroFieldOnlyShrinksByTension)
{
  const VectorField none{Grid<double>(64, 64), Grid<double>(64, 64)};
  SnakeParams p;
  p.lambda = 0.0;
  const SnakeContour child = circle_contour({32, 32}, 12, 48);
  const RefineReport report = refine_children({child}, none, p, 20);
  ASSERT_EQ(report.children.size(), 1u);
  const double a0 = std::abs(signed_area(child.vertices));
  const double a1 = std::abs(signed_area(report.children[0].vertices));
  EXPECT_LE(a1, a0 + 1e-9);
  EXPECT_GT(a1, 0.8 * a0);
}

BalloonConfig small_config()
{
  BalloonConfig cfg;
  cfg.stage1_max_steps = 3000;
  return cfg;
}

TEST(SegmentMulti, SingleCircleGivesOneChild)
{
  const Vec2 c{48, 48};
  const GrayImage img = ring_image(96, c, 25.0);
  const MultiSegResult res =
      segment_multi(img, SnakeContour(circle_polyline(c, 6, 32)), small_config());
  ASSERT_EQ(res.children.size(), 1u);
  EXPECT_LE(hausdorff_distance(res.children[0].vertices, circle_polyline(c, 25, 400)), 2.0);
}

TEST(SegmentMulti, InvariantsHoldAtEveryStep)
{
  const Vec2 c{48, 48};
  const GrayImage img = ring_image(96, c, 25.0);
  Grid<std::uint8_t> previous(96, 96);
  int violations = 0, inside = 0, calls = 0;
  auto observer = [&](const MultiSnapshot &s) {
    ++calls;
    const Grid<std::uint8_t> &now = s.grid->burned_mask();
    for (std::size_t i = 0; i < now.values().size(); ++i) {
      violations += previous.values()[i] && !now.values()[i];
    }
    previous = now;
    if (s.stage != MultiStage::stage1 || s.contour == nullptr) return;
    SegmentIndex index(96, 96);
    index.add_loop(s.contour->vertices);
    for (int y = 0; y < 96; ++y) {
      for (int x = 0; x < 96; ++x) {
        if (now(x, y) && index.any_within({double(x), double(y)}, s.grid->gap() - 1e-9)) {
          ++inside;
        }
      }
    }
  };
  segment_multi(img, SnakeContour(circle_polyline(c, 6, 32)), small_config(), observer);
  EXPECT_GT(calls, 10);
  EXPECT_EQ(violations, 0);
  EXPECT_EQ(inside, 0);
}

TEST(SegmentMulti, Deterministic)
{
  const Vec2 c{48, 48};
  const GrayImage img = ring_image(96, c, 25.0);
  const SnakeContour seed(circle_polyline({44, 50}, 6, 32));
  const MultiSegResult a = segment_multi(img, seed, small_config());
  const MultiSegResult b = segment_multi(img, seed, small_config());
  EXPECT_TRUE(a.mask == b.mask);
  ASSERT_EQ(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    EXPECT_EQ(a.children[i].vertices, b.children[i].vertices);
  }
}

TEST(BalloonConfig, Validation)
{
  BalloonConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.gap = 0.5;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = BalloonConfig{};
  cfg.stall_steps = -1;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = BalloonConfig{};
  EXPECT_EQ(cfg.effective_extra_steps(),
            static_cast<int>(std::ceil(2.0 * cfg.gap / (cfg.snake.dt * std::abs(cfg.snake.lambda)))));
}

} // namespace
} // namespace pmseg
