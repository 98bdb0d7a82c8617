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

#include "pmseg/burning.hpp"

#include "pmseg/error.hpp"
#include "pmseg/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pmseg {

// -----------------------------------------------------------------------------
// BurnGrid

BurnGrid::BurnGrid(int width, int height, double gap)
  : gap_(gap), burned_(width, height, 0), swept_(width, height, 0)
{
  if (!(gap >= 1.0 && gap <= 2.0)) {
    throw ValidationError("burn gap must lie in [1, 2] pixels");
  }
}

void BurnGrid::mark_swept(std::span<const Vec2> polygon)
{
  if (polygon.size() < 3) return;
  double x0 = polygon[0].x, x1 = x0, y0 = polygon[0].y, y1 = y0;
  for (const Vec2 &v : polygon) {
    x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
  }
  constexpr double tol = 1e-9;
  const int ix0 = std::max(0, static_cast<int>(std::ceil(x0 - tol)));
  const int ix1 = std::min(width() - 1, static_cast<int>(std::floor(x1 + tol)));
  const int iy0 = std::max(0, static_cast<int>(std::ceil(y0 - tol)));
  const int iy1 = std::min(height() - 1, static_cast<int>(std::floor(y1 + tol)));
  for (int y = iy0; y <= iy1; ++y) {
    for (int x = ix0; x <= ix1; ++x) {
      if (swept_(x, y)) continue;
      const Vec2 p{double(x), double(y)};
      if (point_in_polygon(p, polygon) || point_loop_distance(p, polygon) <= tol) {
        swept_(x, y) = 1;
        if (!burned_(x, y)) pending_.push_back(swept_.index(x, y));
      }
    }
  }
}

void BurnGrid::burn(int x, int y)
{
  if (burned_(x, y)) return;
  burned_(x, y) = 1;
  ++burned_count_;
}

// -----------------------------------------------------------------------------
// Stage one

std::vector<Polyline> sweep_quads(std::span<const Vec2> before, std::span<const Vec2> after)
{
  std::vector<Polyline> quads;
  const std::size_t n = std::min(before.size(), after.size());
  quads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (before[i] == after[i] && before[j] == after[j]) continue;
    quads.push_back({before[i], before[j], after[j], after[i]});
  }
  return quads;
}

std::size_t update_burn(BurnGrid &grid, const SnakeContour &contour,
                        std::span<const Polyline> swept)
{
  for (const Polyline &poly : swept) grid.mark_swept(poly);

  SegmentIndex index(grid.width(), grid.height());
  index.add_loop(contour.vertices);

  const int w = grid.width();
  std::size_t burned = 0;
  std::vector<std::size_t> still_pending;
  still_pending.reserve(grid.pending().size());
  for (std::size_t idx : grid.pending()) {
    const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
    if (grid.burned(x, y)) continue;
    if (index.any_within({double(x), double(y)}, grid.gap())) {
      still_pending.push_back(idx);
    } else {
      grid.burn(x, y);
      ++burned;
    }
  }
  grid.set_pending(std::move(still_pending));
  return burned;
}

bool collision_check(Vec2 proposed, const BurnGrid &grid)
{
  const int w = grid.width();
  const int h = grid.height();
  const int rx = clamp_index(static_cast<int>(std::lround(proposed.x)), w);
  const int ry = clamp_index(static_cast<int>(std::lround(proposed.y)), h);
  if (grid.burned(rx, ry)) return true;
  const int fx = static_cast<int>(std::floor(proposed.x));
  const int fy = static_cast<int>(std::floor(proposed.y));
  for (int y = fy; y <= fy + 1; ++y) {
    for (int x = fx; x <= fx + 1; ++x) {
      if (!grid.burned_mask().contains(x, y) || !grid.burned(x, y)) continue;
      if (distance(proposed, {double(x), double(y)}) <= 0.5) return true;
    }
  }
  return false;
}

// -----------------------------------------------------------------------------
// Stage two

namespace {

int burned_components(const BurnGrid &grid)
{
  return label_components(grid.burned_mask(), Connectivity::four).count;
}

// Fire spreading through swept pixels; returns the number of BFS levels.
int spread_fire(BurnGrid &grid)
{
  const int w = grid.width();
  const int h = grid.height();
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};

  auto ignitable = [&](int x, int y) {
    return grid.burned_mask().contains(x, y) && grid.swept(x, y) && !grid.burned(x, y);
  };

  std::vector<std::size_t> frontier;
  for (std::size_t idx : grid.pending()) {
    const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
    if (!ignitable(x, y)) continue;
    for (int k = 0; k < 4; ++k) {
      const int nx = x + dx[k], ny = y + dy[k];
      if (grid.burned_mask().contains(nx, ny) && grid.burned(nx, ny)) {
        frontier.push_back(idx);
        break;
      }
    }
  }

  int passes = 0;
  while (!frontier.empty()) {
    ++passes;
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
      const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
      grid.burn(x, y);
    }
    for (std::size_t idx : frontier) {
      const int x = static_cast<int>(idx % static_cast<std::size_t>(w));
      const int y = static_cast<int>(idx / static_cast<std::size_t>(w));
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k], ny = y + dy[k];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        if (ignitable(nx, ny)) {
          next.push_back(grid.burned_mask().index(nx, ny));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }

  std::vector<std::size_t> remaining;
  for (std::size_t idx : grid.pending()) {
    if (!grid.burned_mask()[idx]) remaining.push_back(idx);
  }
  grid.set_pending(std::move(remaining));
  return passes;
}

} // namespace

ReleaseReport stage_two_release(SnakeContour &contour, BurnGrid &grid, const VectorField &force,
                                const SnakeParams &params, int extra_steps)
{
  ReleaseReport report;
  std::fill(contour.frozen.begin(), contour.frozen.end(), 0);
  if (extra_steps <= 0) {
    report.components = burned_components(grid);
    return report;
  }

  for (int s = 0; s < extra_steps; ++s) {
    const std::vector<Vec2> before = contour.vertices;
    contour.vertices = propose_positions(contour, force, params);
    for (const Polyline &quad : sweep_quads(before, contour.vertices)) grid.mark_swept(quad);
    contour = resample(contour, params);
    ++report.steps;
  }

  report.burn_passes = spread_fire(grid);
  report.components = burned_components(grid);
  if (report.components > 1) {
    throw ReleaseIncomplete("burned region still has " + std::to_string(report.components) +
                                " components after release",
                            report.components);
  }
  return report;
}

// -----------------------------------------------------------------------------
// Child extraction

std::vector<SnakeContour> extract_child_contours(const BurnGrid &grid,
                                                 const ExtractOptions &options)
{
  std::vector<SnakeContour> children;
  const Grid<std::uint8_t> &burned = grid.burned_mask();
  const int w = grid.width();
  const int h = grid.height();

  const Labeling fire = label_components(burned, Connectivity::eight);
  if (fire.count == 0) return children;

  std::vector<int> area(static_cast<std::size_t>(fire.count) + 1, 0);
  std::vector<std::array<int, 2>> start(static_cast<std::size_t>(fire.count) + 1, {-1, -1});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = fire.labels(x, y);
      if (!l) continue;
      ++area[l];
      if (start[l][0] < 0) start[l] = {x, y};
    }
  }

  auto add_child = [&](Polyline loop, Orientation want) {
    if (loop.size() < 4) return;
    SnakeContour child(std::move(loop));
    if (child.orientation != want) child.reverse();
    children.push_back(std::move(child));
  };

  for (int l = 1; l <= fire.count; ++l) {
    if (area[l] < options.min_area) continue;
    Polyline loop = trace_boundary(burned, start[l][0], start[l][1]);
    double x0 = w, x1 = -1, y0 = h, y1 = -1;
    for (const Vec2 &p : loop) {
      x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    const bool frame = x0 <= 1.0 && y0 <= 1.0 && x1 >= w - 2.0 && y1 >= h - 2.0;
    if (!frame) add_child(std::move(loop), Orientation::clockwise);
  }

  Grid<std::uint8_t> unburned(w, h, 0);
  for (std::size_t i = 0; i < unburned.size(); ++i) unburned[i] = burned[i] ? 0 : 1;
  const Labeling holes = label_components(unburned, Connectivity::four);
  std::vector<int> hole_area(static_cast<std::size_t>(holes.count) + 1, 0);
  std::vector<std::array<int, 2>> hole_start(static_cast<std::size_t>(holes.count) + 1, {-1, -1});
  std::vector<std::uint8_t> on_border(static_cast<std::size_t>(holes.count) + 1, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int l = holes.labels(x, y);
      if (!l) continue;
      ++hole_area[l];
      if (hole_start[l][0] < 0) hole_start[l] = {x, y};
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) on_border[l] = 1;
    }
  }
  for (int l = 1; l <= holes.count; ++l) {
    if (on_border[l] || hole_area[l] < options.min_area) continue;
    Grid<std::uint8_t> hole(w, h, 0);
    for (std::size_t i = 0; i < hole.size(); ++i) hole[i] = holes.labels[i] == l ? 1 : 0;
    add_child(trace_boundary(hole, hole_start[l][0], hole_start[l][1]),
              Orientation::counterclockwise);
  }
  return children;
}

RefineReport refine_children(const std::vector<SnakeContour> &children, const VectorField &force,
                             const SnakeParams &params, int max_steps)
{
  RefineReport report;
  for (std::size_t c = 0; c < children.size(); ++c) {
    try {
      SnakeContour contour = resample(children[c], params);
      std::vector<double> history;
      int steps = 0;
      bool converged = false;
      while (steps < max_steps) {
        const std::vector<Vec2> next = propose_positions(contour, force, params);
        history.push_back(shape_displacement(contour.vertices, next));
        contour.vertices = next;
        contour = resample(contour, params);
        ++steps;
        if (has_converged(history, params)) {
          converged = true;
          break;
        }
      }
      report.children.push_back(std::move(contour));
      report.steps.push_back(steps);
      report.converged.push_back(converged);
    } catch (const ContourVanished &) {
      report.warnings.push_back("child " + std::to_string(c) +
                                " collapsed during refinement and was dropped");
    }
  }
  return report;
}

// -----------------------------------------------------------------------------
// Pipeline

EdgeForce build_edge_force(const GrayImage &image, const EdgeForceConfig &config)
{
  config.force.validate();
  if (!(config.edge_threshold >= 0.0)) throw ValidationError("edge threshold must be >= 0");
  const GrayImage smoothed = gaussian_smooth(image, config.smooth_sigma);
  EdgeMap edges = config.intensity_source ? intensity_as_edges(smoothed, true)
                                          : gradient_magnitude(smoothed);
  edges = threshold_edges(edges, config.edge_threshold);
  PotentialField potential = compute_potential(edges, config.force);
  VectorField force = compute_force(potential);
  if (config.normalize_force) {
    double peak = 0.0;
    for (std::size_t i = 0; i < force.fx.size(); ++i) {
      peak = std::max(peak, std::hypot(force.fx[i], force.fy[i]));
    }
    if (peak > 0.0) {
      for (std::size_t i = 0; i < force.fx.size(); ++i) {
        force.fx[i] /= peak;
        force.fy[i] /= peak;
      }
    }
  }
  return {std::move(edges), std::move(potential), std::move(force)};
}

void BalloonConfig::validate() const
{
  field.force.validate();
  snake.validate();
  if (!(gap >= 1.0 && gap <= 2.0)) throw ValidationError("balloon.gap must lie in [1, 2]");
  if (stage1_max_steps < 1) throw ValidationError("balloon.stage1_max_steps must be >= 1");
  if (stall_steps < 0) throw ValidationError("balloon.stall_steps must be >= 0");
  if (extra_steps < 0) throw ValidationError("balloon.extra_steps must be >= 0");
  if (max_release_attempts < 1) throw ValidationError("balloon.max_release_attempts must be >= 1");
  if (refine_max_steps < 0) throw ValidationError("balloon.refine_max_steps must be >= 0");
  if (!(snake.dt * std::abs(refine_lambda) < snake.d_min)) {
    throw ValidationError("balloon.refine_lambda too large for snake.dt and snake.d_min");
  }
  if (!(min_child_area >= 0.0)) throw ValidationError("balloon.min_child_area must be >= 0");
}

int BalloonConfig::effective_extra_steps() const
{
  if (extra_steps > 0) return extra_steps;
  const double travel = snake.dt * std::abs(snake.lambda);
  if (travel <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(2.0 * gap / travel)));
}

MultiSegResult segment_multi(const GrayImage &image, const SnakeContour &seed,
                             const BalloonConfig &config, const MultiObserver &observer)
{
  config.validate();
  const EdgeForce field = build_edge_force(image, config.field);
  const VectorField &force = field.force;
  const SnakeParams &params = config.snake;

  MultiSegResult result;
  BurnGrid grid(image.width(), image.height(), config.gap);
  SnakeContour contour = resample(seed, params);
  {
    const Polyline interior = contour.vertices;
    update_burn(grid, contour, std::span<const Polyline>(&interior, 1));
  }

  const double xmax = image.width() - 1, ymax = image.height() - 1;
  auto on_frame = [&](Vec2 p) { return p.x <= 0.0 || p.y <= 0.0 || p.x >= xmax || p.y >= ymax; };

  auto notify = [&](MultiStage stage, int step, const SnakeContour *c,
                    const std::vector<SnakeContour> *children) {
    if (observer) observer(MultiSnapshot{stage, step, c, children, &grid});
  };
  notify(MultiStage::stage1, 0, &contour, nullptr);

  // Stage one: inflate, burn behind the contour, freeze on collision.
  std::vector<double> history;
  int steps = 0;
  int last_growth = 0;
  std::size_t burned_before = grid.burned_count();
  while (steps < config.stage1_max_steps) {
    std::vector<Vec2> next = propose_positions(contour, force, params);
    for (std::size_t i = 0; i < contour.size(); ++i) {
      if (contour.is_frozen(i)) continue;
      if (collision_check(next[i], grid)) {
        contour.frozen[i] = 1;
        next[i] = contour.vertices[i];
      } else if (on_frame(next[i])) {
        // The image border stops the front like a burned region would.
        contour.frozen[i] = 1;
      }
    }
    const std::vector<Polyline> quads = sweep_quads(contour.vertices, next);
    history.push_back(shape_displacement(contour.vertices, next));
    contour.vertices = std::move(next);
    const std::vector<Vec2> moved = contour.vertices;
    contour = resample(contour, params);
    // Merging and splitting can place a vertex on burned ground; pull it back
    // to the closest position the front actually reached.
    for (std::size_t i = 0; i < contour.size(); ++i) {
      if (!collision_check(contour.vertices[i], grid)) continue;
      Vec2 best = contour.vertices[i];
      double best_d = std::numeric_limits<double>::infinity();
      for (Vec2 m : moved) {
        const double d = distance(m, contour.vertices[i]);
        if (d < best_d && !collision_check(m, grid)) {
          best_d = d;
          best = m;
        }
      }
      contour.vertices[i] = best;
      contour.frozen[i] = 1;
    }
    update_burn(grid, contour, quads);
    ++steps;
    if (grid.burned_count() != burned_before) {
      burned_before = grid.burned_count();
      last_growth = steps;
    }
    notify(MultiStage::stage1, steps, &contour, nullptr);
    if (contour.frozen_count() == contour.size() || has_converged(history, params)) {
      result.stage_log.stage1_converged = true;
      break;
    }
    if (config.stall_steps > 0 && steps - last_growth >= config.stall_steps) {
      result.stage_log.stage1_converged = true;
      result.stage_log.stage1_stalled = true;
      break;
    }
  }
  result.stage_log.stage1_steps = steps;
  result.stage1_mask = grid.burned_mask();
  result.stage1_contour = contour;
  if (!result.stage_log.stage1_converged) {
    result.warnings.push_back("stage one hit the step cap before converging");
  }

  // Stage two: release the firewall and burn through the narrow bands.
  int extra = config.effective_extra_steps();
  bool released = false;
  for (int attempt = 0; attempt < config.max_release_attempts; ++attempt) {
    try {
      const ReleaseReport report = stage_two_release(contour, grid, force, params, extra);
      result.stage_log.stage2_steps += report.steps;
      result.stage_log.stage2_burn_passes += report.burn_passes;
      released = true;
      break;
    } catch (const ReleaseIncomplete &e) {
      result.stage_log.stage2_steps += extra;
      result.warnings.push_back(e.what());
      extra *= 2;
    }
  }
  notify(MultiStage::stage2, result.stage_log.stage2_steps, &contour, nullptr);
  result.mask = grid.burned_mask();

  result.extracted = extract_child_contours(grid, ExtractOptions{config.min_child_area});
  SnakeParams refine = params;
  refine.lambda = config.refine_lambda;
  RefineReport refined = refine_children(result.extracted, force, refine, config.refine_max_steps);
  result.children = std::move(refined.children);
  result.warnings.insert(result.warnings.end(), refined.warnings.begin(), refined.warnings.end());
  result.stage_log.refine_converged =
    std::all_of(refined.converged.begin(), refined.converged.end(), [](bool c) { return c; });
  for (int s : refined.steps) {
    result.stage_log.refine_steps_max = std::max(result.stage_log.refine_steps_max, s);
  }
  notify(MultiStage::refine, result.stage_log.refine_steps_max, nullptr, &result.children);

  result.converged = result.stage_log.stage1_converged && released;
  return result;
}

} // namespace pmseg
