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

#ifndef PMSEG_BURNING_HPP
#define PMSEG_BURNING_HPP

#include "pmseg/force_field.hpp"
#include "pmseg/image.hpp"
#include "pmseg/snake.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pmseg {

/// Raster record of the area swept by an inflating snake.
///
/// Two layers are kept per pixel: `swept` (the contour has passed over the
/// pixel center at some point) and `burned`. During stage one a swept pixel
/// only burns once it trails the contour by more than `gap` pixels, so the
/// fire front follows the snake at that distance. Neither layer ever
/// shrinks.
class BurnGrid
{
public:
  BurnGrid(int width, int height, double gap);

  int width() const { return burned_.width(); }
  int height() const { return burned_.height(); }
  double gap() const { return gap_; }

  bool burned(int x, int y) const { return burned_(x, y) != 0; }
  bool swept(int x, int y) const { return swept_(x, y) != 0; }
  const Grid<std::uint8_t> &burned_mask() const { return burned_; }
  const Grid<std::uint8_t> &swept_mask() const { return swept_; }
  std::size_t burned_count() const { return burned_count_; }

  /// Marks pixel centers covered by `polygon` as swept.
  void mark_swept(std::span<const Vec2> polygon);

  /// Burns one pixel (no-op if already burned).
  void burn(int x, int y);

  /// Swept pixels that have not burned yet, as flat indices.
  const std::vector<std::size_t> &pending() const { return pending_; }
  void set_pending(std::vector<std::size_t> pending) { pending_ = std::move(pending); }

private:
  double gap_;
  Grid<std::uint8_t> burned_;
  Grid<std::uint8_t> swept_;
  std::vector<std::size_t> pending_;
  std::size_t burned_count_ = 0;
};

/// Quadrilaterals between old and new positions of consecutive vertex
/// pairs: (a_old, b_old, b_new, a_new).
std::vector<Polyline> sweep_quads(std::span<const Vec2> before, std::span<const Vec2> after);

/// Records `swept` and burns every swept pixel lying farther than the gap
/// from the current contour. Returns the number of newly burned pixels.
std::size_t update_burn(BurnGrid &grid, const SnakeContour &contour,
                        std::span<const Polyline> swept);

/// True iff the pixel containing `proposed`, or any pixel whose center lies
/// within 0.5 px of it, is burned.
bool collision_check(Vec2 proposed, const BurnGrid &grid);

struct ReleaseReport
{
  int steps = 0;          ///< released evolution steps
  int burn_passes = 0;    ///< fire-spreading passes until no change
  int components = 0;     ///< 4-connected burned components afterwards
};

/// Stage two: clears all freeze flags, evolves the contour `extra_steps`
/// times without collision checks, then lets the fire spread through every
/// swept pixel 4-adjacent to the burned region until nothing changes.
/// `extra_steps == 0` leaves the grid untouched.
///
/// Throws ReleaseIncomplete if the burned region is still split afterwards.
ReleaseReport stage_two_release(SnakeContour &contour, BurnGrid &grid, const VectorField &force,
                                const SnakeParams &params, int extra_steps);

struct ExtractOptions
{
  /// Loops enclosing fewer pixels are treated as slivers and skipped.
  double min_area = 16.0;
};

/// Boundary loops of the burned region. Each burned component contributes
/// its outer boundary unless that loop coincides with the image frame
/// (within 1 px on all four sides); every enclosed unburned region
/// (4-connected, not touching the frame) contributes its boundary. Outer
/// loops run clockwise and hole loops counterclockwise, so the balloon
/// normal points toward the unburned side.
std::vector<SnakeContour> extract_child_contours(const BurnGrid &grid,
                                                 const ExtractOptions &options = {});

struct RefineReport
{
  std::vector<SnakeContour> children;
  std::vector<int> steps;      ///< per kept child
  std::vector<bool> converged; ///< per kept child
  std::vector<std::string> warnings;
};

/// Evolves every child until has_converged() or `max_steps`. Children that
/// collapse below 4 vertices are dropped with a warning.
RefineReport refine_children(const std::vector<SnakeContour> &children, const VectorField &force,
                             const SnakeParams &params, int max_steps);

/// Force-field construction options shared by the pipelines.
struct EdgeForceConfig
{
  ForceFieldParams force;
  double smooth_sigma = 0.0;    ///< optional Gaussian pre-smoothing
  double edge_threshold = 0.0;  ///< applied to the gradient edge map
  bool intensity_source = false;///< charge = 1 - gray level instead of edges
  bool normalize_force = true;  ///< scale so that max |F| = 1
};

struct EdgeForce
{
  EdgeMap edges;
  PotentialField potential;
  VectorField force;
};

EdgeForce build_edge_force(const GrayImage &image, const EdgeForceConfig &config);

struct BalloonConfig
{
  EdgeForceConfig field;
  SnakeParams snake;
  double gap = 1.5;
  int stage1_max_steps = 6000;
  /// Stage one also ends once the burned region has not grown for this many
  /// steps (0 disables). Free vertices can keep sliding along an edge where
  /// two arms of the contour meet without ever reaching burned pixels.
  int stall_steps = 300;
  /// Released steps in stage two; 0 selects ceil(2 gap / (dt |lambda|)).
  int extra_steps = 0;
  int max_release_attempts = 4;
  int refine_max_steps = 400;
  double refine_lambda = 0.0;
  double min_child_area = 16.0;

  void validate() const;
  int effective_extra_steps() const;
};

enum class MultiStage { stage1, stage2, refine };

struct MultiSnapshot
{
  MultiStage stage;
  int step;
  const SnakeContour *contour = nullptr;
  const std::vector<SnakeContour> *children = nullptr;
  const BurnGrid *grid = nullptr;
};

struct StageLog
{
  int stage1_steps = 0;
  bool stage1_converged = false;
  bool stage1_stalled = false;  ///< ended by the burn-growth test
  int stage2_steps = 0;
  int stage2_burn_passes = 0;
  int refine_steps_max = 0;
  bool refine_converged = false;
};

struct MultiSegResult
{
  std::vector<SnakeContour> children;
  std::vector<SnakeContour> extracted;  ///< children before refinement
  Grid<std::uint8_t> mask;              ///< final burned region
  Grid<std::uint8_t> stage1_mask;       ///< burned region when stage one ended
  SnakeContour stage1_contour;          ///< parent snake when stage one ended
  StageLog stage_log;
  bool converged = false;
  std::vector<std::string> warnings;
};

using MultiObserver = std::function<void(const MultiSnapshot &)>;

/// Full balloon pipeline: edge map, force field, stage one (inflate, burn,
/// freeze on collision), stage two (release and burn through the bands),
/// child extraction and refinement.
MultiSegResult segment_multi(const GrayImage &image, const SnakeContour &seed,
                             const BalloonConfig &config, const MultiObserver &observer = {});

} // namespace pmseg

#endif // PMSEG_BURNING_HPP
