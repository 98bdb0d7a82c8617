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

#ifndef PMSEG_SNAKE_HPP
#define PMSEG_SNAKE_HPP

#include "pmseg/force_field.hpp"
#include "pmseg/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pmseg {

enum class Orientation { clockwise, counterclockwise };

/// Closed parametric snake with per-vertex freeze flags.
///
/// "Clockwise" refers to the on-screen sense in image coordinates
/// (x right, y down), which is the sense in which the balloon normal
/// (dy, -dx) / |d| points outwards.
struct SnakeContour
{
  std::vector<Vec2> vertices;
  std::vector<std::uint8_t> frozen;
  Orientation orientation = Orientation::clockwise;

  SnakeContour() = default;

  /// Builds a contour with every vertex free; orientation is derived from
  /// the signed area. Throws ValidationError for fewer than 4 vertices.
  explicit SnakeContour(std::vector<Vec2> points);

  std::size_t size() const { return vertices.size(); }
  bool is_frozen(std::size_t i) const { return frozen[i] != 0; }
  std::size_t frozen_count() const;

  /// Reverses vertex order (and flags) and flips the orientation.
  void reverse();
};

Orientation orientation_of(std::span<const Vec2> loop);

struct SnakeParams
{
  double alpha = 0.1;   ///< tension weight
  double gamma = 1.0;   ///< image-force weight
  double lambda = 0.3;  ///< balloon weight; negative deflates
  double dt = 0.5;
  double d_min = 1.0;
  double d_max = 2.0;
  double conv_eps = 0.02;
  int conv_window = 10;

  /// Throws ValidationError. Besides the basic ranges, the balloon travel
  /// per step dt*|lambda| must stay below d_min so a front cannot jump
  /// across a burn gap in one step.
  void validate() const;
};

/// Second difference v[i-1] - 2 v[i] + v[i+1] with cyclic indexing.
std::vector<Vec2> tension(const SnakeContour &contour);

/// Unit normals (dy, -dx) / |d| with d = v[i+1] - v[i-1]. Points outwards
/// for a clockwise contour. A degenerate tangent reuses the previous
/// vertex's normal.
std::vector<Vec2> balloon_normal(const SnakeContour &contour);

/// Explicit Euler targets v + dt (alpha T + gamma F(v) + lambda n) for every
/// free vertex, clamped to the image. Frozen vertices keep their position.
/// All targets are computed from the current positions (Jacobi update).
std::vector<Vec2> propose_positions(const SnakeContour &contour, const VectorField &force,
                                    const SnakeParams &params);

/// One explicit Euler step (propose_positions applied).
SnakeContour step(const SnakeContour &contour, const VectorField &force,
                  const SnakeParams &params);

/// Arc-length maintenance: runs of consecutive vertices within d_min of the
/// run's first vertex are merged into their mean, segments longer than d_max
/// are split into equal pieces. A merged run containing a frozen vertex
/// keeps that vertex; an inserted vertex is frozen if either parent was. Throws
/// ContourVanished when fewer than 4 vertices remain.
SnakeContour resample(const SnakeContour &contour, const SnakeParams &params);

/// True iff the last conv_window entries all lie below conv_eps.
bool has_converged(std::span<const double> displacement_history, const SnakeParams &params);

/// Largest vertex displacement between two position lists of equal length.
double max_displacement(std::span<const Vec2> before, std::span<const Vec2> after);

/// Like max_displacement, but each vertex is measured against the two
/// segments of `before` adjacent to it, so sliding along the curve does not
/// count as motion. Used for the convergence tests.
double shape_displacement(std::span<const Vec2> before, std::span<const Vec2> after);

} // namespace pmseg

#endif // PMSEG_SNAKE_HPP
