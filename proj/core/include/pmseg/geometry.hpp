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

#ifndef PMSEG_GEOMETRY_HPP
#define PMSEG_GEOMETRY_HPP

#include "pmseg/grid.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pmseg {

/// Closed polyline; the last vertex connects back to the first.
using Polyline = std::vector<Vec2>;

/// Shoelace area evaluated directly in image coordinates (y down). A loop
/// that runs clockwise on screen has positive area.
double signed_area(std::span<const Vec2> loop);

double perimeter(std::span<const Vec2> loop);

Vec2 centroid(std::span<const Vec2> loop);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Distance from `p` to the closed polyline.
double point_loop_distance(Vec2 p, std::span<const Vec2> loop);

/// Even-odd rule.
bool point_in_polygon(Vec2 p, std::span<const Vec2> loop);

/// Symmetric Hausdorff distance between two closed polylines, measured
/// from densely resampled points to the other curve's segments.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Mean distance from the points of `a` (densely resampled) to curve `b`.
double mean_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Points along the closed polyline with spacing at most `step`.
Polyline densify(std::span<const Vec2> loop, double step);

/// Regular polygon approximating a circle; clockwise on screen.
Polyline circle_polyline(Vec2 center, double radius, int vertices);

/// Marks pixel centers inside the polygon (even-odd), inclusive of points
/// within `tolerance` of an edge.
void fill_polygon(Grid<std::uint8_t> &mask, std::span<const Vec2> polygon,
                  std::uint8_t value = 1, double tolerance = 1e-9);

/// Uniform bucket grid over a set of segments for nearest-distance queries.
class SegmentIndex
{
public:
  SegmentIndex(int width, int height, double cell = 4.0);

  void clear();
  void add_loop(std::span<const Vec2> loop);
  void add_segment(Vec2 a, Vec2 b);

  /// Distance from `p` to the nearest indexed segment, or +inf if there is
  /// none within `limit`.
  double distance(Vec2 p, double limit) const;

  /// True if some indexed segment lies within `radius` of `p`.
  bool any_within(Vec2 p, double radius) const;

private:
  struct Segment { Vec2 a, b; };

  int bucket_x(double x) const;
  int bucket_y(double y) const;

  double cell_;
  int nx_;
  int ny_;
  std::vector<Segment> segments_;
  std::vector<std::vector<int>> buckets_;
};

} // namespace pmseg

#endif // PMSEG_GEOMETRY_HPP
