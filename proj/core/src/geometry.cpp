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

#include "pmseg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pmseg {

double signed_area(std::span<const Vec2> loop)
{
  const std::size_t n = loop.size();
  if (n < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += cross(loop[i], loop[(i + 1) % n]);
  }
  return 0.5 * acc;
}

double perimeter(std::span<const Vec2> loop)
{
  const std::size_t n = loop.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += distance(loop[i], loop[(i + 1) % n]);
  return acc;
}

Vec2 centroid(std::span<const Vec2> loop)
{
  Vec2 c;
  if (loop.empty()) return c;
  for (const Vec2 &v : loop) c += v;
  return c * (1.0 / static_cast<double>(loop.size()));
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double point_loop_distance(Vec2 p, std::span<const Vec2> loop)
{
  const std::size_t n = loop.size();
  double best = std::numeric_limits<double>::infinity();
  if (n == 1) return distance(p, loop[0]);
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, loop[i], loop[(i + 1) % n]));
  }
  return best;
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> loop)
{
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 &a = loop[i];
    const Vec2 &b = loop[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

Polyline densify(std::span<const Vec2> loop, double step)
{
  Polyline out;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = loop[i];
    const Vec2 b = loop[(i + 1) % n];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / step)));
    for (int k = 0; k < pieces; ++k) out.push_back(a + (double(k) / pieces) * (b - a));
  }
  return out;
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b)
{
  double worst = 0.0;
  for (const Vec2 &p : densify(a, 0.25)) worst = std::max(worst, point_loop_distance(p, b));
  for (const Vec2 &p : densify(b, 0.25)) worst = std::max(worst, point_loop_distance(p, a));
  return worst;
}

double mean_distance(std::span<const Vec2> a, std::span<const Vec2> b)
{
  const Polyline pts = densify(a, 0.25);
  if (pts.empty()) return 0.0;
  double acc = 0.0;
  for (const Vec2 &p : pts) acc += point_loop_distance(p, b);
  return acc / static_cast<double>(pts.size());
}

Polyline circle_polyline(Vec2 center, double radius, int vertices)
{
  Polyline out;
  out.reserve(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) {
    // Increasing angle with y pointing down runs clockwise on screen.
    const double t = 2.0 * std::numbers::pi * i / vertices;
    out.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
  }
  return out;
}

void fill_polygon(Grid<std::uint8_t> &mask, std::span<const Vec2> polygon, std::uint8_t value,
                  double tolerance)
{
  if (polygon.size() < 3) return;
  double x0 = polygon[0].x, x1 = x0, y0 = polygon[0].y, y1 = y0;
  for (const Vec2 &v : polygon) {
    x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
  }
  const int ix0 = std::max(0, static_cast<int>(std::floor(x0 - tolerance)));
  const int ix1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(x1 + tolerance)));
  const int iy0 = std::max(0, static_cast<int>(std::floor(y0 - tolerance)));
  const int iy1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(y1 + tolerance)));
  for (int y = iy0; y <= iy1; ++y) {
    for (int x = ix0; x <= ix1; ++x) {
      const Vec2 p{double(x), double(y)};
      if (point_in_polygon(p, polygon) || point_loop_distance(p, polygon) <= tolerance) {
        mask(x, y) = value;
      }
    }
  }
}

SegmentIndex::SegmentIndex(int width, int height, double cell)
  : cell_(cell),
    nx_(std::max(1, static_cast<int>(std::ceil((width + 2) / cell)))),
    ny_(std::max(1, static_cast<int>(std::ceil((height + 2) / cell)))),
    buckets_(static_cast<std::size_t>(nx_) * ny_)
{}

void SegmentIndex::clear()
{
  segments_.clear();
  for (auto &b : buckets_) b.clear();
}

int SegmentIndex::bucket_x(double x) const
{
  return std::clamp(static_cast<int>(std::floor((x + 1.0) / cell_)), 0, nx_ - 1);
}

int SegmentIndex::bucket_y(double y) const
{
  return std::clamp(static_cast<int>(std::floor((y + 1.0) / cell_)), 0, ny_ - 1);
}

void SegmentIndex::add_segment(Vec2 a, Vec2 b)
{
  const int id = static_cast<int>(segments_.size());
  segments_.push_back({a, b});
  const int bx0 = bucket_x(std::min(a.x, b.x)), bx1 = bucket_x(std::max(a.x, b.x));
  const int by0 = bucket_y(std::min(a.y, b.y)), by1 = bucket_y(std::max(a.y, b.y));
  for (int by = by0; by <= by1; ++by) {
    for (int bx = bx0; bx <= bx1; ++bx) {
      buckets_[static_cast<std::size_t>(by) * nx_ + bx].push_back(id);
    }
  }
}

void SegmentIndex::add_loop(std::span<const Vec2> loop)
{
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) add_segment(loop[i], loop[(i + 1) % n]);
}

double SegmentIndex::distance(Vec2 p, double limit) const
{
  double best = std::numeric_limits<double>::infinity();
  const int bx0 = bucket_x(p.x - limit), bx1 = bucket_x(p.x + limit);
  const int by0 = bucket_y(p.y - limit), by1 = bucket_y(p.y + limit);
  for (int by = by0; by <= by1; ++by) {
    for (int bx = bx0; bx <= bx1; ++bx) {
      for (int id : buckets_[static_cast<std::size_t>(by) * nx_ + bx]) {
        const Segment &s = segments_[static_cast<std::size_t>(id)];
        best = std::min(best, point_segment_distance(p, s.a, s.b));
      }
    }
  }
  return best <= limit ? best : std::numeric_limits<double>::infinity();
}

bool SegmentIndex::any_within(Vec2 p, double radius) const
{
  return distance(p, radius) <= radius;
}

} // namespace pmseg
