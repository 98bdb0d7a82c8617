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

#include "pmseg/snake.hpp"

#include "pmseg/error.hpp"

#include <algorithm>
#include <cmath>

namespace pmseg {

Orientation orientation_of(std::span<const Vec2> loop)
{
  return signed_area(loop) >= 0.0 ? Orientation::clockwise : Orientation::counterclockwise;
}

SnakeContour::SnakeContour(std::vector<Vec2> points)
  : vertices(std::move(points)), frozen(vertices.size(), 0),
    orientation(orientation_of(vertices))
{
  if (vertices.size() < 4) {
    throw ValidationError("a snake needs at least 4 vertices");
  }
}

std::size_t SnakeContour::frozen_count() const
{
  return static_cast<std::size_t>(std::count(frozen.begin(), frozen.end(), 1));
}

void SnakeContour::reverse()
{
  std::reverse(vertices.begin(), vertices.end());
  std::reverse(frozen.begin(), frozen.end());
  orientation = orientation == Orientation::clockwise ? Orientation::counterclockwise
                                                      : Orientation::clockwise;
}

void SnakeParams::validate() const
{
  if (!(alpha >= 0.0)) throw ValidationError("snake.alpha must be >= 0");
  if (!std::isfinite(gamma)) throw ValidationError("snake.gamma must be finite");
  if (!std::isfinite(lambda)) throw ValidationError("snake.lambda must be finite");
  if (!(dt > 0.0)) throw ValidationError("snake.dt must be > 0");
  if (!(d_min > 0.0 && d_min < d_max)) {
    throw ValidationError("snake spacing requires 0 < d_min < d_max");
  }
  if (!(conv_eps > 0.0)) throw ValidationError("snake.conv_eps must be > 0");
  if (conv_window < 1) throw ValidationError("snake.conv_window must be >= 1");
  if (!(dt * std::abs(lambda) < d_min)) {
    throw ValidationError("snake.dt * |snake.lambda| must stay below snake.d_min");
  }
}

std::vector<Vec2> tension(const SnakeContour &contour)
{
  const std::size_t n = contour.size();
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 &prev = contour.vertices[(i + n - 1) % n];
    const Vec2 &next = contour.vertices[(i + 1) % n];
    out[i] = prev - 2.0 * contour.vertices[i] + next;
  }
  return out;
}

std::vector<Vec2> balloon_normal(const SnakeContour &contour)
{
  const std::size_t n = contour.size();
  std::vector<Vec2> out(n);
  std::vector<std::uint8_t> valid(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = contour.vertices[(i + 1) % n] - contour.vertices[(i + n - 1) % n];
    const double len = norm(d);
    if (len >= 1e-12) {
      out[i] = {d.y / len, -d.x / len};
      valid[i] = 1;
    }
  }
  // Degenerate tangents inherit the closest valid normal before them.
  const auto first = std::find(valid.begin(), valid.end(), 1);
  if (first == valid.end()) return out;
  const std::size_t start = static_cast<std::size_t>(first - valid.begin());
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    if (!valid[i]) out[i] = out[(i + n - 1) % n];
  }
  return out;
}

std::vector<Vec2> propose_positions(const SnakeContour &contour, const VectorField &force,
                                    const SnakeParams &params)
{
  const std::size_t n = contour.size();
  const std::vector<Vec2> t = tension(contour);
  const std::vector<Vec2> normals = balloon_normal(contour);
  const double xmax = force.width() - 1;
  const double ymax = force.height() - 1;
  std::vector<Vec2> out(contour.vertices);
  for (std::size_t i = 0; i < n; ++i) {
    if (contour.is_frozen(i)) continue;
    const Vec2 &v = contour.vertices[i];
    const Vec2 velocity = params.alpha * t[i] + params.gamma * sample_force(force, v) +
                          params.lambda * normals[i];
    Vec2 next = v + params.dt * velocity;
    next.x = std::clamp(next.x, 0.0, xmax);
    next.y = std::clamp(next.y, 0.0, ymax);
    out[i] = next;
  }
  return out;
}

SnakeContour step(const SnakeContour &contour, const VectorField &force,
                  const SnakeParams &params)
{
  SnakeContour next = contour;
  next.vertices = propose_positions(contour, force, params);
  return next;
}

SnakeContour resample(const SnakeContour &contour, const SnakeParams &params)
{
  struct Node { Vec2 p; bool frozen; };

  // Consecutive vertices within d_min of a cluster's first vertex collapse
  // into one: the first frozen member if there is one, else the mean.
  struct Cluster { Vec2 anchor; Vec2 sum; int count; bool frozen; Vec2 frozen_at; };
  std::vector<Cluster> clusters;
  clusters.reserve(contour.size());
  auto absorb = [](Cluster &c, Vec2 p, bool frozen) {
    c.sum = c.sum + p;
    ++c.count;
    if (frozen && !c.frozen) {
      c.frozen = true;
      c.frozen_at = p;
    }
  };
  for (std::size_t i = 0; i < contour.size(); ++i) {
    const Vec2 p = contour.vertices[i];
    const bool frozen = contour.is_frozen(i);
    if (!clusters.empty() && distance(clusters.back().anchor, p) < params.d_min) {
      absorb(clusters.back(), p, frozen);
    } else {
      clusters.push_back({p, p, 1, frozen, p});
    }
  }
  // Wrap-around: the tail cluster joins the head if it starts close to it.
  while (clusters.size() > 1 &&
         distance(clusters.back().anchor, clusters.front().anchor) < params.d_min) {
    Cluster tail = clusters.back();
    clusters.pop_back();
    Cluster &head = clusters.front();
    tail.sum = tail.sum + head.sum;
    tail.count += head.count;
    if (!tail.frozen && head.frozen) {
      tail.frozen = true;
      tail.frozen_at = head.frozen_at;
    }
    head = tail;
  }

  std::vector<Node> merged;
  merged.reserve(clusters.size());
  for (const Cluster &c : clusters) {
    merged.push_back({c.frozen ? c.frozen_at : (1.0 / c.count) * c.sum, c.frozen});
  }
  if (merged.size() < 4) {
    throw ContourVanished("snake collapsed below 4 vertices");
  }

  SnakeContour out;
  out.orientation = contour.orientation;
  const std::size_t n = merged.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Node &a = merged[i];
    const Node &b = merged[(i + 1) % n];
    out.vertices.push_back(a.p);
    out.frozen.push_back(a.frozen ? 1 : 0);
    const double len = distance(a.p, b.p);
    if (len > params.d_max) {
      const int pieces = static_cast<int>(std::ceil(len / params.d_max));
      for (int k = 1; k < pieces; ++k) {
        out.vertices.push_back(a.p + (double(k) / pieces) * (b.p - a.p));
        out.frozen.push_back(a.frozen || b.frozen ? 1 : 0);
      }
    }
  }
  return out;
}

bool has_converged(std::span<const double> displacement_history, const SnakeParams &params)
{
  const auto window = static_cast<std::size_t>(params.conv_window);
  if (displacement_history.size() < window) return false;
  const auto tail = displacement_history.last(window);
  return std::all_of(tail.begin(), tail.end(), [&](double d) { return d < params.conv_eps; });
}

double max_displacement(std::span<const Vec2> before, std::span<const Vec2> after)
{
  double worst = 0.0;
  const std::size_t n = std::min(before.size(), after.size());
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, distance(before[i], after[i]));
  return worst;
}

double shape_displacement(std::span<const Vec2> before, std::span<const Vec2> after)
{
  double worst = 0.0;
  const std::size_t n = std::min(before.size(), after.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 prev = before[(i + n - 1) % n];
    const Vec2 next = before[(i + 1) % n];
    const double d = std::min({distance(before[i], after[i]),
                               point_segment_distance(after[i], prev, before[i]),
                               point_segment_distance(after[i], before[i], next)});
    worst = std::max(worst, d);
  }
  return worst;
}

} // namespace pmseg
