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

#include "pmseg/phantom.hpp"

#include "pmseg/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace pmseg {

std::string_view to_string(PhantomKind kind)
{
  switch (kind) {
    case PhantomKind::two_circle: return "two-circle";
    case PhantomKind::three_circle: return "three-circle";
    case PhantomKind::gap_circle: return "gap-circle";
    case PhantomKind::t_tube: return "t-tube";
    case PhantomKind::n_blob_plate: return "n-blob-plate";
  }
  return "two-circle";
}

PhantomKind parse_phantom_kind(std::string_view name)
{
  for (PhantomKind k : {PhantomKind::two_circle, PhantomKind::three_circle,
                        PhantomKind::gap_circle, PhantomKind::t_tube,
                        PhantomKind::n_blob_plate}) {
    if (name == to_string(k)) return k;
  }
  throw ValidationError("unknown phantom kind: " + std::string(name));
}

void PhantomSpec::validate() const
{
  if (size < 16) throw ValidationError("phantom.size must be >= 16");
  if (!(noise >= 0.0 && noise < 1.0)) throw ValidationError("phantom.noise must lie in [0, 1)");
  if (!(line_width > 0.0)) throw ValidationError("phantom.line_width must be > 0");
  if (!(gap_degrees >= 0.0 && gap_degrees < 360.0)) {
    throw ValidationError("phantom.gap_degrees must lie in [0, 360)");
  }
  if (blob_count < 1 || blob_count > 7) throw ValidationError("phantom.blob_count must be 1..7");
  if (!(outer_radius > 0.0 && inner_radius > 0.0 && radius > 0.0 && tube_width > 0.0)) {
    throw ValidationError("phantom radii and widths must be > 0");
  }
}

namespace {

using Indicator = std::function<bool(double, double)>;

struct Circle { Vec2 c; double r; };

double angle_diff_deg(double a, double b)
{
  double d = std::fmod(a - b, 360.0);
  if (d < -180.0) d += 360.0;
  if (d > 180.0) d -= 360.0;
  return std::abs(d);
}

// Signed distance to an axis-aligned box (negative inside).
double box_distance(double x, double y, double x0, double y0, double x1, double y1)
{
  const double dx = std::max({x0 - x, 0.0, x - x1});
  const double dy = std::max({y0 - y, 0.0, y - y1});
  if (dx > 0.0 || dy > 0.0) return std::hypot(dx, dy);
  return -std::min({x - x0, x1 - x, y - y0, y1 - y});
}

void require_inside(double x0, double y0, double x1, double y1, int size)
{
  constexpr double margin = 4.0;
  if (x0 < margin || y0 < margin || x1 > size - 1 - margin || y1 > size - 1 - margin) {
    throw ValidationError("phantom shapes must keep a 4 px margin to the image border");
  }
}

void require_circle_inside(const Circle &c, double extra, int size)
{
  require_inside(c.c.x - c.r - extra, c.c.y - c.r - extra, c.c.x + c.r + extra,
                 c.c.y + c.r + extra, size);
}

Polyline truth_circle(const Circle &c)
{
  const int n = std::max(64, static_cast<int>(std::ceil(2.0 * std::numbers::pi * c.r * 2.0)));
  return circle_polyline(c.c, c.r, n);
}

// Seven disks laid out on a 256 px plate; scaled with the image size.
constexpr std::array<std::array<double, 3>, 7> blob_layout = {{
  {60.0, 60.0, 18.0}, {128.0, 52.0, 15.0}, {196.0, 62.0, 20.0}, {52.0, 138.0, 16.0},
  {204.0, 142.0, 19.0}, {76.0, 206.0, 14.0}, {182.0, 204.0, 17.0},
}};

} // namespace

Phantom generate_phantom(const PhantomSpec &spec)
{
  spec.validate();
  const double s = spec.size;
  const double half_w = 0.5 * spec.line_width;
  Phantom out;
  Indicator dark;

  switch (spec.kind) {
    case PhantomKind::two_circle: {
      const Circle outer{{s / 2, s / 2}, spec.outer_radius};
      const Circle inner{{s / 2 + 0.12 * s, s / 2 - 0.08 * s}, spec.inner_radius};
      require_circle_inside(outer, half_w, spec.size);
      if (distance(outer.c, inner.c) + inner.r + spec.line_width >= outer.r) {
        throw ValidationError("inner circle must lie inside the outer circle");
      }
      dark = [=](double x, double y) {
        return std::abs(std::hypot(x - outer.c.x, y - outer.c.y) - outer.r) <= half_w ||
               std::abs(std::hypot(x - inner.c.x, y - inner.c.y) - inner.r) <= half_w;
      };
      out.truth = {truth_circle(outer), truth_circle(inner)};
      break;
    }
    case PhantomKind::three_circle: {
      const std::array<Circle, 3> disks = {{
        {{0.29 * s, 0.33 * s}, 0.117 * s},
        {{0.70 * s, 0.35 * s}, 0.11 * s},
        {{0.50 * s, 0.72 * s}, 0.125 * s},
      }};
      for (const Circle &d : disks) require_circle_inside(d, 0.0, spec.size);
      dark = [=](double x, double y) {
        return std::any_of(disks.begin(), disks.end(), [&](const Circle &d) {
          return std::hypot(x - d.c.x, y - d.c.y) <= d.r;
        });
      };
      for (const Circle &d : disks) out.truth.push_back(truth_circle(d));
      break;
    }
    case PhantomKind::gap_circle: {
      const Circle ring{{s / 2, s / 2}, spec.radius};
      require_circle_inside(ring, half_w, spec.size);
      const double gap = spec.gap_degrees;
      const double centre = spec.gap_center_degrees;
      dark = [=](double x, double y) {
        if (std::abs(std::hypot(x - ring.c.x, y - ring.c.y) - ring.r) > half_w) return false;
        const double a = std::atan2(y - ring.c.y, x - ring.c.x) * 180.0 / std::numbers::pi;
        return angle_diff_deg(a, centre) > 0.5 * gap;
      };
      out.truth = {truth_circle(ring)};
      break;
    }
    case PhantomKind::t_tube: {
      const double w = spec.tube_width;
      const double bx0 = 0.12 * s, bx1 = 0.88 * s, by0 = 0.16 * s, by1 = by0 + w;
      const double sx0 = s / 2 - w / 2, sx1 = s / 2 + w / 2, sy1 = 0.88 * s;
      require_inside(bx0 - spec.line_width, by0 - spec.line_width, bx1 + spec.line_width,
                     sy1 + spec.line_width, spec.size);
      if (sy1 <= by1 + 1.0) throw ValidationError("phantom.tube_width too large for the image");
      auto lumen_distance = [=](double x, double y) {
        return std::min(box_distance(x, y, bx0, by0, bx1, by1),
                        box_distance(x, y, sx0, by0, sx1, sy1));
      };
      dark = [=](double x, double y) {
        const double d = lumen_distance(x, y);
        return d > 0.0 && d <= spec.line_width;
      };
      // Clockwise on screen.
      out.interior = {{bx0, by0}, {bx1, by0}, {bx1, by1}, {sx1, by1},
                      {sx1, sy1}, {sx0, sy1}, {sx0, by1}, {bx0, by1}};
      out.truth = {out.interior};
      break;
    }
    case PhantomKind::n_blob_plate: {
      std::vector<Circle> blobs;
      const double scale = s / 256.0;
      for (int i = 0; i < spec.blob_count; ++i) {
        const auto &b = blob_layout[static_cast<std::size_t>(i)];
        blobs.push_back({{b[0] * scale, b[1] * scale}, b[2] * scale});
      }
      for (const Circle &b : blobs) require_circle_inside(b, 0.0, spec.size);
      dark = [=](double x, double y) {
        return std::any_of(blobs.begin(), blobs.end(), [&](const Circle &b) {
          return std::hypot(x - b.c.x, y - b.c.y) <= b.r;
        });
      };
      for (const Circle &b : blobs) out.truth.push_back(truth_circle(b));
      break;
    }
  }

  constexpr int ss = 4;
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-spec.noise, spec.noise);
  Grid<double> values(spec.size, spec.size);
  for (int y = 0; y < spec.size; ++y) {
    for (int x = 0; x < spec.size; ++x) {
      int hits = 0;
      for (int j = 0; j < ss; ++j) {
        for (int i = 0; i < ss; ++i) {
          const double px = x - 0.5 + (i + 0.5) / ss;
          const double py = y - 0.5 + (j + 0.5) / ss;
          if (dark(px, py)) ++hits;
        }
      }
      double v = 1.0 - double(hits) / (ss * ss);
      if (spec.invert) v = 1.0 - v;
      if (spec.noise > 0.0) v += jitter(rng);
      values(x, y) = std::clamp(v, 0.0, 1.0);
    }
  }
  out.image = GrayImage(std::move(values));
  return out;
}

} // namespace pmseg
