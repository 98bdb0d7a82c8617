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

#include "pmseg/force_field.hpp"

#include "pmseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace pmseg {

std::string_view to_string(TransferKind kind)
{
  switch (kind) {
    case TransferKind::inverse_power: return "inverse_power";
    case TransferKind::exponential: return "exponential";
    case TransferKind::arctan: return "arctan";
  }
  return "exponential";
}

TransferKind parse_transfer_kind(std::string_view name)
{
  if (name == "inverse_power") return TransferKind::inverse_power;
  if (name == "exponential") return TransferKind::exponential;
  if (name == "arctan") return TransferKind::arctan;
  throw ValidationError("unknown transfer kind: " + std::string(name));
}

void ForceFieldParams::validate() const
{
  if (!(h > 0.0 && h <= 2.0)) {
    throw ValidationError("field.h must lie in (0, 2], got " + std::to_string(h));
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("field.k must be > 0");
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("field.p must be > 0");
  if (!(r_max >= 1.0)) throw ValidationError("field.r_max must be at least 1 pixel");
  if (!(r_max >= h)) throw ValidationError("field.r_max must be >= field.h");
}

PotentialField::PotentialField(Grid<double> values) : values_(std::move(values))
{
  for (double v : values_.values()) {
    if (!std::isfinite(v)) throw ValidationError("potential must be finite");
  }
}

double transfer(double r, const ForceFieldParams &params)
{
  if (!(r > 0.0)) throw ValidationError("transfer distance must be > 0");
  const double z = params.k * std::pow(r, params.p);
  switch (params.kind) {
    case TransferKind::inverse_power: return 1.0 / z;
    case TransferKind::exponential: return std::exp(-z);
    case TransferKind::arctan: return std::numbers::pi / 2.0 - std::atan(z);
  }
  return 0.0;
}

namespace {

// Largest |dx| (or |dy|) that can satisfy r < r_max, capped by the grid.
int window_extent(const ForceFieldParams &params, int width, int height)
{
  const int cap = std::max(width, height);
  if (!std::isfinite(params.r_max)) return cap;
  const double planar2 = params.r_max * params.r_max - params.h * params.h;
  if (planar2 <= 0.0) return -1;
  return std::min(cap, static_cast<int>(std::ceil(std::sqrt(planar2))));
}

bool within_cutoff(double r, const ForceFieldParams &params)
{
  return !std::isfinite(params.r_max) || r < params.r_max;
}

} // namespace

PotentialField compute_potential(const EdgeMap &edges, const ForceFieldParams &params)
{
  params.validate();
  const int w = edges.width();
  const int h = edges.height();
  Grid<double> out(w, h, 0.0);
  const int ext = window_extent(params, w, h);
  if (ext < 0) return PotentialField(std::move(out));

  const int side = 2 * ext + 1;
  std::vector<double> kernel(static_cast<std::size_t>(side) * side, 0.0);
  const double h2 = params.h * params.h;
  for (int dy = -ext; dy <= ext; ++dy) {
    for (int dx = -ext; dx <= ext; ++dx) {
      const double r = std::sqrt(double(dx * dx + dy * dy) + h2);
      if (within_cutoff(r, params)) {
        kernel[static_cast<std::size_t>(dy + ext) * side + (dx + ext)] = transfer(r, params);
      }
    }
  }

  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      const double g = edges(sx, sy);
      if (g == 0.0) continue;
      const int y0 = std::max(0, sy - ext), y1 = std::min(h - 1, sy + ext);
      const int x0 = std::max(0, sx - ext), x1 = std::min(w - 1, sx + ext);
      for (int y = y0; y <= y1; ++y) {
        const double *krow = &kernel[static_cast<std::size_t>(y - sy + ext) * side];
        for (int x = x0; x <= x1; ++x) {
          out(x, y) += g * krow[x - sx + ext];
        }
      }
    }
  }
  return PotentialField(std::move(out));
}

PotentialField compute_potential_direct(const EdgeMap &edges, const ForceFieldParams &params)
{
  params.validate();
  const int w = edges.width();
  const int h = edges.height();
  Grid<double> out(w, h, 0.0);
  const int ext = window_extent(params, w, h);
  if (ext < 0) return PotentialField(std::move(out));
  const double h2 = params.h * params.h;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      const int y0 = std::max(0, y - ext), y1 = std::min(h - 1, y + ext);
      const int x0 = std::max(0, x - ext), x1 = std::min(w - 1, x + ext);
      for (int sy = y0; sy <= y1; ++sy) {
        for (int sx = x0; sx <= x1; ++sx) {
          const double g = edges(sx, sy);
          if (g == 0.0) continue;
          const double ddx = x - sx, ddy = y - sy;
          const double r = std::sqrt(ddx * ddx + ddy * ddy + h2);
          if (within_cutoff(r, params)) acc += g * transfer(r, params);
        }
      }
      out(x, y) = acc;
    }
  }
  return PotentialField(std::move(out));
}

double potential_at(const EdgeMap &edges, const ForceFieldParams &params, Vec2 pos)
{
  if (!(params.h > 0.0)) throw ValidationError("field.h must be > 0");
  const double h2 = params.h * params.h;
  double acc = 0.0;
  for (int sy = 0; sy < edges.height(); ++sy) {
    for (int sx = 0; sx < edges.width(); ++sx) {
      const double g = edges(sx, sy);
      if (g == 0.0) continue;
      const double ddx = pos.x - sx, ddy = pos.y - sy;
      const double r = std::sqrt(ddx * ddx + ddy * ddy + h2);
      if (within_cutoff(r, params)) acc += g * transfer(r, params);
    }
  }
  return acc;
}

VectorField compute_force(const PotentialField &pot)
{
  return VectorField{derivative_x(pot.grid()), derivative_y(pot.grid())};
}

Vec2 sample_force(const VectorField &field, Vec2 pos)
{
  const int w = field.width();
  const int h = field.height();
  const double x = std::clamp(pos.x, 0.0, double(w - 1));
  const double y = std::clamp(pos.y, 0.0, double(h - 1));
  const int x0 = std::min(static_cast<int>(std::floor(x)), std::max(0, w - 2));
  const int y0 = std::min(static_cast<int>(std::floor(y)), std::max(0, h - 2));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double tx = x - x0;
  const double ty = y - y0;

  auto lerp2 = [&](const Grid<double> &g) {
    const double top = (1.0 - tx) * g(x0, y0) + tx * g(x1, y0);
    const double bottom = (1.0 - tx) * g(x0, y1) + tx * g(x1, y1);
    return (1.0 - ty) * top + ty * bottom;
  };
  return {lerp2(field.fx), lerp2(field.fy)};
}

PotentialField rescale_potential(const PotentialField &pot, double peak)
{
  Grid<double> out = pot.grid();
  const auto v = out.values();
  const double hi = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (hi > 0.0) {
    for (double &x : v) x *= peak / hi;
  }
  return PotentialField(std::move(out));
}

} // namespace pmseg
