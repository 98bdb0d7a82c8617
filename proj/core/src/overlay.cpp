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

#include "pmseg/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace pmseg {

OverlayLayer OverlayLayer::from_mask(Grid<std::uint8_t> mask, Rgb color)
{
  OverlayLayer layer;
  layer.mask = std::move(mask);
  layer.color = color;
  return layer;
}

OverlayLayer OverlayLayer::from_polylines(std::vector<Polyline> lines, Rgb color, bool closed)
{
  OverlayLayer layer;
  layer.polylines = std::move(lines);
  layer.color = color;
  layer.closed = closed;
  return layer;
}

std::vector<std::size_t> rasterize_polyline(std::span<const Vec2> line, int width, int height,
                                            bool closed)
{
  std::vector<std::size_t> out;
  if (line.empty() || width <= 0 || height <= 0) return out;
  auto plot = [&](int x, int y) {
    if (x >= 0 && y >= 0 && x < width && y < height) {
      out.push_back(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                    static_cast<std::size_t>(x));
    }
  };
  auto segment = [&](Vec2 a, Vec2 b) {
    int x0 = static_cast<int>(std::lround(a.x)), y0 = static_cast<int>(std::lround(a.y));
    const int x1 = static_cast<int>(std::lround(b.x)), y1 = static_cast<int>(std::lround(b.y));
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      plot(x0, y0);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) { err += dy; x0 += sx; }
      if (e2 <= dx) { err += dx; y0 += sy; }
    }
  };
  if (line.size() == 1) {
    segment(line[0], line[0]);
  }
  for (std::size_t i = 0; i + 1 < line.size(); ++i) segment(line[i], line[i + 1]);
  if (closed && line.size() > 2) segment(line.back(), line.front());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Grid<std::uint8_t> fire_front(const Grid<std::uint8_t> &burned)
{
  Grid<std::uint8_t> front(burned.width(), burned.height());
  for (int y = 0; y < burned.height(); ++y) {
    for (int x = 0; x < burned.width(); ++x) {
      if (!burned(x, y)) continue;
      const bool edge = (x > 0 && !burned(x - 1, y)) || (x + 1 < burned.width() && !burned(x + 1, y)) ||
                        (y > 0 && !burned(x, y - 1)) || (y + 1 < burned.height() && !burned(x, y + 1));
      if (edge) front(x, y) = 1;
    }
  }
  return front;
}

RgbImage render_overlay(const GrayImage &image, std::span<const OverlayLayer> layers)
{
  RgbImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const auto v = static_cast<std::uint8_t>(std::lround(std::clamp(image(x, y), 0.0, 1.0) * 255.0));
      out(x, y) = {v, v, v};
    }
  }
  for (const OverlayLayer &layer : layers) {
    if (!layer.mask.empty()) {
      const int w = std::min(layer.mask.width(), out.width());
      const int h = std::min(layer.mask.height(), out.height());
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (layer.mask(x, y)) out(x, y) = layer.color;
        }
      }
    }
    for (const Polyline &line : layer.polylines) {
      for (std::size_t idx : rasterize_polyline(line, out.width(), out.height(), layer.closed)) {
        out[idx] = layer.color;
      }
    }
  }
  return out;
}

} // namespace pmseg
