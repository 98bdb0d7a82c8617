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

#ifndef PMSEG_OVERLAY_HPP
#define PMSEG_OVERLAY_HPP

#include "pmseg/geometry.hpp"
#include "pmseg/image.hpp"
#include "pmseg/image_io.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pmseg {

namespace colors {
inline constexpr Rgb snake{0, 255, 0};
inline constexpr Rgb burn{0, 0, 255};
inline constexpr Rgb front{255, 0, 0};
inline constexpr Rgb child{0, 255, 255};
inline constexpr Rgb init{255, 255, 0};
} // namespace colors

/// One overlay layer: either a pixel mask or a set of polylines.
struct OverlayLayer
{
  std::vector<Polyline> polylines;
  Grid<std::uint8_t> mask;  ///< recolors nonzero pixels; ignored when empty
  Rgb color{255, 255, 255};
  bool closed = true;       ///< connect the last vertex of each polyline to the first

  static OverlayLayer from_mask(Grid<std::uint8_t> mask, Rgb color);
  static OverlayLayer from_polylines(std::vector<Polyline> lines, Rgb color, bool closed = true);
};

/// Pixels visited by 1-px Bresenham segments between the rounded vertices,
/// each listed once, clipped to the image.
std::vector<std::size_t> rasterize_polyline(std::span<const Vec2> line, int width, int height,
                                            bool closed);

/// Burned pixels with a 4-neighbor that is not burned.
Grid<std::uint8_t> fire_front(const Grid<std::uint8_t> &burned);

/// Grayscale base converted to RGB, then every layer painted in order.
RgbImage render_overlay(const GrayImage &image, std::span<const OverlayLayer> layers);

} // namespace pmseg

#endif // PMSEG_OVERLAY_HPP
