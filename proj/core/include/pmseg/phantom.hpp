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

#ifndef PMSEG_PHANTOM_HPP
#define PMSEG_PHANTOM_HPP

#include "pmseg/geometry.hpp"
#include "pmseg/image.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pmseg {

enum class PhantomKind { two_circle, three_circle, gap_circle, t_tube, n_blob_plate };

std::string_view to_string(PhantomKind kind);
PhantomKind parse_phantom_kind(std::string_view name);

/// Synthetic test scene. Shapes are drawn dark (0) on a light (1)
/// background with 4x4 supersampled antialiasing, unless `invert` is set.
///
/// Geometry per kind (image is size x size, centered unless noted):
///  - two_circle:   ring of radius `outer_radius` containing a ring of radius
///                  `inner_radius` (up and to the right of center)
///  - three_circle: three filled disks
///  - gap_circle:   ring of radius `radius` with `gap_degrees` missing,
///                  centered on angle `gap_center_degrees`
///  - t_tube:       T-shaped tube with walls of width `line_width` around a
///                  lumen `tube_width` wide
///  - n_blob_plate: `blob_count` disjoint filled disks (1..7) on a plate
struct PhantomSpec
{
  PhantomKind kind = PhantomKind::two_circle;
  int size = 256;
  double noise = 0.0;           ///< additive uniform noise amplitude in [0, 1)
  std::uint64_t seed = 1;
  bool invert = false;
  double line_width = 2.0;      ///< ring and wall thickness
  double outer_radius = 80.0;
  double inner_radius = 15.0;
  double radius = 40.0;
  double gap_degrees = 40.0;
  double gap_center_degrees = 0.0;
  double tube_width = 30.0;
  int blob_count = 7;

  void validate() const;
};

struct Phantom
{
  GrayImage image;
  std::vector<Polyline> truth;  ///< analytic object boundaries (clockwise)
  Polyline interior;            ///< t_tube lumen outline; empty otherwise
};

/// Throws ValidationError when the spec is invalid or a shape would come
/// closer than 4 px to the image border.
Phantom generate_phantom(const PhantomSpec &spec);

} // namespace pmseg

#endif // PMSEG_PHANTOM_HPP
