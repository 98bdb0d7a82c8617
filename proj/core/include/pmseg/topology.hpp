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

#ifndef PMSEG_TOPOLOGY_HPP
#define PMSEG_TOPOLOGY_HPP

#include "pmseg/geometry.hpp"
#include "pmseg/grid.hpp"

#include <cstdint>

namespace pmseg {

enum class Connectivity { four = 4, eight = 8 };

struct Labeling
{
  Grid<int> labels;  ///< 0 = background, components numbered from 1
  int count = 0;
};

/// Labels the connected components of nonzero mask pixels in raster-scan
/// order of their first pixel.
Labeling label_components(const Grid<std::uint8_t> &mask, Connectivity connectivity);

/// Moore-neighbor tracing of the outer boundary of the 8-connected
/// component containing `start`, which must be the component's first pixel
/// in raster order. Returns pixel centers, clockwise on screen. A single
/// pixel yields a one-element loop.
Polyline trace_boundary(const Grid<std::uint8_t> &mask, int start_x, int start_y);

/// Whether a component touches the outermost row or column of the grid.
bool touches_border(const Labeling &labeling, int label);

} // namespace pmseg

#endif // PMSEG_TOPOLOGY_HPP
