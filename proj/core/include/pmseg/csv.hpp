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

#ifndef PMSEG_CSV_HPP
#define PMSEG_CSV_HPP

#include "pmseg/geometry.hpp"
#include "pmseg/grid.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pmseg {

/// "index,x,y" header followed by one row per vertex, 6 decimals.
std::string contour_csv(std::span<const Vec2> contour);

/// One row per grid row, values in %.9e so the text is byte-stable.
std::string grid_csv(const Grid<double> &grid);

struct ProfileSample
{
  double r;
  double value;
};

/// "r,value" header followed by the samples, 6 decimals for r and %.9e for
/// the value.
std::string profile_csv(std::span<const ProfileSample> samples);

/// Writes `text` to `path`; throws IoError on failure.
void write_text(const std::filesystem::path &path, const std::string &text);

/// Parses the output of contour_csv(). Throws IoError on malformed input.
Polyline parse_contour_csv(const std::string &text);

} // namespace pmseg

#endif // PMSEG_CSV_HPP
