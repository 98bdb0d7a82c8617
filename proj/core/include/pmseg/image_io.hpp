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

#ifndef PMSEG_IMAGE_IO_HPP
#define PMSEG_IMAGE_IO_HPP

#include "pmseg/grid.hpp"
#include "pmseg/image.hpp"

#include <array>
#include <cstdint>
#include <filesystem>

namespace pmseg {

using Rgb = std::array<std::uint8_t, 3>;
using RgbImage = Grid<Rgb>;

/// Reads binary/ASCII PGM (P5/P2, 8 or 16 bit), binary PPM (P6) and PNG
/// (gray, gray+alpha, RGB, RGBA; 8 or 16 bit). Color is converted to
/// luminance with Rec. 601 weights. Values are scaled to [0, 1].
///
/// Throws IoError when the file is unreadable, in an unsupported format, or
/// zero-sized.
GrayImage load_image(const std::filesystem::path &path);

/// Writes an 8-bit grayscale raster; the format follows the extension
/// (".png", otherwise binary PGM).
void save_gray(const std::filesystem::path &path, const Grid<std::uint8_t> &pixels);

/// Quantizes [0, 1] values to 8 bit and writes them with save_gray().
void save_image(const std::filesystem::path &path, const GrayImage &img);

/// Writes a 0/255 mask.
void save_mask(const std::filesystem::path &path, const Grid<std::uint8_t> &mask);

/// Writes a color raster (".png", otherwise binary PPM).
void save_rgb(const std::filesystem::path &path, const RgbImage &img);

/// Rescales arbitrary finite values linearly onto 0..255.
Grid<std::uint8_t> normalize_to_bytes(const Grid<double> &values);

} // namespace pmseg

#endif // PMSEG_IMAGE_IO_HPP
