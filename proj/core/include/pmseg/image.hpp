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

#ifndef PMSEG_IMAGE_HPP
#define PMSEG_IMAGE_HPP

#include "pmseg/grid.hpp"

namespace pmseg {

/// Grayscale intensities normalized to [0, 1].
///
/// Construction validates that the raster is at least 3x3 and that every
/// value is finite and inside [0, 1].
class GrayImage
{
public:
  GrayImage() = default;
  explicit GrayImage(Grid<double> values);
  GrayImage(int width, int height, double fill = 0.0);

  int width() const { return values_.width(); }
  int height() const { return values_.height(); }
  double operator()(int x, int y) const { return values_(x, y); }
  const Grid<double> &grid() const { return values_; }

private:
  Grid<double> values_;
};

/// Nonnegative edge strengths with the dimensions of the source image.
class EdgeMap
{
public:
  EdgeMap() = default;
  explicit EdgeMap(Grid<double> values);

  int width() const { return values_.width(); }
  int height() const { return values_.height(); }
  double operator()(int x, int y) const { return values_(x, y); }
  const Grid<double> &grid() const { return values_; }
  double max_value() const;

private:
  Grid<double> values_;
};

/// Gradient magnitude sqrt(Dx^2 + Dy^2); central differences inside,
/// one-sided differences on the border.
EdgeMap gradient_magnitude(const GrayImage &img);

/// Zeroes every edge strength below `t`. Throws ValidationError for t < 0.
EdgeMap threshold_edges(const EdgeMap &edges, double t);

/// Separable Gaussian smoothing with replicated borders. sigma <= 0 returns
/// the input unchanged.
GrayImage gaussian_smooth(const GrayImage &img, double sigma);

/// Uses raw intensities as charge strengths (1 - value when `invert`).
EdgeMap intensity_as_edges(const GrayImage &img, bool invert);

} // namespace pmseg

#endif // PMSEG_IMAGE_HPP
