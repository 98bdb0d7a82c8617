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

#include "pmseg/image.hpp"

#include "pmseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pmseg {

namespace {

void require_shape(int width, int height)
{
  if (width < 3 || height < 3) {
    throw ValidationError("image must be at least 3x3, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
}

} // namespace

GrayImage::GrayImage(Grid<double> values) : values_(std::move(values))
{
  require_shape(values_.width(), values_.height());
  for (double v : values_.values()) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ValidationError("gray value outside [0, 1]: " + std::to_string(v));
    }
  }
}

GrayImage::GrayImage(int width, int height, double fill)
  : GrayImage(Grid<double>(width, height, fill))
{}

EdgeMap::EdgeMap(Grid<double> values) : values_(std::move(values))
{
  require_shape(values_.width(), values_.height());
  for (double v : values_.values()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("edge strength must be finite and >= 0");
    }
  }
}

double EdgeMap::max_value() const
{
  const auto v = values_.values();
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

EdgeMap gradient_magnitude(const GrayImage &img)
{
  const Grid<double> dx = derivative_x(img.grid());
  const Grid<double> dy = derivative_y(img.grid());
  Grid<double> mag(img.width(), img.height());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    mag[i] = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
  }
  return EdgeMap(std::move(mag));
}

EdgeMap threshold_edges(const EdgeMap &edges, double t)
{
  if (!(t >= 0.0)) {
    throw ValidationError("edge threshold must be >= 0");
  }
  Grid<double> out = edges.grid();
  for (double &v : out.values()) {
    if (v < t) v = 0.0;
  }
  return EdgeMap(std::move(out));
}

GrayImage gaussian_smooth(const GrayImage &img, double sigma)
{
  if (!(sigma > 0.0)) return img;

  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    total += kernel[i + radius];
  }
  for (double &k : kernel) k /= total;

  const int w = img.width();
  const int h = img.height();
  Grid<double> tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * img(clamp_index(x + i, w), y);
      }
      tmp(x, y) = acc;
    }
  }
  Grid<double> out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * tmp(x, clamp_index(y + i, h));
      }
      out(x, y) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return GrayImage(std::move(out));
}

EdgeMap intensity_as_edges(const GrayImage &img, bool invert)
{
  Grid<double> out = img.grid();
  if (invert) {
    for (double &v : out.values()) v = 1.0 - v;
  }
  return EdgeMap(std::move(out));
}

} // namespace pmseg
