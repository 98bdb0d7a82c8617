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

#ifndef PMSEG_GRID_HPP
#define PMSEG_GRID_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pmseg {

/// Continuous position or displacement in pixel units.
///
/// Image coordinates: x grows to the right, y grows downwards, and the
/// integer position (i, j) is the center of pixel (i, j).
struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 &operator+=(const Vec2 &o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2 &operator-=(const Vec2 &o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2 &operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2 &a, const Vec2 &b) { return norm(a - b); }

/// Dense row-major 2-D raster.
template <class T>
class Grid
{
public:
  using value_type = T;

  Grid() = default;
  Grid(int width, int height, T fill = T{})
    : width_(width), height_(height),
      data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill)
  {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool contains(int x, int y) const
  {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t index(int x, int y) const
  {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  T &operator()(int x, int y) { return data_[index(x, y)]; }
  const T &operator()(int x, int y) const { return data_[index(x, y)]; }
  T &operator[](std::size_t i) { return data_[i]; }
  const T &operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  friend bool operator==(const Grid &, const Grid &) = default;

private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Clamps a coordinate into [0, n - 1].
inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

/// Central differences in the interior, one-sided at the border.
template <class T>
Grid<double> derivative_x(const Grid<T> &g)
{
  Grid<double> d(g.width(), g.height());
  const int w = g.width();
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      if (w == 1) {
        d(x, y) = 0.0;
      } else if (x == 0) {
        d(x, y) = double(g(1, y)) - double(g(0, y));
      } else if (x == w - 1) {
        d(x, y) = double(g(x, y)) - double(g(x - 1, y));
      } else {
        d(x, y) = 0.5 * (double(g(x + 1, y)) - double(g(x - 1, y)));
      }
    }
  }
  return d;
}

template <class T>
Grid<double> derivative_y(const Grid<T> &g)
{
  Grid<double> d(g.width(), g.height());
  const int h = g.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (h == 1) {
        d(x, y) = 0.0;
      } else if (y == 0) {
        d(x, y) = double(g(x, 1)) - double(g(x, 0));
      } else if (y == h - 1) {
        d(x, y) = double(g(x, y)) - double(g(x, y - 1));
      } else {
        d(x, y) = 0.5 * (double(g(x, y + 1)) - double(g(x, y - 1)));
      }
    }
  }
  return d;
}

} // namespace pmseg

#endif // PMSEG_GRID_HPP
