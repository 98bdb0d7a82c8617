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

#include "pmseg/topology.hpp"

#include <array>
#include <vector>

namespace pmseg {

namespace {

// Clockwise on screen, starting west.
constexpr std::array<std::array<int, 2>, 8> moore = {{
  {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1},
}};

int direction_of(int dx, int dy)
{
  for (int d = 0; d < 8; ++d) {
    if (moore[d][0] == dx && moore[d][1] == dy) return d;
  }
  return 0;
}

} // namespace

Labeling label_components(const Grid<std::uint8_t> &mask, Connectivity connectivity)
{
  Labeling out{Grid<int>(mask.width(), mask.height(), 0), 0};
  std::vector<std::array<int, 2>> stack;
  const bool eight = connectivity == Connectivity::eight;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y) || out.labels(x, y)) continue;
      const int label = ++out.count;
      out.labels(x, y) = label;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (!mask.contains(nx, ny) || !mask(nx, ny) || out.labels(nx, ny)) continue;
            out.labels(nx, ny) = label;
            stack.push_back({nx, ny});
          }
        }
      }
    }
  }
  return out;
}

Polyline trace_boundary(const Grid<std::uint8_t> &mask, int start_x, int start_y)
{
  auto on = [&](int x, int y) { return mask.contains(x, y) && mask(x, y) != 0; };

  Polyline loop;
  loop.push_back({double(start_x), double(start_y)});

  // The start is the first pixel in raster order, so its west neighbor is
  // background and serves as the initial backtrack point.
  int cx = start_x, cy = start_y;
  int back = direction_of(-1, 0);
  int first_move = -1;
  const std::size_t limit = 4 * mask.size() + 8;

  while (loop.size() < limit) {
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (back + k) % 8;
      if (on(cx + moore[d][0], cy + moore[d][1])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel

    const int nx = cx + moore[found][0];
    const int ny = cy + moore[found][1];
    // Jacob's stopping criterion: back at the start, leaving the same way.
    if (cx == start_x && cy == start_y) {
      if (first_move < 0) {
        first_move = found;
      } else if (found == first_move) {
        loop.pop_back();  // the start was re-appended on arrival
        break;
      }
    }
    // New backtrack: the neighbor checked just before `found`, expressed
    // relative to the new position.
    const int pd = (found + 7) % 8;
    const int bx = cx + moore[pd][0] - nx;
    const int by = cy + moore[pd][1] - ny;
    back = direction_of(bx, by);
    cx = nx;
    cy = ny;
    loop.push_back({double(cx), double(cy)});
  }
  return loop;
}

bool touches_border(const Labeling &labeling, int label)
{
  const Grid<int> &g = labeling.labels;
  const int w = g.width(), h = g.height();
  for (int x = 0; x < w; ++x) {
    if (g(x, 0) == label || g(x, h - 1) == label) return true;
  }
  for (int y = 0; y < h; ++y) {
    if (g(0, y) == label || g(w - 1, y) == label) return true;
  }
  return false;
}

} // namespace pmseg
