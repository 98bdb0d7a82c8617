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

#include "pmseg/csv.hpp"

#include "pmseg/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pmseg {

namespace {

void append(std::string &out, const char *fmt, auto... args)
{
  char buf[96];
  const int n = std::snprintf(buf, sizeof buf, fmt, args...);
  if (n > 0) out.append(buf, static_cast<std::size_t>(std::min<int>(n, sizeof buf - 1)));
}

} // namespace

std::string contour_csv(std::span<const Vec2> contour)
{
  std::string out = "index,x,y\n";
  for (std::size_t i = 0; i < contour.size(); ++i) {
    append(out, "%zu,%.6f,%.6f\n", i, contour[i].x, contour[i].y);
  }
  return out;
}

std::string grid_csv(const Grid<double> &grid)
{
  std::string out;
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      append(out, x == 0 ? "%.9e" : ",%.9e", grid(x, y));
    }
    out += '\n';
  }
  return out;
}

std::string profile_csv(std::span<const ProfileSample> samples)
{
  std::string out = "r,value\n";
  for (const ProfileSample &s : samples) append(out, "%.6f,%.9e\n", s.r, s.value);
  return out;
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw IoError("write failed: " + path.string());
}

Polyline parse_contour_csv(const std::string &text)
{
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "index,x,y") throw IoError("missing contour CSV header");
  Polyline out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t index = 0;
    double x = 0.0, y = 0.0;
    if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &index, &x, &y) != 3 || index != out.size()) {
      throw IoError("malformed contour CSV row: " + line);
    }
    out.push_back({x, y});
  }
  return out;
}

} // namespace pmseg
