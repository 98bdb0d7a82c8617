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

#include <pmseg/csv.hpp>
#include <pmseg/error.hpp>
#include <pmseg/overlay.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

namespace pmseg {
namespace {

GrayImage gradient_image(int w, int h)
{
  Grid<double> g(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) g(x, y) = double(x + y) / double(w + h - 2);
  }
  return GrayImage(std::move(g));
}

std::size_t count_color(const RgbImage &img, Rgb color)
{
  std::size_t n = 0;
  for (const Rgb &px : img.values()) n += px == color;
  return n;
}

TEST(RenderOverlay, NoLayersIsGrayPassthrough)
{
  const GrayImage img = gradient_image(20, 10);
  const RgbImage out = render_overlay(img, {});
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 20; ++x) {
      const auto v = static_cast<std::uint8_t>(std::lround(img(x, y) * 255.0));
      EXPECT_EQ(out(x, y), (Rgb{v, v, v}));
    }
  }
}

TEST(RenderOverlay, ContourRecolorsExactlyItsPixels)
{
  const GrayImage img(40, 40, 0.5);
  const Polyline square{{5, 5}, {30, 5}, {30, 30}, {5, 30}};
  const std::vector<OverlayLayer> layers{OverlayLayer::from_polylines({square}, colors::snake)};
  const RgbImage out = render_overlay(img, layers);
  const std::vector<std::size_t> pixels = rasterize_polyline(square, 40, 40, true);
  EXPECT_EQ(pixels.size(), 4u * 25u);
  EXPECT_EQ(count_color(out, colors::snake), pixels.size());
  for (std::size_t idx : pixels) EXPECT_EQ(out.values()[idx], colors::snake);
}

TEST(RenderOverlay, BurnLayerRecolorsNPixels)
{
  const GrayImage img(32, 32, 0.25);
  Grid<std::uint8_t> burn(32, 32);
  std::size_t n = 0;
  for (int y = 3; y < 20; ++y) {
    for (int x = 7; x < 11 + y % 5; ++x) {
      burn(x, y) = 1;
      ++n;
    }
  }
  const std::vector<OverlayLayer> layers{OverlayLayer::from_mask(burn, colors::burn)};
  const RgbImage out = render_overlay(img, layers);
  EXPECT_EQ(count_color(out, colors::burn), n);
}

TEST(RenderOverlay, LaterLayersPaintOver)
{
  const GrayImage img(16, 16, 0.0);
  Grid<std::uint8_t> all(16, 16, 1);
  const std::vector<OverlayLayer> layers{
      OverlayLayer::from_mask(all, colors::burn),
      OverlayLayer::from_polylines({{{2, 8}, {13, 8}}}, colors::front, false)};
  const RgbImage out = render_overlay(img, layers);
  EXPECT_EQ(count_color(out, colors::front), 12u);
  EXPECT_EQ(count_color(out, colors::burn), 256u - 12u);
}

TEST(RasterizePolyline, ClipsAndDeduplicates)
{
  const Polyline line{{-5, 2}, {5, 2}, {5, 2}, {5, 20}};
  const std::vector<std::size_t> px = rasterize_polyline(line, 8, 8, false);
  const std::set<std::size_t> unique(px.begin(), px.end());
  EXPECT_EQ(unique.size(), px.size());
  for (std::size_t idx : px) EXPECT_LT(idx, 64u);
  // Row y=2 for x 0..5 and column x=5 for y 2..7 share the corner.
  EXPECT_EQ(px.size(), 11u);
}

TEST(FireFront, BorderOfBurnedBlock)
{
  Grid<std::uint8_t> burned(10, 10);
  for (int y = 2; y < 7; ++y) {
    for (int x = 2; x < 7; ++x) burned(x, y) = 1;
  }
  const Grid<std::uint8_t> front = fire_front(burned);
  std::size_t n = 0;
  for (std::uint8_t v : front.values()) n += v != 0;
  EXPECT_EQ(n, 16u);
  EXPECT_EQ(front(4, 4), 0);
  EXPECT_EQ(front(2, 4), 1);
}

TEST(ContourCsv, FormatIsFixed)
{
  const Polyline c{{1.0, 2.5}, {3.1234567, -0.0000004}};
  EXPECT_EQ(contour_csv(c), "index,x,y\n0,1.000000,2.500000\n1,3.123457,-0.000000\n");
}

TEST(ContourCsv, RoundTrip)
{
  const Polyline c = circle_polyline({20.25, 13.5}, 7.0, 17);
  const Polyline back = parse_contour_csv(contour_csv(c));
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(back[i].x, c[i].x, 5e-7);
    EXPECT_NEAR(back[i].y, c[i].y, 5e-7);
  }
  EXPECT_EQ(contour_csv(back), contour_csv(c));
}

TEST(ContourCsv, MalformedInputThrows)
{
  EXPECT_THROW(parse_contour_csv("x,y\n1,2\n"), IoError);
  EXPECT_THROW(parse_contour_csv("index,x,y\n1,2.0,3.0\n"), IoError);
  EXPECT_THROW(parse_contour_csv("index,x,y\n0,abc\n"), IoError);
}

TEST(GridCsv, Format)
{
  Grid<double> g(2, 2);
  g(0, 0) = 1.0;
  g(1, 0) = -0.5;
  g(1, 1) = 1e-20;
  EXPECT_EQ(grid_csv(g), "1.000000000e+00,-5.000000000e-01\n0.000000000e+00,1.000000000e-20\n");
}

TEST(ProfileCsv, Format)
{
  const std::vector<ProfileSample> s{{0.0, 2.0}, {0.1, 1.5}};
  EXPECT_EQ(profile_csv(s), "r,value\n0.000000,2.000000000e+00\n0.100000,1.500000000e+00\n");
}

TEST(WriteText, UnwritablePathThrowsIoError)
{
  test::TempDir dir("csv");
  EXPECT_NO_THROW(write_text(dir / "ok.csv", "a\n"));
  EXPECT_EQ(test::read_file(dir / "ok.csv"), "a\n");
  EXPECT_THROW(write_text(dir / "missing" / "x.csv", "a\n"), IoError);
}

} // namespace
} // namespace pmseg
