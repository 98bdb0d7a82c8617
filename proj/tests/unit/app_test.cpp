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

#include <pmseg/error.hpp>
#include <pmseg_app/config.hpp>
#include <pmseg_app/run.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace pmseg::app {
namespace {

namespace fs = std::filesystem;

std::set<std::string> files_on_disk(const fs::path &dir)
{
  std::set<std::string> out;
  for (const auto &entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) out.insert(fs::relative(entry.path(), dir).generic_string());
  }
  return out;
}

std::set<std::string> manifest_files(const nlohmann::json &manifest)
{
  std::set<std::string> out;
  for (const auto &f : manifest.at("files")) out.insert(f.at("path").get<std::string>());
  return out;
}

TEST(Pipeline, NamesRoundTrip)
{
  for (Pipeline p : {Pipeline::phantom, Pipeline::force_field, Pipeline::snake_multi, Pipeline::gac}) {
    EXPECT_EQ(parse_pipeline(to_string(p)), p);
  }
  EXPECT_EQ(to_string(Pipeline::snake_multi), "snake-multi");
  EXPECT_THROW(parse_pipeline("balloon"), ValidationError);
}

TEST(ParseConfig, KeysReplaceDefaults)
{
  const RunConfig cfg = parse_config("[run]\npipeline = gac\n[field]\nh = 1.5\n"
                                     "[gac]\nlambda = -0.5\nattract = true\n");
  EXPECT_EQ(cfg.pipeline, Pipeline::gac);
  EXPECT_EQ(cfg.field.force.h, 1.5);
  EXPECT_EQ(cfg.gac.lambda, -0.5);
  EXPECT_TRUE(cfg.gac.attract);
}

TEST(ParseConfig, RejectsUnknownAndMalformed)
{
  EXPECT_THROW(parse_config("[field]\nheight = 1\n"), ValidationError);
  EXPECT_THROW(parse_config("[fields]\nh = 1\n"), ValidationError);
  EXPECT_THROW(parse_config("[field]\nh = one\n"), ValidationError);
  EXPECT_THROW(parse_config("[field]\nh = 1.0x\n"), ValidationError);
  EXPECT_THROW(parse_config("[gac]\nattract = maybe\n"), ValidationError);
  EXPECT_THROW(parse_config("[run]\npipeline = nope\n"), ValidationError);
}

TEST(ParseConfig, PlaneHeightAboveTwoFailsValidation)
{
  EXPECT_THROW(parse_config("[field]\nh = 3\n"), ValidationError);
}

TEST(ParseConfig, OverridesWin)
{
  ConfigOverrides o;
  o.pipeline = Pipeline::gac;
  o.seed = 42;
  o.overlay_every = 7;
  o.phantom = PhantomKind::three_circle;
  const RunConfig cfg =
      parse_config("[run]\npipeline = snake-multi\nseed = 3\n[phantom]\nkind = t-tube\n", o);
  EXPECT_EQ(cfg.pipeline, Pipeline::gac);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.overlay_every, 7);
  EXPECT_EQ(cfg.phantom.kind, PhantomKind::three_circle);
}

TEST(LoadConfig, MissingFileIsIoError)
{
  EXPECT_THROW(load_config("/nonexistent/pmseg.ini"), IoError);
}

TEST(DefaultConfig, PresetsValidateForEveryPhantom)
{
  for (PhantomKind k : {PhantomKind::two_circle, PhantomKind::three_circle, PhantomKind::gap_circle,
                        PhantomKind::t_tube, PhantomKind::n_blob_plate}) {
    for (Pipeline p : {Pipeline::force_field, Pipeline::snake_multi, Pipeline::gac}) {
      const RunConfig cfg = make_default_config(p, k);
      EXPECT_NO_THROW(cfg.validate()) << to_string(k) << " " << to_string(p);
      const SnakeContour seed = snake_seed_contour(cfg, 256, 256);
      EXPECT_EQ(seed.orientation, Orientation::clockwise);
      EXPECT_NO_THROW(gac_seed_region(cfg, 256, 256).validate());
    }
  }
}

TEST(DefaultConfig, ConfigEchoRoundTrips)
{
  const RunConfig cfg = make_default_config(Pipeline::gac, PhantomKind::three_circle);
  const nlohmann::json j = cfg.to_json();
  std::string ini;
  for (const auto &[section, keys] : j.items()) {
    ini += "[" + section + "]\n";
    for (const auto &[key, value] : keys.items()) {
      ini += key + " = " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
  }
  EXPECT_EQ(parse_config(ini).to_json(), j);
}

TEST(SeedContour, RectBecomesClockwise)
{
  RunConfig cfg = make_default_config(Pipeline::snake_multi);
  cfg.snake_seed = "rect(10,10,30,20)";
  const SnakeContour c = snake_seed_contour(cfg, 64, 64);
  EXPECT_EQ(c.orientation, Orientation::clockwise);
  EXPECT_GT(signed_area(c.vertices), 0.0);
  cfg.snake_seed = "";
  const SnakeContour d = snake_seed_contour(cfg, 64, 64);
  EXPECT_NEAR(centroid(d.vertices).x, 31.5, 1e-9);
}

TEST(Run, PhantomManifestListsExactlyTheFiles)
{
  test::TempDir dir("run");
  RunConfig cfg = make_default_config(Pipeline::phantom, PhantomKind::three_circle, 128);
  const RunOutcome out = run(cfg, dir.path());
  EXPECT_EQ(out.exit_code, exit_ok);
  EXPECT_EQ(manifest_files(out.manifest), files_on_disk(dir.path()));
  EXPECT_TRUE(files_on_disk(dir.path()).count("manifest.json"));
  EXPECT_TRUE(files_on_disk(dir.path()).count("input.png"));
  EXPECT_EQ(out.manifest.at("pipeline"), "phantom");
  EXPECT_EQ(out.manifest.at("config"), cfg.to_json());
}

TEST(Run, GacWritesContoursAndIsDeterministic)
{
  test::TempDir a("gac_a"), b("gac_b");
  RunConfig cfg = make_default_config(Pipeline::gac, PhantomKind::three_circle, 128);
  cfg.overlay_every = 50;
  const RunOutcome ra = run(cfg, a.path());
  const RunOutcome rb = run(cfg, b.path());
  EXPECT_EQ(ra.exit_code, exit_ok);
  EXPECT_EQ(manifest_files(ra.manifest), files_on_disk(a.path()));
  EXPECT_EQ(files_on_disk(a.path()), files_on_disk(b.path()));
  int contours = 0;
  for (const std::string &f : files_on_disk(a.path())) {
    if (f.rfind("contour_", 0) == 0) {
      ++contours;
      EXPECT_EQ(test::read_file(a / f), test::read_file(b / f)) << f;
    }
  }
  EXPECT_EQ(contours, 3);
}

TEST(Run, InvalidPlaneHeightStopsBeforeComputing)
{
  test::TempDir dir("bad");
  RunConfig cfg = make_default_config(Pipeline::force_field, PhantomKind::two_circle, 128);
  cfg.field.force.h = 3.0;
  try {
    run(cfg, dir.path());
    FAIL() << "expected RunFailure";
  } catch (const RunFailure &e) {
    EXPECT_EQ(e.exit_code(), exit_validation);
  }
  EXPECT_FALSE(fs::exists(dir / "input.png"));
  EXPECT_FALSE(fs::exists(dir / "potential.csv"));
}

TEST(Run, MissingInputImageIsIoError)
{
  test::TempDir dir("io");
  RunConfig cfg = make_default_config(Pipeline::gac);
  cfg.input = (dir / "absent.png").string();
  try {
    run(cfg, dir / "out");
    FAIL() << "expected RunFailure";
  } catch (const RunFailure &e) {
    EXPECT_EQ(e.exit_code(), exit_io);
  }
}

TEST(Run, UnwritableOutputIsIoError)
{
  test::TempDir dir("io");
  test::write_file(dir / "blocker", "x");
  RunConfig cfg = make_default_config(Pipeline::phantom, PhantomKind::two_circle, 128);
  try {
    run(cfg, dir / "blocker" / "out");
    FAIL() << "expected RunFailure";
  } catch (const RunFailure &e) {
    EXPECT_EQ(e.exit_code(), exit_io);
  }
}

TEST(Run, FileInputRunsForceField)
{
  test::TempDir dir("file");
  Grid<std::uint8_t> img(48, 48, 255);
  for (int y = 14; y < 34; ++y) {
    for (int x = 14; x < 34; ++x) img(x, y) = 0;
  }
  test::write_file(dir / "square.pgm", test::pgm_bytes(img));
  RunConfig cfg = make_default_config(Pipeline::force_field);
  cfg.input = (dir / "square.pgm").string();
  const RunOutcome out = run(cfg, dir / "out");
  EXPECT_EQ(out.exit_code, exit_ok);
  const std::set<std::string> files = files_on_disk(dir / "out");
  for (const char *f : {"potential.csv", "force_x.csv", "force_y.csv", "profile.csv", "edges.png"}) {
    EXPECT_TRUE(files.count(f)) << f;
  }
  EXPECT_EQ(manifest_files(out.manifest), files);
}

} // namespace
} // namespace pmseg::app
