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

#include "pmseg_app/run.hpp"

#include <pmseg/burning.hpp>
#include <pmseg/csv.hpp>
#include <pmseg/error.hpp>
#include <pmseg/image_io.hpp>
#include <pmseg/overlay.hpp>
#include <pmseg/phantom.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace pmseg::app {

namespace {

std::string numbered(const char *stem, std::size_t index, const char *ext)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%zu%s", stem, index, ext);
  return buf;
}

std::string frame_name(std::string_view stage, int step)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "frame_%.*s_%06d.png", static_cast<int>(stage.size()),
                stage.data(), step);
  return buf;
}

// Writes files into the output directory and keeps the manifest entries.
class Outputs
{
public:
  explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void text(const std::string &name, const std::string &content, const char *kind)
  {
    write_text(dir_ / name, content);
    add(name, kind);
  }
  void gray(const std::string &name, const Grid<std::uint8_t> &pixels, const char *kind)
  {
    save_gray(dir_ / name, pixels);
    add(name, kind);
  }
  void image(const std::string &name, const GrayImage &img, const char *kind)
  {
    save_image(dir_ / name, img);
    add(name, kind);
  }
  void mask(const std::string &name, const Grid<std::uint8_t> &m, const char *kind)
  {
    save_mask(dir_ / name, m);
    add(name, kind);
  }
  void rgb(const std::string &name, const RgbImage &img, const char *kind)
  {
    save_rgb(dir_ / name, img);
    add(name, kind);
  }

  const std::filesystem::path &dir() const { return dir_; }
  const std::vector<std::string> &names() const { return names_; }
  const nlohmann::json &entries() const { return entries_; }

  void add(const std::string &name, const char *kind)
  {
    names_.push_back(name);
    entries_.push_back({{"path", name}, {"kind", kind}});
  }

private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
  nlohmann::json entries_ = nlohmann::json::array();
};

struct Context
{
  Context(const RunConfig &c, Outputs &o) : config(c), out(o) {}

  const RunConfig &config;
  Outputs &out;
  std::string stage = "config";
  nlohmann::json result = nlohmann::json::object();
  std::vector<std::string> warnings;
  bool converged = true;
};

GrayImage load_input(Context &ctx, Phantom *phantom_out)
{
  const RunConfig &c = ctx.config;
  if (c.uses_phantom()) {
    ctx.stage = "phantom";
    PhantomSpec spec = c.phantom;
    spec.seed = c.seed;
    Phantom ph = generate_phantom(spec);
    ctx.out.image("input.png", ph.image, "input");
    GrayImage img = ph.image;
    if (phantom_out) *phantom_out = std::move(ph);
    return img;
  }
  ctx.stage = "load";
  return load_image(c.input);
}

void run_phantom(Context &ctx)
{
  Phantom ph;
  load_input(ctx, &ph);
  ctx.stage = "write";
  for (std::size_t i = 0; i < ph.truth.size(); ++i) {
    ctx.out.text(numbered("truth", i, ".csv"), contour_csv(ph.truth[i]), "truth");
  }
  if (!ph.interior.empty()) ctx.out.text("interior.csv", contour_csv(ph.interior), "interior");
  ctx.result["truth_count"] = ph.truth.size();
}

void run_force_field(Context &ctx)
{
  const RunConfig &c = ctx.config;
  const GrayImage image = load_input(ctx, nullptr);
  ctx.stage = "force-field";
  const EdgeForce field = build_edge_force(image, c.field);

  Grid<double> magnitude(image.width(), image.height());
  for (std::size_t i = 0; i < magnitude.size(); ++i) {
    magnitude[i] = std::hypot(field.force.fx[i], field.force.fy[i]);
  }

  Vec2 center{0.5 * (image.width() - 1), 0.5 * (image.height() - 1)};
  if (!c.profile_center.empty()) {
    std::sscanf(c.profile_center.c_str(), "%lf , %lf", &center.x, &center.y);
  }
  std::vector<ProfileSample> profile;
  const int n = static_cast<int>(std::floor(c.profile_length / c.profile_step + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double r = i * c.profile_step;
    profile.push_back({r, potential_at(field.edges, c.field.force, {center.x + r, center.y})});
  }

  ctx.stage = "write";
  ctx.out.gray("edges.png", normalize_to_bytes(field.edges.grid()), "edges");
  ctx.out.gray("potential.png", normalize_to_bytes(field.potential.grid()), "potential");
  ctx.out.gray("force_magnitude.png", normalize_to_bytes(magnitude), "force");
  if (c.dump_grids) {
    ctx.out.text("potential.csv", grid_csv(field.potential.grid()), "grid");
    ctx.out.text("force_x.csv", grid_csv(field.force.fx), "grid");
    ctx.out.text("force_y.csv", grid_csv(field.force.fy), "grid");
  }
  ctx.out.text("profile.csv", profile_csv(profile), "profile");
  double peak_r = 0.0, peak = -1.0;
  for (const ProfileSample &s : profile) {
    if (s.value > peak) {
      peak = s.value;
      peak_r = s.r;
    }
  }
  ctx.result["profile_center"] = {center.x, center.y};
  ctx.result["profile_peak_r"] = peak_r;
}

std::string_view to_string(MultiStage stage)
{
  switch (stage) {
    case MultiStage::stage1: return "stage1";
    case MultiStage::stage2: return "stage2";
    case MultiStage::refine: return "refine";
  }
  return "stage1";
}

std::vector<Polyline> vertices_of(const std::vector<SnakeContour> &contours)
{
  std::vector<Polyline> out;
  for (const SnakeContour &c : contours) out.push_back(c.vertices);
  return out;
}

void run_snake_multi(Context &ctx)
{
  const RunConfig &c = ctx.config;
  const GrayImage image = load_input(ctx, nullptr);
  ctx.stage = "seed";
  const SnakeContour seed = snake_seed_contour(c, image.width(), image.height());
  ctx.out.text("seed.csv", contour_csv(seed.vertices), "seed");

  MultiObserver observer;
  if (c.overlay_every > 0) {
    observer = [&](const MultiSnapshot &snap) {
      if (snap.stage == MultiStage::stage1 && snap.step % c.overlay_every != 0) return;
      std::vector<OverlayLayer> layers;
      layers.push_back(OverlayLayer::from_mask(snap.grid->burned_mask(), colors::burn));
      layers.push_back(OverlayLayer::from_mask(fire_front(snap.grid->burned_mask()), colors::front));
      layers.push_back(OverlayLayer::from_polylines({seed.vertices}, colors::init));
      if (snap.contour) {
        layers.push_back(OverlayLayer::from_polylines({snap.contour->vertices}, colors::snake));
      }
      if (snap.children) {
        layers.push_back(OverlayLayer::from_polylines(vertices_of(*snap.children), colors::child));
      }
      ctx.out.rgb(frame_name(to_string(snap.stage), snap.step), render_overlay(image, layers),
                  "overlay");
    };
  }

  ctx.stage = "snake-multi";
  const MultiSegResult res = segment_multi(image, seed, c.balloon_config(), observer);

  ctx.stage = "write";
  ctx.out.mask("mask.png", res.mask, "mask");
  ctx.out.mask("stage1_mask.png", res.stage1_mask, "mask");
  for (std::size_t i = 0; i < res.children.size(); ++i) {
    ctx.out.text(numbered("child", i, ".csv"), contour_csv(res.children[i].vertices), "contour");
  }
  const std::vector<OverlayLayer> layers = {
    OverlayLayer::from_mask(res.mask, colors::burn),
    OverlayLayer::from_mask(fire_front(res.mask), colors::front),
    OverlayLayer::from_polylines({seed.vertices}, colors::init),
    OverlayLayer::from_polylines({res.stage1_contour.vertices}, colors::snake),
    OverlayLayer::from_polylines(vertices_of(res.children), colors::child),
  };
  ctx.out.rgb("overlay_final.png", render_overlay(image, layers), "overlay");

  const StageLog &log = res.stage_log;
  ctx.result["children"] = res.children.size();
  ctx.result["extracted"] = res.extracted.size();
  ctx.result["stage_log"] = {
    {"stage1_steps", log.stage1_steps},     {"stage1_converged", log.stage1_converged},
    {"stage1_stalled", log.stage1_stalled},
    {"stage2_steps", log.stage2_steps},     {"stage2_burn_passes", log.stage2_burn_passes},
    {"refine_steps_max", log.refine_steps_max}, {"refine_converged", log.refine_converged},
  };
  ctx.warnings.insert(ctx.warnings.end(), res.warnings.begin(), res.warnings.end());
  ctx.converged = res.converged;
}

void run_gac(Context &ctx)
{
  const RunConfig &c = ctx.config;
  const GrayImage image = load_input(ctx, nullptr);
  ctx.stage = "seed";
  const SeedRegion seed = gac_seed_region(c, image.width(), image.height());
  std::vector<Polyline> init_contours;

  GacObserver observer = [&](const GacSnapshot &snap) {
    if (snap.stage == GacStage::init) {
      init_contours = extract_zero_level(snap.grid->phi);
      return;
    }
    if (c.overlay_every <= 0 || snap.step % c.overlay_every != 0) return;
    const std::vector<OverlayLayer> layers = {
      OverlayLayer::from_polylines(init_contours, colors::init),
      OverlayLayer::from_polylines(extract_zero_level(snap.grid->phi), colors::snake),
    };
    ctx.out.rgb(frame_name(to_string(snap.stage), snap.step), render_overlay(image, layers),
                "overlay");
  };

  ctx.stage = "gac";
  const GacResult res = segment_gac(image, seed, c.gac_config(), observer);

  ctx.stage = "write";
  ctx.out.mask("mask.png", res.mask, "mask");
  for (std::size_t i = 0; i < res.contours.size(); ++i) {
    ctx.out.text(numbered("contour", i, ".csv"), contour_csv(res.contours[i]), "contour");
  }
  const std::vector<OverlayLayer> layers = {
    OverlayLayer::from_polylines(init_contours, colors::init),
    OverlayLayer::from_polylines(res.contours, colors::snake),
  };
  ctx.out.rgb("overlay_final.png", render_overlay(image, layers), "overlay");

  const GacStageLog &log = res.log;
  ctx.result["contours"] = res.contours.size();
  ctx.result["seed"] = seed.describe();
  ctx.result["stage_log"] = {
    {"attract_steps", log.attract_steps}, {"attract_converged", log.attract_converged},
    {"stage1_steps", log.stage1_steps},   {"stage1_converged", log.stage1_converged},
    {"stage2_steps", log.stage2_steps},   {"stage2_converged", log.stage2_converged},
    {"reinits", log.reinits},             {"final_displacement", log.final_displacement},
  };
  ctx.warnings.insert(ctx.warnings.end(), res.warnings.begin(), res.warnings.end());
  ctx.converged = res.converged;
}

nlohmann::json make_manifest(const Context &ctx, int exit_code, const std::string &error)
{
  nlohmann::json m;
  m["pipeline"] = std::string(to_string(ctx.config.pipeline));
  m["config"] = ctx.config.to_json();
  m["exit_code"] = exit_code;
  m["converged"] = ctx.converged;
  if (!error.empty()) m["error"] = error;
  m["result"] = ctx.result;
  m["warnings"] = ctx.warnings;
  nlohmann::json files = ctx.out.entries();
  files.push_back({{"path", "manifest.json"}, {"kind", "manifest"}});
  m["files"] = files;
  return m;
}

void write_manifest(const Context &ctx, const nlohmann::json &manifest)
{
  write_text(ctx.out.dir() / "manifest.json", manifest.dump(2) + "\n");
}

} // namespace

SnakeContour snake_seed_contour(const RunConfig &config, int width, int height)
{
  const SeedRegion seed = config.snake_seed.empty()
                            ? SeedRegion::disk({0.5 * (width - 1), 0.5 * (height - 1)}, 8.0)
                            : parse_seed_region(config.snake_seed);
  Polyline poly;
  switch (seed.kind) {
    case SeedRegion::Kind::disk:
      poly = circle_polyline(seed.center, seed.radius, config.snake_vertices);
      break;
    case SeedRegion::Kind::rect:
      poly = {seed.corner0, {seed.corner1.x, seed.corner0.y}, seed.corner1,
              {seed.corner0.x, seed.corner1.y}};
      break;
    case SeedRegion::Kind::polygon:
      poly = seed.polygon;
      break;
  }
  for (const Vec2 &v : poly) {
    if (v.x < 0.0 || v.y < 0.0 || v.x > width - 1 || v.y > height - 1) {
      throw ValidationError("snake seed leaves the image: " + seed.describe());
    }
  }
  SnakeContour contour(std::move(poly));
  // Inflation (and deflation for negative lambda) assumes a clockwise seed.
  if (contour.orientation != Orientation::clockwise) contour.reverse();
  return contour;
}

SeedRegion gac_seed_region(const RunConfig &config, int width, int height)
{
  if (config.gac_seed.empty()) {
    return SeedRegion::disk({0.5 * (width - 1), 0.5 * (height - 1)}, 8.0);
  }
  return parse_seed_region(config.gac_seed);
}

RunOutcome run(const RunConfig &config, const std::filesystem::path &out_dir)
{
  Outputs out(out_dir);
  Context ctx(config, out);
  auto fail = [&](int code, const std::string &what) -> RunFailure {
    RunFailure failure(code, ctx.stage, what);
    try {
      write_manifest(ctx, make_manifest(ctx, code, failure.what()));
    } catch (const std::exception &) {
      // The output directory itself is unusable; report the original error.
    }
    return failure;
  };

  try {
    config.validate();
    ctx.stage = "output";
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
      throw IoError("cannot create output directory " + out_dir.string());
    }
    switch (config.pipeline) {
      case Pipeline::phantom: run_phantom(ctx); break;
      case Pipeline::force_field: run_force_field(ctx); break;
      case Pipeline::snake_multi: run_snake_multi(ctx); break;
      case Pipeline::gac: run_gac(ctx); break;
    }
  } catch (const ValidationError &e) {
    throw fail(exit_validation, e.what());
  } catch (const CflViolation &e) {
    throw fail(exit_validation, e.what());
  } catch (const IoError &e) {
    throw fail(exit_io, e.what());
  } catch (const Error &e) {
    throw fail(exit_non_convergence, e.what());
  } catch (const std::bad_alloc &) {
    throw fail(exit_internal, "out of memory");
  }

  RunOutcome outcome;
  outcome.exit_code = ctx.converged ? exit_ok : exit_non_convergence;
  outcome.warnings = ctx.warnings;
  outcome.manifest = make_manifest(ctx, outcome.exit_code, "");
  ctx.stage = "manifest";
  try {
    write_manifest(ctx, outcome.manifest);
  } catch (const IoError &e) {
    throw RunFailure(exit_io, ctx.stage, e.what());
  }
  outcome.files = out.names();
  outcome.files.push_back("manifest.json");
  return outcome;
}

} // namespace pmseg::app
