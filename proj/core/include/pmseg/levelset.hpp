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

#ifndef PMSEG_LEVELSET_HPP
#define PMSEG_LEVELSET_HPP

#include "pmseg/burning.hpp"
#include "pmseg/force_field.hpp"
#include "pmseg/geometry.hpp"
#include "pmseg/image.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace pmseg {

enum class AdvectionMode { unit_normalized, raw };
enum class SdfShape { r, k_times_r, r_squared };

std::string_view to_string(AdvectionMode mode);
AdvectionMode parse_advection_mode(std::string_view name);
std::string_view to_string(SdfShape shape);
SdfShape parse_sdf_shape(std::string_view name);

/// Narrow-band level-set function; negative inside, positive outside.
///
/// Pixels outside the band hold the sentinel value with the correct sign.
/// `band` lists the flat indices of the active pixels in ascending order.
struct LevelSetGrid
{
  Grid<double> phi;
  std::vector<std::size_t> band;
  double band_radius = 6.0;

  int width() const { return phi.width(); }
  int height() const { return phi.height(); }

  /// Magnitude assigned to pixels outside the band (band_radius + 1 for the
  /// plain distance shape).
  double sentinel = 7.0;
};

struct GacParams
{
  double lambda = 1.0;       ///< stage-one propagation weight; negative shrinks
  double eps = 0.2;          ///< curvature weight
  double gamma = 1.0;        ///< advection weight
  double m = 2.0;            ///< exponent in k_l
  double dt = 0.25;
  double band_radius = 6.0;
  int reinit_every = 5;
  double conv_eps = 0.02;
  int conv_window = 10;
  int max_steps = 2000;      ///< per stage
  bool attract = false;      ///< run the attract stage before stage one
  bool stage2 = true;
  AdvectionMode advection = AdvectionMode::unit_normalized;
  SdfShape sdf_shape = SdfShape::r;
  double shape_k = 1.0;      ///< slope for SdfShape::k_times_r
  /// The potential is rescaled to this peak before k_l is evaluated, so the
  /// stopping strength does not depend on the edge contrast.
  double kl_scale = 100.0;

  /// Throws ValidationError; the CFL guards are checked per step.
  void validate() const;
};

/// Disk of integer offsets with precomputed distances, sorted by distance.
/// The square variant covers the full (2R+1)^2 window and measures with the
/// chessboard metric, so its level sets are squares rather than circles.
struct DistanceStencil
{
  struct Offset
  {
    int dx;
    int dy;
    double distance;
  };

  enum class Metric { euclidean, chessboard };

  double radius = 0.0;
  Metric metric = Metric::euclidean;
  std::vector<Offset> offsets;

  static DistanceStencil circle(double radius);
  static DistanceStencil square(double radius);

  /// Distance of an offset shifted by a sub-pixel amount, in this metric.
  double measure(double dx, double dy) const;
};

/// k_l = 1 / (1 + |grad P|^m), central differences.
Grid<double> speed_kl(const PotentialField &pot, double m);

/// Largest dt allowed by the CFL guards of the two stages.
double stage1_max_dt(const Grid<double> &kl, const GacParams &params);
double stage2_max_dt(const VectorField &force, const GacParams &params);

/// Propagation plus curvature on the band pixels:
///   phi_t = -lambda k_l |grad phi| + eps kappa |grad phi|
/// Godunov upwind gradient for the propagation term. Throws CflViolation.
LevelSetGrid step_stage1(const LevelSetGrid &grid, const Grid<double> &kl,
                         const GacParams &params);

/// Curvature plus sign advection with upwind one-sided differences:
///   phi_t = eps kappa |grad phi| - gamma (max(Fx,0) D-x + min(Fx,0) D+x
///                                         + max(Fy,0) D-y + min(Fy,0) D+y)
/// In unit_normalized mode F is replaced by F/|F| (0 where |F| <= 1e-8).
/// Throws CflViolation.
LevelSetGrid step_stage2(const LevelSetGrid &grid, const VectorField &force,
                         const GacParams &params);

/// The attract stage; same dynamics as stage two.
LevelSetGrid step_attract(const LevelSetGrid &grid, const VectorField &force,
                          const GacParams &params);

/// Sub-pixel zero crossings of phi along grid edges (linear interpolation),
/// plus a crossing half a pixel outside every negative border pixel.
/// Only edges touching the band are inspected when `band_only` is set.
std::vector<Vec2> zero_crossings(const LevelSetGrid &grid, bool band_only = true);

/// Rebuilds phi as a signed distance by stamping `stencil` at every zero
/// crossing and keeping the per-pixel minimum. Signs come from the old phi,
/// the band becomes every pixel within band_radius, the rest are sentinels.
/// The shape transform is applied after the minimum is taken.
/// Throws ContourVanished when there is no zero crossing.
LevelSetGrid reinit_sdf(const LevelSetGrid &grid, const DistanceStencil &stencil,
                        SdfShape shape = SdfShape::r, double shape_k = 1.0);

/// Reference: unsigned distance from every pixel to the nearest zero
/// crossing, no band.
Grid<double> brute_force_distance(const LevelSetGrid &grid);

/// Marching squares on phi = 0. Outside the image phi is mirrored as
/// |phi| of the nearest pixel, so every polyline is closed and a region
/// touching the frame is closed half a pixel beyond it. Saddle cells are
/// resolved by the sign of the average of their four corners. Outer loops run clockwise
/// on screen, loops around positive holes counterclockwise.
std::vector<Polyline> extract_zero_level(const Grid<double> &phi);

/// Initial region for the level set.
struct SeedRegion
{
  enum class Kind { disk, rect, polygon };

  Kind kind = Kind::disk;
  Vec2 center;
  double radius = 0.0;
  Vec2 corner0;
  Vec2 corner1;
  Polyline polygon;

  static SeedRegion disk(Vec2 center, double radius);
  static SeedRegion rect(Vec2 corner0, Vec2 corner1);
  static SeedRegion from_polygon(Polyline vertices);

  /// Exact signed distance to the region boundary (negative inside).
  double signed_distance(Vec2 p) const;
  void validate() const;
  std::string describe() const;
};

/// Parses "disk(cx,cy,r)", "rect(x0,y0,x1,y1)" or
/// "polygon(x0,y0,x1,y1,...)". Throws ValidationError.
SeedRegion parse_seed_region(std::string_view text);

/// Exact signed distance of the seed, clipped to a band.
LevelSetGrid initial_level_set(const SeedRegion &seed, int width, int height,
                               double band_radius, SdfShape shape = SdfShape::r,
                               double shape_k = 1.0);

/// Largest distance from a vertex of `after` to the polylines in `before`.
double zero_level_displacement(const std::vector<Polyline> &before,
                               const std::vector<Polyline> &after, int width, int height);

/// Pixels with phi < 0.
Grid<std::uint8_t> inside_mask(const Grid<double> &phi);

struct GacConfig
{
  EdgeForceConfig field;
  GacParams gac;

  void validate() const;
};

enum class GacStage { init, attract, stage1, stage2 };

std::string_view to_string(GacStage stage);

struct GacSnapshot
{
  GacStage stage;
  int step;
  const LevelSetGrid *grid = nullptr;
};

struct GacStageLog
{
  int attract_steps = 0;
  bool attract_converged = false;
  int stage1_steps = 0;
  bool stage1_converged = false;
  int stage2_steps = 0;
  bool stage2_converged = false;
  int reinits = 0;
  double final_displacement = 0.0;
};

struct GacResult
{
  std::vector<Polyline> contours;
  Grid<std::uint8_t> mask;
  LevelSetGrid grid;
  GacStageLog log;
  bool converged = false;
  std::vector<std::string> warnings;
};

using GacObserver = std::function<void(const GacSnapshot &)>;

/// Two-stage GAC: edge map, potential, force and k_l; phi from the seed;
/// optional attract stage; stage one (propagation + curvature) until the
/// zero level stops; stage two (curvature + advection) until it stops
/// again. Reinitialization every `reinit_every` steps.
GacResult segment_gac(const GrayImage &image, const SeedRegion &seed, const GacConfig &config,
                      const GacObserver &observer = {});

} // namespace pmseg

#endif // PMSEG_LEVELSET_HPP
