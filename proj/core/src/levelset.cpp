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

#include "pmseg/levelset.hpp"

#include "pmseg/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace pmseg {

std::string_view to_string(AdvectionMode mode)
{
  return mode == AdvectionMode::raw ? "raw" : "unit_normalized";
}

AdvectionMode parse_advection_mode(std::string_view name)
{
  if (name == "unit_normalized") return AdvectionMode::unit_normalized;
  if (name == "raw") return AdvectionMode::raw;
  throw ValidationError("unknown advection mode: " + std::string(name));
}

std::string_view to_string(SdfShape shape)
{
  switch (shape) {
    case SdfShape::r: return "r";
    case SdfShape::k_times_r: return "k_times_r";
    case SdfShape::r_squared: return "r_squared";
  }
  return "r";
}

SdfShape parse_sdf_shape(std::string_view name)
{
  if (name == "r") return SdfShape::r;
  if (name == "k_times_r") return SdfShape::k_times_r;
  if (name == "r_squared") return SdfShape::r_squared;
  throw ValidationError("unknown sdf shape: " + std::string(name));
}

std::string_view to_string(GacStage stage)
{
  switch (stage) {
    case GacStage::init: return "init";
    case GacStage::attract: return "attract";
    case GacStage::stage1: return "stage1";
    case GacStage::stage2: return "stage2";
  }
  return "init";
}

void GacParams::validate() const
{
  if (!std::isfinite(lambda)) throw ValidationError("gac.lambda must be finite");
  if (!(eps >= 0.0)) throw ValidationError("gac.eps must be >= 0");
  if (!(gamma >= 0.0)) throw ValidationError("gac.gamma must be >= 0");
  if (!(m > 0.0)) throw ValidationError("gac.m must be > 0");
  if (!(dt > 0.0)) throw ValidationError("gac.dt must be > 0");
  if (!(band_radius >= 2.0)) throw ValidationError("gac.band_radius must be >= 2");
  if (reinit_every < 1) throw ValidationError("gac.reinit_every must be >= 1");
  if (!(conv_eps > 0.0)) throw ValidationError("gac.conv_eps must be > 0");
  if (conv_window < 1) throw ValidationError("gac.conv_window must be >= 1");
  if (max_steps < 1) throw ValidationError("gac.max_steps must be >= 1");
  if (!(shape_k > 0.0)) throw ValidationError("gac.shape_k must be > 0");
  if (!(kl_scale > 0.0)) throw ValidationError("gac.kl_scale must be > 0");
}

// -----------------------------------------------------------------------------
// Stencils

namespace {

double shape_value(double d, SdfShape shape, double k)
{
  switch (shape) {
    case SdfShape::r: return d;
    case SdfShape::k_times_r: return k * d;
    case SdfShape::r_squared: return d * d;
  }
  return d;
}

} // namespace

DistanceStencil DistanceStencil::circle(double radius)
{
  DistanceStencil s;
  s.radius = radius;
  s.metric = Metric::euclidean;
  const int r = static_cast<int>(std::floor(radius));
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double d = std::sqrt(double(dx * dx + dy * dy));
      if (d <= radius) s.offsets.push_back({dx, dy, d});
    }
  }
  std::stable_sort(s.offsets.begin(), s.offsets.end(),
                   [](const Offset &a, const Offset &b) { return a.distance < b.distance; });
  return s;
}

DistanceStencil DistanceStencil::square(double radius)
{
  DistanceStencil s;
  s.radius = radius;
  s.metric = Metric::chessboard;
  const int r = static_cast<int>(std::floor(radius));
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      s.offsets.push_back({dx, dy, double(std::max(std::abs(dx), std::abs(dy)))});
    }
  }
  std::stable_sort(s.offsets.begin(), s.offsets.end(),
                   [](const Offset &a, const Offset &b) { return a.distance < b.distance; });
  return s;
}

double DistanceStencil::measure(double dx, double dy) const
{
  if (metric == Metric::chessboard) return std::max(std::abs(dx), std::abs(dy));
  return std::sqrt(dx * dx + dy * dy);
}

// -----------------------------------------------------------------------------
// Speeds and CFL

Grid<double> speed_kl(const PotentialField &pot, double m)
{
  if (!(m > 0.0)) throw ValidationError("k_l exponent m must be > 0");
  const Grid<double> gx = derivative_x(pot.grid());
  const Grid<double> gy = derivative_y(pot.grid());
  Grid<double> kl(pot.width(), pot.height(), 1.0);
  for (std::size_t i = 0; i < kl.size(); ++i) {
    kl[i] = 1.0 / (1.0 + std::pow(std::hypot(gx[i], gy[i]), m));
  }
  return kl;
}

double stage1_max_dt(const Grid<double> &kl, const GacParams &params)
{
  double kmax = 0.0;
  for (double v : kl.values()) kmax = std::max(kmax, v);
  double limit = std::numeric_limits<double>::infinity();
  if (params.lambda != 0.0 && kmax > 0.0) limit = 0.5 / (std::abs(params.lambda) * kmax);
  if (params.eps > 0.0) limit = std::min(limit, 0.25 / params.eps);
  return limit;
}

double stage2_max_dt(const VectorField &force, const GacParams &params)
{
  double fmax = 1.0;
  if (params.advection == AdvectionMode::raw) {
    fmax = 0.0;
    for (std::size_t i = 0; i < force.fx.size(); ++i) {
      fmax = std::max(fmax, std::hypot(force.fx[i], force.fy[i]));
    }
  }
  double limit = std::numeric_limits<double>::infinity();
  if (params.gamma > 0.0 && fmax > 0.0) limit = 0.5 / (params.gamma * fmax);
  if (params.eps > 0.0) limit = std::min(limit, 0.25 / params.eps);
  return limit;
}

// -----------------------------------------------------------------------------
// Stepping

namespace {

struct Neighborhood
{
  double c, w, e, n, s, nw, ne, sw, se;
};

Neighborhood neighborhood(const Grid<double> &phi, int x, int y)
{
  const int W = phi.width(), H = phi.height();
  const int xm = clamp_index(x - 1, W), xp = clamp_index(x + 1, W);
  const int ym = clamp_index(y - 1, H), yp = clamp_index(y + 1, H);
  return {phi(x, y),   phi(xm, y),  phi(xp, y),  phi(x, ym), phi(x, yp),
          phi(xm, ym), phi(xp, ym), phi(xm, yp), phi(xp, yp)};
}

// kappa |grad phi| from central differences.
double curvature_term(const Neighborhood &v)
{
  const double px = 0.5 * (v.e - v.w);
  const double py = 0.5 * (v.s - v.n);
  const double g2 = px * px + py * py;
  if (g2 < 1e-16) return 0.0;
  const double pxx = v.e - 2.0 * v.c + v.w;
  const double pyy = v.s - 2.0 * v.c + v.n;
  const double pxy = 0.25 * (v.se - v.ne - v.sw + v.nw);
  return (pxx * py * py - 2.0 * px * py * pxy + pyy * px * px) / g2;
}

void check_cfl(double dt, double limit, const char *stage)
{
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << stage << ": dt = " << dt << " violates the CFL guard; need dt <= " << limit;
    throw CflViolation(msg.str(), limit);
  }
}

} // namespace

LevelSetGrid step_stage1(const LevelSetGrid &grid, const Grid<double> &kl,
                         const GacParams &params)
{
  check_cfl(params.dt, stage1_max_dt(kl, params), "stage one");
  LevelSetGrid out = grid;
  const Grid<double> &phi = grid.phi;
  const int W = phi.width();
  for (std::size_t idx : grid.band) {
    const int x = static_cast<int>(idx % static_cast<std::size_t>(W));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(W));
    const Neighborhood v = neighborhood(phi, x, y);
    const double dxm = v.c - v.w, dxp = v.e - v.c;
    const double dym = v.c - v.n, dyp = v.s - v.c;
    const double speed = params.lambda * kl[idx];
    double grad = 0.0;
    if (speed > 0.0) {
      grad = std::sqrt(std::pow(std::max(dxm, 0.0), 2) + std::pow(std::min(dxp, 0.0), 2) +
                       std::pow(std::max(dym, 0.0), 2) + std::pow(std::min(dyp, 0.0), 2));
    } else if (speed < 0.0) {
      grad = std::sqrt(std::pow(std::min(dxm, 0.0), 2) + std::pow(std::max(dxp, 0.0), 2) +
                       std::pow(std::min(dym, 0.0), 2) + std::pow(std::max(dyp, 0.0), 2));
    }
    double rate = -speed * grad;
    if (params.eps > 0.0) rate += params.eps * curvature_term(v);
    out.phi[idx] = std::clamp(v.c + params.dt * rate, -grid.sentinel, grid.sentinel);
  }
  return out;
}

LevelSetGrid step_stage2(const LevelSetGrid &grid, const VectorField &force,
                         const GacParams &params)
{
  check_cfl(params.dt, stage2_max_dt(force, params), "stage two");
  LevelSetGrid out = grid;
  const Grid<double> &phi = grid.phi;
  const int W = phi.width();
  const bool unit = params.advection == AdvectionMode::unit_normalized;
  for (std::size_t idx : grid.band) {
    const int x = static_cast<int>(idx % static_cast<std::size_t>(W));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(W));
    const Neighborhood v = neighborhood(phi, x, y);
    double fx = force.fx[idx], fy = force.fy[idx];
    if (unit) {
      const double mag = std::hypot(fx, fy);
      if (mag > 1e-8) {
        fx /= mag;
        fy /= mag;
      } else {
        fx = fy = 0.0;
      }
    }
    const double dxm = v.c - v.w, dxp = v.e - v.c;
    const double dym = v.c - v.n, dyp = v.s - v.c;
    const double advect = std::max(fx, 0.0) * dxm + std::min(fx, 0.0) * dxp +
                          std::max(fy, 0.0) * dym + std::min(fy, 0.0) * dyp;
    double rate = -params.gamma * advect;
    if (params.eps > 0.0) rate += params.eps * curvature_term(v);
    out.phi[idx] = std::clamp(v.c + params.dt * rate, -grid.sentinel, grid.sentinel);
  }
  return out;
}

LevelSetGrid step_attract(const LevelSetGrid &grid, const VectorField &force,
                          const GacParams &params)
{
  return step_stage2(grid, force, params);
}

// -----------------------------------------------------------------------------
// Reinitialization

namespace {

Grid<std::uint8_t> band_mask(const LevelSetGrid &grid)
{
  Grid<std::uint8_t> mask(grid.width(), grid.height(), 0);
  for (std::size_t idx : grid.band) mask[idx] = 1;
  return mask;
}

void push_crossing(std::vector<Vec2> &out, const Grid<double> &phi, int ax, int ay, int bx,
                   int by)
{
  const double a = phi(ax, ay), b = phi(bx, by);
  if ((a < 0.0) == (b < 0.0)) return;
  const double t = a / (a - b);
  out.push_back({ax + t * (bx - ax), ay + t * (by - ay)});
}

// Outside the image phi is mirrored as |phi|, so a negative border pixel
// has a crossing half a pixel beyond it.
void push_frame_crossings(std::vector<Vec2> &out, const Grid<double> &phi, int x, int y)
{
  if (!(phi(x, y) < 0.0)) return;
  if (x == 0) out.push_back({x - 0.5, double(y)});
  if (x == phi.width() - 1) out.push_back({x + 0.5, double(y)});
  if (y == 0) out.push_back({double(x), y - 0.5});
  if (y == phi.height() - 1) out.push_back({double(x), y + 0.5});
}

} // namespace

std::vector<Vec2> zero_crossings(const LevelSetGrid &grid, bool band_only)
{
  std::vector<Vec2> out;
  const Grid<double> &phi = grid.phi;
  const int W = phi.width(), H = phi.height();
  if (!band_only) {
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        if (x + 1 < W) push_crossing(out, phi, x, y, x + 1, y);
        if (y + 1 < H) push_crossing(out, phi, x, y, x, y + 1);
        push_frame_crossings(out, phi, x, y);
      }
    }
    return out;
  }
  const Grid<std::uint8_t> in_band = band_mask(grid);
  for (std::size_t idx : grid.band) {
    const int x = static_cast<int>(idx % static_cast<std::size_t>(W));
    const int y = static_cast<int>(idx / static_cast<std::size_t>(W));
    if (x + 1 < W) push_crossing(out, phi, x, y, x + 1, y);
    if (y + 1 < H) push_crossing(out, phi, x, y, x, y + 1);
    // Edges shared with pixels outside the band are owned by the band pixel.
    if (x > 0 && !in_band(x - 1, y)) push_crossing(out, phi, x - 1, y, x, y);
    if (y > 0 && !in_band(x, y - 1)) push_crossing(out, phi, x, y - 1, x, y);
    push_frame_crossings(out, phi, x, y);
  }
  return out;
}

LevelSetGrid reinit_sdf(const LevelSetGrid &grid, const DistanceStencil &stencil,
                        SdfShape shape, double shape_k)
{
  const std::vector<Vec2> crossings = zero_crossings(grid, true);
  if (crossings.empty()) throw ContourVanished("zero level set is empty");

  const int W = grid.width(), H = grid.height();
  constexpr double inf = std::numeric_limits<double>::infinity();
  Grid<double> dist(W, H, inf);
  std::vector<std::size_t> touched;
  for (const Vec2 &c : crossings) {
    const int bx = static_cast<int>(std::lround(c.x));
    const int by = static_cast<int>(std::lround(c.y));
    const double ox = c.x - bx, oy = c.y - by;
    for (const DistanceStencil::Offset &o : stencil.offsets) {
      const int x = bx + o.dx, y = by + o.dy;
      if (x < 0 || y < 0 || x >= W || y >= H) continue;
      const double d = stencil.measure(o.dx - ox, o.dy - oy);
      double &slot = dist(x, y);
      if (slot == inf) touched.push_back(dist.index(x, y));
      slot = std::min(slot, d);
    }
  }

  LevelSetGrid out;
  out.band_radius = grid.band_radius;
  out.sentinel = shape_value(grid.band_radius + 1.0, shape, shape_k);
  out.phi = Grid<double>(W, H, 0.0);
  for (std::size_t i = 0; i < out.phi.size(); ++i) {
    out.phi[i] = grid.phi[i] < 0.0 ? -out.sentinel : out.sentinel;
  }
  std::sort(touched.begin(), touched.end());
  for (std::size_t idx : touched) {
    if (dist[idx] > grid.band_radius) continue;
    const double value = shape_value(dist[idx], shape, shape_k);
    out.phi[idx] = grid.phi[idx] < 0.0 ? -value : value;
    out.band.push_back(idx);
  }
  return out;
}

Grid<double> brute_force_distance(const LevelSetGrid &grid)
{
  const std::vector<Vec2> crossings = zero_crossings(grid, false);
  Grid<double> dist(grid.width(), grid.height(), std::numeric_limits<double>::infinity());
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2 &c : crossings) {
        const double dx = x - c.x, dy = y - c.y;
        best = std::min(best, dx * dx + dy * dy);
      }
      dist(x, y) = std::sqrt(best);
    }
  }
  return dist;
}

// -----------------------------------------------------------------------------
// Marching squares

std::vector<Polyline> extract_zero_level(const Grid<double> &phi)
{
  const int W = phi.width(), H = phi.height();
  auto value = [&](int x, int y) {
    if (phi.contains(x, y)) return phi(x, y);
    return std::abs(phi(clamp_index(x, W), clamp_index(y, H)));
  };
  // Corners are padded by one ring, so keys are offset by one.
  const long long stride = W + 2;
  auto hkey = [&](int x, int y) { return ((y + 1) * stride + (x + 1)) * 2; };
  auto vkey = [&](int x, int y) { return ((y + 1) * stride + (x + 1)) * 2 + 1; };
  auto point = [&](int ax, int ay, int bx, int by) {
    const double a = value(ax, ay), b = value(bx, by);
    const double t = a / (a - b);
    return Vec2{ax + t * (bx - ax), ay + t * (by - ay)};
  };

  struct Segment { Vec2 p, q; long long kp, kq; };
  std::vector<Segment> segments;

  for (int y = -1; y < H; ++y) {
    for (int x = -1; x < W; ++x) {
      const std::array<double, 4> c = {value(x, y), value(x + 1, y), value(x + 1, y + 1),
                                       value(x, y + 1)};
      const std::array<bool, 4> neg = {c[0] < 0.0, c[1] < 0.0, c[2] < 0.0, c[3] < 0.0};
      const int count = neg[0] + neg[1] + neg[2] + neg[3];
      if (count == 0 || count == 4) continue;

      // Edge e joins corner e and corner e+1.
      std::array<bool, 4> cut{};
      std::array<Vec2, 4> pts{};
      std::array<long long, 4> keys = {hkey(x, y), vkey(x + 1, y), hkey(x, y + 1), vkey(x, y)};
      for (int e = 0; e < 4; ++e) cut[e] = neg[e] != neg[(e + 1) % 4];
      if (cut[0]) pts[0] = point(x, y, x + 1, y);
      if (cut[1]) pts[1] = point(x + 1, y, x + 1, y + 1);
      if (cut[2]) pts[2] = point(x, y + 1, x + 1, y + 1);
      if (cut[3]) pts[3] = point(x, y, x, y + 1);

      std::vector<std::array<int, 2>> pairs;
      if (count == 2 && neg[0] == neg[2]) {
        const double centre = 0.25 * (c[0] + c[1] + c[2] + c[3]);
        if ((centre < 0.0) == neg[0]) {
          pairs = {{0, 1}, {2, 3}};
        } else {
          pairs = {{3, 0}, {1, 2}};
        }
      } else {
        std::array<int, 2> pair{};
        int k = 0;
        for (int e = 0; e < 4; ++e) {
          if (cut[e]) pair[k++] = e;
        }
        pairs = {pair};
      }

      const std::array<Vec2, 4> corner = {Vec2{double(x), double(y)},
                                          Vec2{double(x + 1), double(y)},
                                          Vec2{double(x + 1), double(y + 1)},
                                          Vec2{double(x), double(y + 1)}};
      int negative_corner = 0;
      while (!neg[negative_corner]) ++negative_corner;
      for (const auto &pr : pairs) {
        Segment s{pts[pr[0]], pts[pr[1]], keys[pr[0]], keys[pr[1]]};
        // Keep the inside on the right-hand side (screen coordinates).
        const Vec2 d = s.q - s.p;
        const Vec2 right{-d.y, d.x};
        if (dot(right, corner[negative_corner] - s.p) < 0.0) {
          std::swap(s.p, s.q);
          std::swap(s.kp, s.kq);
        }
        segments.push_back(s);
      }
    }
  }

  std::unordered_map<long long, std::size_t> by_start;
  by_start.reserve(segments.size() * 2);
  for (std::size_t i = 0; i < segments.size(); ++i) by_start.emplace(segments[i].kp, i);

  std::vector<Polyline> loops;
  std::vector<std::uint8_t> used(segments.size(), 0);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (used[i]) continue;
    Polyline loop;
    std::size_t cur = i;
    while (!used[cur]) {
      used[cur] = 1;
      const Vec2 p = segments[cur].p;
      if (loop.empty() || !(loop.back() == p)) loop.push_back(p);
      const auto it = by_start.find(segments[cur].kq);
      if (it == by_start.end()) break;
      cur = it->second;
    }
    while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }
  return loops;
}

// -----------------------------------------------------------------------------
// Seeds and initialization

SeedRegion SeedRegion::disk(Vec2 center, double radius)
{
  SeedRegion s;
  s.kind = Kind::disk;
  s.center = center;
  s.radius = radius;
  return s;
}

SeedRegion SeedRegion::rect(Vec2 corner0, Vec2 corner1)
{
  SeedRegion s;
  s.kind = Kind::rect;
  s.corner0 = {std::min(corner0.x, corner1.x), std::min(corner0.y, corner1.y)};
  s.corner1 = {std::max(corner0.x, corner1.x), std::max(corner0.y, corner1.y)};
  return s;
}

SeedRegion SeedRegion::from_polygon(Polyline vertices)
{
  SeedRegion s;
  s.kind = Kind::polygon;
  s.polygon = std::move(vertices);
  return s;
}

void SeedRegion::validate() const
{
  switch (kind) {
    case Kind::disk:
      if (!(radius > 0.0)) throw ValidationError("seed disk radius must be > 0");
      break;
    case Kind::rect:
      if (!(corner1.x > corner0.x && corner1.y > corner0.y)) {
        throw ValidationError("seed rectangle must have positive extent");
      }
      break;
    case Kind::polygon:
      if (polygon.size() < 3 || std::abs(signed_area(polygon)) <= 0.0) {
        throw ValidationError("seed polygon needs at least 3 vertices and nonzero area");
      }
      break;
  }
}

double SeedRegion::signed_distance(Vec2 p) const
{
  switch (kind) {
    case Kind::disk:
      return distance(p, center) - radius;
    case Kind::rect: {
      const double dx = std::max({corner0.x - p.x, 0.0, p.x - corner1.x});
      const double dy = std::max({corner0.y - p.y, 0.0, p.y - corner1.y});
      if (dx > 0.0 || dy > 0.0) return std::hypot(dx, dy);
      return -std::min({p.x - corner0.x, corner1.x - p.x, p.y - corner0.y, corner1.y - p.y});
    }
    case Kind::polygon: {
      const double d = point_loop_distance(p, polygon);
      return point_in_polygon(p, polygon) ? -d : d;
    }
  }
  return 0.0;
}

std::string SeedRegion::describe() const
{
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::disk:
      out << "disk(" << center.x << "," << center.y << "," << radius << ")";
      break;
    case Kind::rect:
      out << "rect(" << corner0.x << "," << corner0.y << "," << corner1.x << "," << corner1.y
          << ")";
      break;
    case Kind::polygon:
      out << "polygon(";
      for (std::size_t i = 0; i < polygon.size(); ++i) {
        if (i) out << ",";
        out << polygon[i].x << "," << polygon[i].y;
      }
      out << ")";
      break;
  }
  return out.str();
}

SeedRegion parse_seed_region(std::string_view text)
{
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw ValidationError("seed must look like name(numbers...): " + std::string(text));
  }
  const std::string_view name = trim(text.substr(0, open));
  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  std::vector<double> numbers;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string item(trim(body.substr(0, comma)));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (item.empty() || used != item.size() || !std::isfinite(v)) {
      throw ValidationError("bad number in seed: '" + item + "'");
    }
    numbers.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }

  SeedRegion seed;
  if (name == "disk" && numbers.size() == 3) {
    seed = SeedRegion::disk({numbers[0], numbers[1]}, numbers[2]);
  } else if (name == "rect" && numbers.size() == 4) {
    seed = SeedRegion::rect({numbers[0], numbers[1]}, {numbers[2], numbers[3]});
  } else if (name == "polygon" && numbers.size() >= 6 && numbers.size() % 2 == 0) {
    Polyline poly;
    for (std::size_t i = 0; i < numbers.size(); i += 2) poly.push_back({numbers[i], numbers[i + 1]});
    seed = SeedRegion::from_polygon(std::move(poly));
  } else {
    throw ValidationError("unrecognized seed: " + std::string(text));
  }
  seed.validate();
  return seed;
}

LevelSetGrid initial_level_set(const SeedRegion &seed, int width, int height,
                               double band_radius, SdfShape shape, double shape_k)
{
  seed.validate();
  if (width < 3 || height < 3) throw ValidationError("level set grid must be at least 3x3");
  LevelSetGrid out;
  out.band_radius = band_radius;
  out.sentinel = shape_value(band_radius + 1.0, shape, shape_k);
  out.phi = Grid<double>(width, height, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double d = seed.signed_distance({double(x), double(y)});
      const std::size_t idx = out.phi.index(x, y);
      if (std::abs(d) <= band_radius) {
        out.phi[idx] = d < 0.0 ? -shape_value(-d, shape, shape_k) : shape_value(d, shape, shape_k);
        out.band.push_back(idx);
      } else {
        out.phi[idx] = d < 0.0 ? -out.sentinel : out.sentinel;
      }
    }
  }
  return out;
}

double zero_level_displacement(const std::vector<Polyline> &before,
                               const std::vector<Polyline> &after, int width, int height)
{
  constexpr double cap = 8.0;
  if (before.empty() && after.empty()) return 0.0;
  if (before.empty() || after.empty()) return cap;
  SegmentIndex index(width + 2, height + 2);
  for (const Polyline &loop : before) {
    Polyline shifted;
    shifted.reserve(loop.size());
    for (const Vec2 &p : loop) shifted.push_back({p.x + 1.0, p.y + 1.0});
    index.add_loop(shifted);
  }
  double worst = 0.0;
  for (const Polyline &loop : after) {
    for (const Vec2 &p : loop) {
      worst = std::max(worst, std::min(cap, index.distance({p.x + 1.0, p.y + 1.0}, cap)));
    }
  }
  return worst;
}

Grid<std::uint8_t> inside_mask(const Grid<double> &phi)
{
  Grid<std::uint8_t> mask(phi.width(), phi.height(), 0);
  for (std::size_t i = 0; i < phi.size(); ++i) mask[i] = phi[i] < 0.0 ? 1 : 0;
  return mask;
}

// -----------------------------------------------------------------------------
// Pipeline

void GacConfig::validate() const
{
  field.force.validate();
  if (!(field.edge_threshold >= 0.0)) throw ValidationError("edge threshold must be >= 0");
  gac.validate();
}

GacResult segment_gac(const GrayImage &image, const SeedRegion &seed, const GacConfig &config,
                      const GacObserver &observer)
{
  config.validate();
  seed.validate();
  const GacParams &params = config.gac;
  const int W = image.width(), H = image.height();

  const EdgeForce field = build_edge_force(image, config.field);
  const Grid<double> kl = speed_kl(rescale_potential(field.potential, params.kl_scale), params.m);
  const DistanceStencil stencil = DistanceStencil::circle(params.band_radius);

  GacResult result;
  result.grid = initial_level_set(seed, W, H, params.band_radius, params.sdf_shape,
                                  params.shape_k);
  if (observer) observer({GacStage::init, 0, &result.grid});

  auto window_converged = [&](const std::vector<double> &history) {
    const auto window = static_cast<std::size_t>(
      std::max(1, (params.conv_window + params.reinit_every - 1) / params.reinit_every));
    if (history.size() < window) return false;
    return std::all_of(history.end() - static_cast<std::ptrdiff_t>(window), history.end(),
                       [&](double d) { return d < params.conv_eps; });
  };

  // The zero level is compared once per reinitialization cycle, always in
  // the same phase, so the small shift reinit causes at sharp corners does
  // not read as motion. Displacements are reported per step.
  auto run_stage = [&](GacStage stage, const auto &stepper, int &steps, bool &converged) {
    std::vector<Polyline> contours = extract_zero_level(result.grid.phi);
    std::vector<double> history;
    while (steps < params.max_steps) {
      result.grid = stepper(result.grid);
      ++steps;
      const bool cycle_end = steps % params.reinit_every == 0;
      if (cycle_end) {
        result.grid = reinit_sdf(result.grid, stencil, params.sdf_shape, params.shape_k);
        ++result.log.reinits;
      }
      if (observer) observer({stage, steps, &result.grid});
      if (!cycle_end) continue;
      std::vector<Polyline> next = extract_zero_level(result.grid.phi);
      if (next.empty()) throw ContourVanished(std::string(to_string(stage)) +
                                              ": zero level set vanished");
      const double d = zero_level_displacement(contours, next, W, H) / params.reinit_every;
      history.push_back(d);
      result.log.final_displacement = d;
      contours = std::move(next);
      if (window_converged(history)) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      result.warnings.push_back(std::string(to_string(stage)) +
                                " hit the step cap before converging");
    }
  };

  const auto advect = [&](const LevelSetGrid &g) {
    return step_stage2(g, field.force, params);
  };
  const auto propagate = [&](const LevelSetGrid &g) { return step_stage1(g, kl, params); };

  if (params.attract) {
    run_stage(GacStage::attract, advect, result.log.attract_steps, result.log.attract_converged);
  }
  run_stage(GacStage::stage1, propagate, result.log.stage1_steps, result.log.stage1_converged);
  if (params.stage2) {
    run_stage(GacStage::stage2, advect, result.log.stage2_steps, result.log.stage2_converged);
  }

  result.contours = extract_zero_level(result.grid.phi);
  result.mask = inside_mask(result.grid.phi);
  result.converged = (!params.attract || result.log.attract_converged) &&
                     result.log.stage1_converged &&
                     (!params.stage2 || result.log.stage2_converged);
  return result;
}

} // namespace pmseg
