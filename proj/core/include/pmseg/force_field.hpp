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

#ifndef PMSEG_FORCE_FIELD_HPP
#define PMSEG_FORCE_FIELD_HPP

#include "pmseg/grid.hpp"
#include "pmseg/image.hpp"

#include <limits>
#include <string>
#include <string_view>

namespace pmseg {

/// Radial transfer function applied to the source-to-sample distance r.
///
///  - inverse_power: 1 / (k r^p)
///  - exponential:   exp(-k r^p)
///  - arctan:        pi/2 - atan(k r^p)
enum class TransferKind { inverse_power, exponential, arctan };

std::string_view to_string(TransferKind kind);
TransferKind parse_transfer_kind(std::string_view name);

/// Parameters of the template-plane potential.
///
/// The potential is evaluated on a plane at height `h` above the image, so
/// the distance between a source pixel and a sample is
/// r = sqrt(dx^2 + dy^2 + h^2) >= h and no transfer function is singular.
/// Sources with r >= r_max are ignored; an infinite r_max disables
/// truncation.
struct ForceFieldParams
{
  double h = 1.0;
  double k = 1.0;
  double p = 1.0;
  TransferKind kind = TransferKind::exponential;
  double r_max = 64.0;

  static constexpr double untruncated = std::numeric_limits<double>::infinity();

  /// Throws ValidationError. The plane height must lie in (0, 2]; beyond
  /// that the potential ridge drifts away from the source edge by more than
  /// a pixel.
  void validate() const;
};

class PotentialField
{
public:
  PotentialField() = default;
  explicit PotentialField(Grid<double> values);

  int width() const { return values_.width(); }
  int height() const { return values_.height(); }
  double operator()(int x, int y) const { return values_(x, y); }
  const Grid<double> &grid() const { return values_; }

private:
  Grid<double> values_;
};

struct VectorField
{
  Grid<double> fx;
  Grid<double> fy;

  int width() const { return fx.width(); }
  int height() const { return fx.height(); }
  Vec2 operator()(int x, int y) const { return {fx(x, y), fy(x, y)}; }
};

/// Transfer value f(r). Requires r > 0 (ValidationError otherwise); the
/// result is finite and strictly decreasing in r.
double transfer(double r, const ForceFieldParams &params);

/// Potential of every template-plane sample above the pixel grid.
///
/// Because f depends only on the source offset, this is a discrete
/// convolution of the edge map with a precomputed offset kernel; nonzero
/// sources are scattered in row-major order so the result is deterministic.
PotentialField compute_potential(const EdgeMap &edges, const ForceFieldParams &params);

/// Direct truncated double sum, evaluating f for every source/sample pair.
/// Same result as compute_potential(); kept as a reference path.
PotentialField compute_potential_direct(const EdgeMap &edges, const ForceFieldParams &params);

/// Potential at an arbitrary template-plane position. Only h > 0 is
/// required here, so profiles for larger plane heights can be inspected.
double potential_at(const EdgeMap &edges, const ForceFieldParams &params, Vec2 pos);

/// Gradient of the potential (central differences, one-sided at borders).
/// The force points toward increasing potential, i.e. toward edges.
VectorField compute_force(const PotentialField &pot);

/// Bilinear interpolation of the force; exact at grid nodes. Positions
/// outside [0, w-1] x [0, h-1] are clamped onto the grid.
Vec2 sample_force(const VectorField &field, Vec2 pos);

/// Scales a potential so its maximum equals `peak` (no-op on an all-zero
/// field).
PotentialField rescale_potential(const PotentialField &pot, double peak);

} // namespace pmseg

#endif // PMSEG_FORCE_FIELD_HPP
