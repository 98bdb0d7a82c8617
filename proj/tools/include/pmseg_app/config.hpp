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

#ifndef PMSEG_APP_CONFIG_HPP
#define PMSEG_APP_CONFIG_HPP

#include <pmseg/burning.hpp>
#include <pmseg/levelset.hpp>
#include <pmseg/phantom.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pmseg::app {

enum class Pipeline { phantom, force_field, snake_multi, gac };

std::string_view to_string(Pipeline pipeline);
Pipeline parse_pipeline(std::string_view name);

/// Everything one run needs. Every field has a default, and the defaults
/// depend on the pipeline and, for phantom input, on the phantom kind (the
/// seed placement in particular), see make_default_config().
struct RunConfig
{
  Pipeline pipeline = Pipeline::snake_multi;
  std::string input = "phantom";  ///< "phantom" or an image path
  std::uint64_t seed = 1;         ///< noise seed of the phantom generator
  int overlay_every = 0;          ///< 0 writes only the final overlay

  PhantomSpec phantom;
  EdgeForceConfig field;

  BalloonConfig balloon;          ///< its `field` member is ignored
  std::string snake_seed;         ///< disk(...), rect(...) or polygon(...)
  int snake_vertices = 32;

  GacParams gac;
  std::string gac_seed;

  std::string profile_center;     ///< "x,y"; empty means the image center
  double profile_length = 30.0;
  double profile_step = 0.1;
  bool dump_grids = true;

  bool uses_phantom() const { return input == "phantom"; }

  BalloonConfig balloon_config() const;
  GacConfig gac_config() const;

  /// Throws ValidationError.
  void validate() const;

  /// All settings, grouped by section, as written in a config file.
  nlohmann::json to_json() const;
};

/// Defaults for `pipeline`; when `kind` is set the seeds and a few weights
/// are tuned to that phantom, at the given phantom size.
RunConfig make_default_config(Pipeline pipeline, std::optional<PhantomKind> kind = std::nullopt,
                              int phantom_size = 256);

/// Settings given on the command line; they win over the file.
struct ConfigOverrides
{
  std::optional<Pipeline> pipeline;
  std::optional<std::string> input;
  std::optional<PhantomKind> phantom;
  std::optional<std::uint64_t> seed;
  std::optional<int> overlay_every;
};

/// Reads an INI file with [run], [phantom], [field], [snake], [balloon],
/// [gac] and [profile] sections. The pipeline, input and phantom kind are
/// resolved first (overrides, then the file, then the built-in defaults)
/// and select the defaults; every other key in the file then replaces its
/// default. Unknown sections or keys and malformed values throw
/// ValidationError; an unreadable file throws IoError.
RunConfig load_config(const std::filesystem::path &path, const ConfigOverrides &overrides = {});

/// Same as load_config() for INI text.
RunConfig parse_config(const std::string &text, const ConfigOverrides &overrides = {});

} // namespace pmseg::app

#endif // PMSEG_APP_CONFIG_HPP
