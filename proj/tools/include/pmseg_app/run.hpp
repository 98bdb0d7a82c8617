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

#ifndef PMSEG_APP_RUN_HPP
#define PMSEG_APP_RUN_HPP

#include "pmseg_app/config.hpp"

#include <pmseg/levelset.hpp>
#include <pmseg/snake.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmseg::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_validation = 2,
  exit_non_convergence = 3,
  exit_io = 4,
};

/// A run that stopped early. The message names the failing stage.
class RunFailure : public std::runtime_error
{
public:
  RunFailure(int exit_code, std::string stage, const std::string &what)
    : std::runtime_error(stage + ": " + what), exit_code_(exit_code), stage_(std::move(stage))
  {}
  int exit_code() const { return exit_code_; }
  const std::string &stage() const { return stage_; }

private:
  int exit_code_;
  std::string stage_;
};

struct RunOutcome
{
  int exit_code = exit_ok;             ///< exit_ok or exit_non_convergence
  std::vector<std::string> files;      ///< relative to the output directory
  nlohmann::json manifest;
  std::vector<std::string> warnings;
};

/// Executes the configured pipeline and writes its results plus
/// manifest.json into `out_dir` (created if needed). Every file written is
/// listed in the manifest together with the full configuration. Throws
/// RunFailure; partial results are still recorded in the manifest.
RunOutcome run(const RunConfig &config, const std::filesystem::path &out_dir);

/// Initial snake for the image size: the configured seed region converted
/// to a clockwise polygon, or a disk of radius 8 at the image center.
SnakeContour snake_seed_contour(const RunConfig &config, int width, int height);

/// Initial level-set region: the configured seed, or a disk of radius 8 at
/// the image center.
SeedRegion gac_seed_region(const RunConfig &config, int width, int height);

} // namespace pmseg::app

#endif // PMSEG_APP_RUN_HPP
