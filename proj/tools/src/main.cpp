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

#include "pmseg_app/config.hpp"
#include "pmseg_app/run.hpp"

#include <pmseg/error.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace pmseg;
using namespace pmseg::app;

struct Options
{
  std::string config;
  std::string out = "out";
  std::string input;
  std::string phantom;
  std::uint64_t seed = 0;
  int overlay_every = 0;
};

void add_common(CLI::App *cmd, Options &opt)
{
  cmd->add_option("--config", opt.config, "INI configuration file");
  cmd->add_option("--out", opt.out, "output directory")->capture_default_str();
  cmd->add_option("--overlay-every", opt.overlay_every,
                  "write an overlay frame every n steps (0: final overlay only)")
    ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", opt.seed, "noise seed of the phantom generator");
  cmd->add_option("--input", opt.input, "image file, or 'phantom'");
  cmd->add_option("--phantom", opt.phantom,
                  "phantom kind: two-circle, three-circle, gap-circle, t-tube, n-blob-plate");
}

int execute(Pipeline pipeline, const Options &opt, const CLI::App &cmd)
{
  ConfigOverrides overrides;
  overrides.pipeline = pipeline;
  if (cmd.count("--input")) overrides.input = opt.input;
  if (cmd.count("--seed")) overrides.seed = opt.seed;
  if (cmd.count("--overlay-every")) overrides.overlay_every = opt.overlay_every;

  RunConfig config;
  try {
    if (cmd.count("--phantom")) overrides.phantom = parse_phantom_kind(opt.phantom);
    config = opt.config.empty() ? parse_config("", overrides) : load_config(opt.config, overrides);
  } catch (const ValidationError &e) {
    std::cerr << "config: " << e.what() << "\n";
    return exit_validation;
  } catch (const IoError &e) {
    std::cerr << "config: " << e.what() << "\n";
    return exit_io;
  }

  try {
    const RunOutcome outcome = run(config, opt.out);
    for (const std::string &w : outcome.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << to_string(pipeline) << ": wrote " << outcome.files.size() << " files to "
              << opt.out << "\n";
    if (outcome.exit_code == exit_non_convergence) {
      std::cerr << to_string(pipeline) << ": did not converge\n";
    }
    return outcome.exit_code;
  } catch (const RunFailure &e) {
    std::cerr << "error in " << e.what() << "\n";
    return e.exit_code();
  }
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"pmseg: potential-field snakes and two-stage level-set segmentation"};
  app.require_subcommand(1);

  Options opt;
  struct Entry
  {
    Pipeline pipeline;
    const char *help;
    CLI::App *cmd = nullptr;
  };
  std::vector<Entry> entries = {
    {Pipeline::force_field, "compute the edge map, potential and force field"},
    {Pipeline::snake_multi, "balloon snake with burned-region topology splitting"},
    {Pipeline::gac, "two-stage narrow-band level-set segmentation"},
    {Pipeline::phantom, "render a synthetic phantom and its ground truth"},
  };
  for (Entry &e : entries) {
    e.cmd = app.add_subcommand(std::string(to_string(e.pipeline)), e.help);
    add_common(e.cmd, opt);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_validation;
  }

  for (const Entry &e : entries) {
    if (*e.cmd) return execute(e.pipeline, opt, *e.cmd);
  }
  return exit_validation;
}
