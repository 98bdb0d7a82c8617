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

#include <pmseg/error.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace pmseg::app {

std::string_view to_string(Pipeline pipeline)
{
  switch (pipeline) {
    case Pipeline::phantom: return "phantom";
    case Pipeline::force_field: return "force-field";
    case Pipeline::snake_multi: return "snake-multi";
    case Pipeline::gac: return "gac";
  }
  return "snake-multi";
}

Pipeline parse_pipeline(std::string_view name)
{
  for (Pipeline p : {Pipeline::phantom, Pipeline::force_field, Pipeline::snake_multi, Pipeline::gac}) {
    if (name == to_string(p)) return p;
  }
  throw ValidationError("unknown pipeline: " + std::string(name));
}

namespace {

std::string trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string &name, const std::string &value)
{
  throw ValidationError("invalid value for " + name + ": '" + value + "'");
}

template <class T>
T parse_value(const std::string &text, const std::string &name);

template <>
double parse_value<double>(const std::string &text, const std::string &name)
{
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_value(name, text);
  return v;
}

template <>
int parse_value<int>(const std::string &text, const std::string &name)
{
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_value(name, text);
  return v;
}

template <>
std::uint64_t parse_value<std::uint64_t>(const std::string &text, const std::string &name)
{
  const std::string s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad_value(name, text);
  return v;
}

template <>
bool parse_value<bool>(const std::string &text, const std::string &name)
{
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value(name, text);
}

template <>
std::string parse_value<std::string>(const std::string &text, const std::string &)
{
  return trim(text);
}

template <class E, class F>
E parse_enum(const std::string &text, const std::string &name, F parse)
{
  try {
    return parse(trim(text));
  } catch (const ValidationError &) {
    bad_value(name, text);
  }
}

template <>
TransferKind parse_value<TransferKind>(const std::string &text, const std::string &name)
{
  return parse_enum<TransferKind>(text, name, [](std::string_view s) { return parse_transfer_kind(s); });
}

template <>
PhantomKind parse_value<PhantomKind>(const std::string &text, const std::string &name)
{
  return parse_enum<PhantomKind>(text, name, [](std::string_view s) { return parse_phantom_kind(s); });
}

template <>
AdvectionMode parse_value<AdvectionMode>(const std::string &text, const std::string &name)
{
  return parse_enum<AdvectionMode>(text, name, [](std::string_view s) { return parse_advection_mode(s); });
}

template <>
SdfShape parse_value<SdfShape>(const std::string &text, const std::string &name)
{
  return parse_enum<SdfShape>(text, name, [](std::string_view s) { return parse_sdf_shape(s); });
}

template <class T>
nlohmann::json json_value(const T &v)
{
  if constexpr (std::is_enum_v<T>) {
    return std::string(to_string(v));
  } else {
    return v;
  }
}

struct Field
{
  std::string section;
  std::string key;
  std::function<void(RunConfig &, const std::string &)> set;
  std::function<nlohmann::json(const RunConfig &)> get;
};

template <class T, class Access>
Field bind(std::string section, std::string key, Access access)
{
  const std::string name = section + "." + key;
  return Field{std::move(section), std::move(key),
               [access, name](RunConfig &c, const std::string &v) {
                 access(c) = parse_value<T>(v, name);
               },
               [access](const RunConfig &c) {
                 return json_value(access(const_cast<RunConfig &>(c)));
               }};
}

#define PMSEG_FIELD(T, section, key, member) \
  bind<T>(section, key, [](RunConfig &c) -> T & { return c.member; })

const std::vector<Field> &fields()
{
  static const std::vector<Field> table = {
    PMSEG_FIELD(std::string, "run", "input", input),
    PMSEG_FIELD(std::uint64_t, "run", "seed", seed),
    PMSEG_FIELD(int, "run", "overlay_every", overlay_every),

    PMSEG_FIELD(PhantomKind, "phantom", "kind", phantom.kind),
    PMSEG_FIELD(int, "phantom", "size", phantom.size),
    PMSEG_FIELD(double, "phantom", "noise", phantom.noise),
    PMSEG_FIELD(bool, "phantom", "invert", phantom.invert),
    PMSEG_FIELD(double, "phantom", "line_width", phantom.line_width),
    PMSEG_FIELD(double, "phantom", "outer_radius", phantom.outer_radius),
    PMSEG_FIELD(double, "phantom", "inner_radius", phantom.inner_radius),
    PMSEG_FIELD(double, "phantom", "radius", phantom.radius),
    PMSEG_FIELD(double, "phantom", "gap_degrees", phantom.gap_degrees),
    PMSEG_FIELD(double, "phantom", "gap_center_degrees", phantom.gap_center_degrees),
    PMSEG_FIELD(double, "phantom", "tube_width", phantom.tube_width),
    PMSEG_FIELD(int, "phantom", "blob_count", phantom.blob_count),

    PMSEG_FIELD(TransferKind, "field", "kind", field.force.kind),
    PMSEG_FIELD(double, "field", "h", field.force.h),
    PMSEG_FIELD(double, "field", "k", field.force.k),
    PMSEG_FIELD(double, "field", "p", field.force.p),
    PMSEG_FIELD(double, "field", "r_max", field.force.r_max),
    PMSEG_FIELD(double, "field", "smooth_sigma", field.smooth_sigma),
    PMSEG_FIELD(double, "field", "edge_threshold", field.edge_threshold),
    PMSEG_FIELD(bool, "field", "intensity_source", field.intensity_source),
    PMSEG_FIELD(bool, "field", "normalize_force", field.normalize_force),

    PMSEG_FIELD(std::string, "snake", "seed", snake_seed),
    PMSEG_FIELD(int, "snake", "vertices", snake_vertices),
    PMSEG_FIELD(double, "snake", "alpha", balloon.snake.alpha),
    PMSEG_FIELD(double, "snake", "gamma", balloon.snake.gamma),
    PMSEG_FIELD(double, "snake", "lambda", balloon.snake.lambda),
    PMSEG_FIELD(double, "snake", "dt", balloon.snake.dt),
    PMSEG_FIELD(double, "snake", "d_min", balloon.snake.d_min),
    PMSEG_FIELD(double, "snake", "d_max", balloon.snake.d_max),
    PMSEG_FIELD(double, "snake", "conv_eps", balloon.snake.conv_eps),
    PMSEG_FIELD(int, "snake", "conv_window", balloon.snake.conv_window),

    PMSEG_FIELD(double, "balloon", "gap", balloon.gap),
    PMSEG_FIELD(int, "balloon", "stage1_max_steps", balloon.stage1_max_steps),
    PMSEG_FIELD(int, "balloon", "stall_steps", balloon.stall_steps),
    PMSEG_FIELD(int, "balloon", "extra_steps", balloon.extra_steps),
    PMSEG_FIELD(int, "balloon", "max_release_attempts", balloon.max_release_attempts),
    PMSEG_FIELD(int, "balloon", "refine_max_steps", balloon.refine_max_steps),
    PMSEG_FIELD(double, "balloon", "refine_lambda", balloon.refine_lambda),
    PMSEG_FIELD(double, "balloon", "min_child_area", balloon.min_child_area),

    PMSEG_FIELD(std::string, "gac", "seed", gac_seed),
    PMSEG_FIELD(double, "gac", "lambda", gac.lambda),
    PMSEG_FIELD(double, "gac", "eps", gac.eps),
    PMSEG_FIELD(double, "gac", "gamma", gac.gamma),
    PMSEG_FIELD(double, "gac", "m", gac.m),
    PMSEG_FIELD(double, "gac", "dt", gac.dt),
    PMSEG_FIELD(double, "gac", "band_radius", gac.band_radius),
    PMSEG_FIELD(int, "gac", "reinit_every", gac.reinit_every),
    PMSEG_FIELD(double, "gac", "conv_eps", gac.conv_eps),
    PMSEG_FIELD(int, "gac", "conv_window", gac.conv_window),
    PMSEG_FIELD(int, "gac", "max_steps", gac.max_steps),
    PMSEG_FIELD(bool, "gac", "attract", gac.attract),
    PMSEG_FIELD(bool, "gac", "stage2", gac.stage2),
    PMSEG_FIELD(AdvectionMode, "gac", "advection", gac.advection),
    PMSEG_FIELD(SdfShape, "gac", "sdf_shape", gac.sdf_shape),
    PMSEG_FIELD(double, "gac", "shape_k", gac.shape_k),
    PMSEG_FIELD(double, "gac", "kl_scale", gac.kl_scale),

    PMSEG_FIELD(std::string, "profile", "center", profile_center),
    PMSEG_FIELD(double, "profile", "length", profile_length),
    PMSEG_FIELD(double, "profile", "step", profile_step),
    PMSEG_FIELD(bool, "profile", "dump_grids", dump_grids),
  };
  return table;
}

#undef PMSEG_FIELD

const Field *find_field(const std::string &section, const std::string &key)
{
  for (const Field &f : fields()) {
    if (f.section == section && f.key == key) return &f;
  }
  return nullptr;
}

std::string format_seed(const char *kind, std::initializer_list<double> values)
{
  std::string out = std::string(kind) + "(";
  bool first = true;
  for (double v : values) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    if (!first) out += ",";
    out += buf;
    first = false;
  }
  return out + ")";
}

} // namespace

BalloonConfig RunConfig::balloon_config() const
{
  BalloonConfig cfg = balloon;
  cfg.field = field;
  return cfg;
}

GacConfig RunConfig::gac_config() const
{
  return GacConfig{field, gac};
}

void RunConfig::validate() const
{
  if (input.empty()) throw ValidationError("run.input must not be empty");
  if (overlay_every < 0) throw ValidationError("run.overlay_every must be >= 0");
  if (uses_phantom() || pipeline == Pipeline::phantom) {
    PhantomSpec spec = phantom;
    spec.seed = seed;
    spec.validate();
  }
  field.force.validate();
  if (field.smooth_sigma < 0.0) throw ValidationError("field.smooth_sigma must be >= 0");
  if (field.edge_threshold < 0.0) throw ValidationError("field.edge_threshold must be >= 0");
  balloon_config().validate();
  if (snake_vertices < 4) throw ValidationError("snake.vertices must be >= 4");
  if (!snake_seed.empty()) parse_seed_region(snake_seed).validate();
  gac_config().validate();
  if (!gac_seed.empty()) parse_seed_region(gac_seed).validate();
  if (!(profile_length > 0.0)) throw ValidationError("profile.length must be > 0");
  if (!(profile_step > 0.0)) throw ValidationError("profile.step must be > 0");
  if (!profile_center.empty()) {
    double x = 0.0, y = 0.0;
    char tail = 0;
    if (std::sscanf(profile_center.c_str(), "%lf , %lf %c", &x, &y, &tail) != 2) {
      throw ValidationError("profile.center must be 'x,y'");
    }
  }
}

nlohmann::json RunConfig::to_json() const
{
  nlohmann::json out;
  out["run"]["pipeline"] = std::string(to_string(pipeline));
  for (const Field &f : fields()) out[f.section][f.key] = f.get(*this);
  return out;
}

RunConfig make_default_config(Pipeline pipeline, std::optional<PhantomKind> kind, int phantom_size)
{
  RunConfig c;
  c.pipeline = pipeline;
  c.phantom.size = phantom_size;
  if (!kind) return c;

  c.phantom.kind = *kind;
  const double s = phantom_size;
  switch (*kind) {
    case PhantomKind::two_circle:
      c.snake_seed = format_seed("disk", {0.34 * s, 0.66 * s, 8.0});
      break;
    case PhantomKind::three_circle:
    case PhantomKind::gap_circle:
      c.snake_seed = format_seed("disk", {0.5 * s, 0.5 * s, 8.0});
      break;
    case PhantomKind::t_tube:
      c.snake_seed = format_seed("disk", {0.5 * s, 0.78 * s, 6.0});
      break;
    case PhantomKind::n_blob_plate:
      c.snake_seed = format_seed("disk", {0.5 * s, 0.547 * s, 8.0});
      break;
  }

  if (*kind == PhantomKind::gap_circle) {
    // Outward propagation escapes through the gap, so the seed starts close
    // to the ring and stage two does the closing.
    c.gac_seed = format_seed("disk", {0.5 * s, 0.5 * s, 0.625 * c.phantom.radius});
    c.gac.lambda = 0.0;
  } else {
    // A rectangle around the objects, attracted onto the edges it crosses
    // and then shrunk onto the objects.
    const double bottom = *kind == PhantomKind::three_circle ? 0.781 : 0.922;
    c.gac_seed = format_seed("rect", {0.078 * s, 0.078 * s, 0.922 * s, bottom * s});
    c.gac.lambda = -1.0;
    c.gac.attract = true;
  }
  return c;
}

RunConfig parse_config(const std::string &text, const ConfigOverrides &overrides)
{
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ValidationError(std::string("config: ") + e.what());
  }

  auto raw = [&](const char *path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(path)) return *v;
    return std::nullopt;
  };

  Pipeline selected = Pipeline::snake_multi;
  if (overrides.pipeline) {
    selected = *overrides.pipeline;
  } else if (auto p = raw("run.pipeline")) {
    try {
      selected = parse_pipeline(trim(*p));
    } catch (const ValidationError &) {
      bad_value("run.pipeline", *p);
    }
  }

  const std::string input = overrides.input ? *overrides.input
                                            : trim(raw("run.input").value_or("phantom"));
  std::optional<PhantomKind> kind;
  int size = PhantomSpec{}.size;
  if (input == "phantom" || selected == Pipeline::phantom) {
    kind = PhantomSpec{}.kind;
    if (overrides.phantom) {
      kind = overrides.phantom;
    } else if (auto k = raw("phantom.kind")) {
      kind = parse_value<PhantomKind>(*k, "phantom.kind");
    }
    if (auto v = raw("phantom.size")) size = parse_value<int>(*v, "phantom.size");
  }
  RunConfig c = make_default_config(selected, kind, size);

  for (const auto &[section, entries] : tree) {
    if (!entries.data().empty() && entries.empty()) {
      throw ValidationError("config: key '" + section + "' outside a section");
    }
    for (const auto &[key, value] : entries) {
      if (section == "run" && key == "pipeline") continue;
      const Field *f = find_field(section, key);
      if (!f) throw ValidationError("config: unknown key " + section + "." + key);
      f->set(c, value.data());
    }
  }
  c.input = input;
  if (kind) c.phantom.kind = *kind;
  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.overlay_every) c.overlay_every = *overrides.overlay_every;
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path &path, const ConfigOverrides &overrides)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read config: " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), overrides);
}

} // namespace pmseg::app
