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

#include "pmseg/image_io.hpp"

#include "pmseg/error.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

namespace pmseg {

namespace {

bool has_png_extension(const std::filesystem::path &path)
{
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

std::vector<unsigned char> read_all(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Netpbm header token reader; skips whitespace and '#' comments.
class PnmHeader
{
public:
  explicit PnmHeader(const std::vector<unsigned char> &bytes) : bytes_(bytes) {}

  std::string token()
  {
    skip_space();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    return out;
  }

  long number()
  {
    const std::string t = token();
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) {
      throw IoError("malformed netpbm header");
    }
    return std::stol(t);
  }

  // Exactly one whitespace byte separates the header from binary data.
  std::size_t data_offset() const { return pos_ + 1; }

private:
  void skip_space()
  {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char> &bytes_;
  std::size_t pos_ = 0;
};

GrayImage decode_pnm(const std::vector<unsigned char> &bytes, const std::string &name)
{
  PnmHeader header(bytes);
  const std::string magic = header.token();
  if (magic != "P2" && magic != "P5" && magic != "P6") {
    throw IoError("unsupported format: " + name);
  }
  const long w = header.number();
  const long h = header.number();
  const long maxval = header.number();
  if (w <= 0 || h <= 0) throw IoError("zero-sized image: " + name);
  if (maxval <= 0 || maxval > 65535) throw IoError("bad maxval in " + name);
  if (w < 3 || h < 3) throw IoError("image smaller than 3x3: " + name);

  Grid<double> values(static_cast<int>(w), static_cast<int>(h));
  const double scale = 1.0 / static_cast<double>(maxval);
  const std::size_t count = values.size();

  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = std::min(1.0, static_cast<double>(header.number()) * scale);
    }
    return GrayImage(std::move(values));
  }

  const std::size_t channels = magic == "P6" ? 3 : 1;
  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t offset = header.data_offset();
  if (bytes.size() < offset + count * channels * sample_bytes) {
    throw IoError("truncated image data: " + name);
  }
  auto sample = [&](std::size_t k) -> double {
    const unsigned char *p = bytes.data() + offset + k * sample_bytes;
    const unsigned v = sample_bytes == 2 ? (unsigned(p[0]) << 8) | p[1] : p[0];
    return std::min(1.0, v * scale);
  };
  for (std::size_t i = 0; i < count; ++i) {
    if (channels == 1) {
      values[i] = sample(i);
    } else {
      values[i] = std::clamp(0.299 * sample(3 * i) + 0.587 * sample(3 * i + 1) +
                                 0.114 * sample(3 * i + 2),
                             0.0, 1.0);
    }
  }
  return GrayImage(std::move(values));
}

GrayImage decode_png(const std::filesystem::path &path)
{
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw IoError("cannot decode PNG " + path.string() + ": " + image.message);
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw IoError("zero-sized image: " + path.string());
  }
  if (image.width < 3 || image.height < 3) {
    png_image_free(&image);
    throw IoError("image smaller than 3x3: " + path.string());
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot decode PNG " + path.string() + ": " + message);
  }
  Grid<double> values(static_cast<int>(image.width), static_cast<int>(image.height));
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = buffer[i] / 255.0;
  return GrayImage(std::move(values));
}

void write_png(const std::filesystem::path &path, const unsigned char *data, int width,
               int height, png_uint_32 format)
{
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, data, 0, nullptr)) {
    throw IoError("cannot write " + path.string() + ": " + image.message);
  }
}

void write_bytes(const std::filesystem::path &path, const std::string &header,
                 const unsigned char *data, std::size_t n)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << header;
  out.write(reinterpret_cast<const char *>(data), static_cast<std::streamsize>(n));
  if (!out) throw IoError("write failed: " + path.string());
}

} // namespace

GrayImage load_image(const std::filesystem::path &path)
{
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("cannot open " + path.string());
  }
  if (std::filesystem::file_size(path, ec) == 0) {
    throw IoError("empty file: " + path.string());
  }
  const std::vector<unsigned char> bytes = read_all(path);
  static constexpr unsigned char png_magic[] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::equal(std::begin(png_magic), std::end(png_magic), bytes.begin())) {
    return decode_png(path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    return decode_pnm(bytes, path.string());
  }
  throw IoError("unsupported format: " + path.string());
}

void save_gray(const std::filesystem::path &path, const Grid<std::uint8_t> &pixels)
{
  const auto v = pixels.values();
  if (has_png_extension(path)) {
    write_png(path, v.data(), pixels.width(), pixels.height(), PNG_FORMAT_GRAY);
  } else {
    const std::string header = "P5\n" + std::to_string(pixels.width()) + " " +
                               std::to_string(pixels.height()) + "\n255\n";
    write_bytes(path, header, v.data(), v.size());
  }
}

void save_image(const std::filesystem::path &path, const GrayImage &img)
{
  Grid<std::uint8_t> bytes(img.width(), img.height());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(std::lround(img.grid()[i] * 255.0));
  }
  save_gray(path, bytes);
}

void save_mask(const std::filesystem::path &path, const Grid<std::uint8_t> &mask)
{
  Grid<std::uint8_t> bytes(mask.width(), mask.height());
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = mask[i] ? 255 : 0;
  save_gray(path, bytes);
}

void save_rgb(const std::filesystem::path &path, const RgbImage &img)
{
  std::vector<unsigned char> flat;
  flat.reserve(img.size() * 3);
  for (const Rgb &px : img.values()) flat.insert(flat.end(), px.begin(), px.end());
  if (has_png_extension(path)) {
    write_png(path, flat.data(), img.width(), img.height(), PNG_FORMAT_RGB);
  } else {
    const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    write_bytes(path, header, flat.data(), flat.size());
  }
}

Grid<std::uint8_t> normalize_to_bytes(const Grid<double> &values)
{
  Grid<std::uint8_t> out(values.width(), values.height());
  if (values.empty()) return out;
  const auto v = values.values();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = span > 0.0 ? (v[i] - *lo) / span : 0.0;
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * t));
  }
  return out;
}

} // namespace pmseg
