// Copyright 2026 The survx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "survx/codec.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>

namespace survx {

namespace {

constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

[[noreturn]] void malformed(const std::string& msg) {
  throw ImageError(ImageErrc::kMalformedFile, msg);
}

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Reads one unsigned decimal field, skipping whitespace and '#' comments.
  long next_field() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) malformed("PNM header truncated");
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > (1L << 24)) malformed("PNM header field too large");
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) malformed("PNM header truncated");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

ImageTensor decode_pnm(std::span<const std::uint8_t> bytes, int channels) {
  PnmHeaderReader reader(bytes);
  const long width = reader.next_field();
  const long height = reader.next_field();
  const long maxval = reader.next_field();
  if (width < 1 || height < 1) malformed("PNM dimensions must be positive");
  if (maxval != 255) {
    throw ImageError(ImageErrc::kUnsupportedFormat,
                     "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t plane = static_cast<std::size_t>(width) * height;
  const std::size_t count = plane * channels;
  if (bytes.size() < offset + count) malformed("PNM raster truncated");

  // Interleaved RGB on disk, planar in memory.
  std::vector<double> samples(count);
  const std::uint8_t* raster = bytes.data() + offset;
  for (std::size_t i = 0; i < plane; ++i) {
    for (int c = 0; c < channels; ++c) {
      samples[c * plane + i] = raster[i * channels + c] / 255.0;
    }
  }
  return ImageTensor(channels, static_cast<int>(height), static_cast<int>(width), std::move(samples));
}

ImageTensor decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    const std::string msg = image.message;
    png_image_free(&image);
    malformed("PNG header: " + msg);
  }
  if (image.format & PNG_FORMAT_FLAG_COLORMAP) {
    png_image_free(&image);
    throw ImageError(ImageErrc::kUnsupportedFormat, "palette PNG is not supported");
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw ImageError(ImageErrc::kUnsupportedFormat, "16-bit PNG is not supported");
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const int channels = color ? 3 : 1;
  // Alpha, if present, is read and discarded.
  const int stored = color ? 4 : 2;
  image.format = color ? PNG_FORMAT_RGBA : PNG_FORMAT_GA;

  const std::size_t plane = static_cast<std::size_t>(image.width) * image.height;
  std::vector<std::uint8_t> buffer(plane * stored);
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    malformed("PNG data: " + msg);
  }
  std::vector<double> samples(plane * channels);
  for (std::size_t i = 0; i < plane; ++i) {
    for (int c = 0; c < channels; ++c) samples[c * plane + i] = buffer[i * stored + c] / 255.0;
  }
  return ImageTensor(channels, static_cast<int>(image.height), static_cast<int>(image.width),
                     std::move(samples));
}

std::vector<std::uint8_t> interleave(const ImageTensor& img) {
  const std::size_t plane = img.plane_size();
  const int channels = img.channels();
  std::vector<std::uint8_t> out(plane * channels);
  const auto& s = img.samples();
  for (std::size_t i = 0; i < plane; ++i) {
    for (int c = 0; c < channels; ++c) out[i * channels + c] = quantize_sample(s[c * plane + i]);
  }
  return out;
}

Bytes encode_pnm(const ImageTensor& img) {
  const std::string header = std::string(img.channels() == 3 ? "P6" : "P5") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             "\n255\n";
  Bytes out(header.begin(), header.end());
  const auto raster = interleave(img);
  out.insert(out.end(), raster.begin(), raster.end());
  return out;
}

Bytes encode_png(const ImageTensor& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const auto raster = interleave(img);

  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, raster.data(), 0, nullptr)) {
    throw ImageError(ImageErrc::kIo, std::string("PNG encode: ") + image.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, raster.data(), 0, nullptr)) {
    throw ImageError(ImageErrc::kIo, std::string("PNG encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace

std::uint8_t quantize_sample(double v) noexcept {
  const double q = std::floor(v * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

ImageTensor quantize_8bit(const ImageTensor& img) {
  std::vector<double> out(img.size());
  std::transform(img.samples().begin(), img.samples().end(), out.begin(),
                 [](double v) { return quantize_sample(v) / 255.0; });
  return ImageTensor(img.channels(), img.height(), img.width(), std::move(out));
}

ImageTensor decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin())) {
    return decode_png(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    if (bytes[1] == '6') return decode_pnm(bytes, 3);
    if (bytes[1] == '5') return decode_pnm(bytes, 1);
    if (bytes[1] >= '1' && bytes[1] <= '4') {
      throw ImageError(ImageErrc::kUnsupportedFormat, "ASCII/bitmap PNM variants are not supported");
    }
  }
  malformed("unrecognized image magic");
}

Bytes encode_image(const ImageTensor& img, ImageFormat format) {
  if (img.channels() != 1 && img.channels() != 3) {
    throw ImageError(ImageErrc::kUnsupportedChannelCount,
                     "cannot encode " + std::to_string(img.channels()) + " channels");
  }
  return format == ImageFormat::kPng ? encode_png(img) : encode_pnm(img);
}

ImageFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") return ImageFormat::kPng;
  if (ext == ".ppm" || ext == ".pnm" || ext == ".pgm") return ImageFormat::kPpm;
  throw ImageError(ImageErrc::kUnsupportedFormat, "unknown image extension: " + path.string());
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError(ImageErrc::kIo, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageError(ImageErrc::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageError(ImageErrc::kIo, "short write to " + path.string());
}

ImageTensor read_image(const std::filesystem::path& path) {
  const Bytes bytes = read_file(path);
  return decode_image(bytes);
}

void write_image(const std::filesystem::path& path, const ImageTensor& img) {
  write_file(path, encode_image(img, format_for_path(path)));
}

}  // namespace survx
