// Copyright 2026 The Folio Authors
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

#include "imaging/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace folio::imaging {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_png_signature(const std::string& data) {
  return data.size() >= 8 &&
         png_sig_cmp(reinterpret_cast<png_const_bytep>(data.data()), 0, 8) == 0;
}

GrayImage decode_png(const std::string& data, const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
    throw Error(ErrorCode::kIo,
                "bad PNG " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::kIo,
                "bad PNG " + path.string() + ": " + image.message);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const std::uint8_t* p = &rgba[i * 4];
    // Composite onto white paper.
    const double a = p[3] / 255.0;
    auto over_white = [a](std::uint8_t c) {
      return static_cast<std::uint8_t>(std::lround(c * a + 255.0 * (1.0 - a)));
    };
    gray[i] = rec601_luma(over_white(p[0]), over_white(p[1]), over_white(p[2]));
  }
  return GrayImage(w, h, std::move(gray));
}

class PnmReader {
 public:
  PnmReader(const std::string& data, const fs::path& path)
      : data_(data), path_(path) {}

  GrayImage read() {
    if (data_.size() < 2 || data_[0] != 'P') fail("not a PNM file");
    const char kind = data_[1];
    pos_ = 2;
    const int w = next_int();
    const int h = next_int();
    if (w < 1 || h < 1) fail("bad dimensions");
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<std::uint8_t> gray(n);
    switch (kind) {
      case '1':
        for (auto& g : gray) g = next_bit() ? 0 : 255;
        break;
      case '4': {
        ++pos_;
        const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
        if (pos_ + row_bytes * h > data_.size()) fail("truncated data");
        for (int y = 0; y < h; ++y)
          for (int x = 0; x < w; ++x) {
            const auto byte = static_cast<std::uint8_t>(data_[pos_ + y * row_bytes + x / 8]);
            gray[static_cast<std::size_t>(y) * w + x] =
                (byte >> (7 - x % 8)) & 1 ? 0 : 255;
          }
        break;
      }
      case '2': {
        const int maxval = next_int();
        if (maxval < 1) fail("bad maxval");
        for (auto& g : gray) g = scale(next_int(), maxval);
        break;
      }
      case '5': {
        const int maxval = next_int();
        if (maxval < 1 || maxval > 255) fail("unsupported maxval");
        ++pos_;
        if (pos_ + n > data_.size()) fail("truncated data");
        for (std::size_t i = 0; i < n; ++i)
          gray[i] = scale(static_cast<std::uint8_t>(data_[pos_ + i]), maxval);
        break;
      }
      default:
        fail("unsupported PNM variant");
    }
    return GrayImage(w, h, std::move(gray));
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kIo, "bad PNM " + path_.string() + ": " + why);
  }

  void skip_space() {
    while (pos_ < data_.size()) {
      if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int next_int() {
    skip_space();
    if (pos_ >= data_.size() || !std::isdigit(static_cast<unsigned char>(data_[pos_])))
      fail("expected integer");
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > 1 << 20) fail("value too large");
    }
    return static_cast<int>(v);
  }

  bool next_bit() {
    skip_space();
    if (pos_ >= data_.size()) fail("truncated data");
    const char c = data_[pos_++];
    if (c != '0' && c != '1') fail("bad bit");
    return c == '1';
  }

  static std::uint8_t scale(int v, int maxval) {
    return static_cast<std::uint8_t>(std::lround(255.0 * std::min(v, maxval) / maxval));
  }

  const std::string& data_;
  fs::path path_;
  std::size_t pos_ = 0;
};

png_image gray_png_header(const GrayImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  return image;
}

}  // namespace

std::uint8_t rec601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>(
      std::lround(std::clamp(0.299 * r + 0.587 * g + 0.114 * b, 0.0, 255.0)));
}

GrayImage read_gray(const fs::path& path) {
  const std::string data = read_file(path);
  if (has_png_signature(data)) return decode_png(data, path);
  return PnmReader(data, path).read();
}

BinaryImage read_binary(const fs::path& path) {
  return threshold(read_gray(path), 127);
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  png_image image = gray_png_header(img);
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.samples().data(),
                                 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0,
                                 img.samples().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

void write_png(const fs::path& path, const GrayImage& img) {
  const auto bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

void write_png(const fs::path& path, const BinaryImage& img) {
  write_png(path, to_gray(img));
}

void write_pgm(const fs::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.samples().data()),
            static_cast<std::streamsize>(img.samples().size()));
}

void write_pbm(const fs::path& path, const BinaryImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << "P4\n" << img.width() << ' ' << img.height() << '\n';
  const std::size_t row_bytes = (static_cast<std::size_t>(img.width()) + 7) / 8;
  std::vector<char> row(row_bytes);
  for (int y = 0; y < img.height(); ++y) {
    std::fill(row.begin(), row.end(), 0);
    for (int x = 0; x < img.width(); ++x)
      if (img.get(x, y)) row[x / 8] = static_cast<char>(row[x / 8] | (0x80 >> (x % 8)));
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace folio::imaging
