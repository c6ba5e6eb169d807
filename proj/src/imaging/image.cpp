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

#include "imaging/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "common/error.hpp"

namespace folio::imaging {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

std::size_t pixel_count(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  samples_.assign(pixel_count(width, height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_dims(width, height);
  if (samples_.size() != pixel_count(width, height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample count does not match width x height");
  }
}

BinaryImage::BinaryImage(int width, int height, bool fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  mask_.assign(pixel_count(width, height), fill ? 1 : 0);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
  check_dims(width, height);
  if (mask_.size() != pixel_count(width, height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask length does not match width x height");
  }
  for (auto& m : mask_) m = m ? 1 : 0;
}

std::int64_t BinaryImage::count() const {
  return std::accumulate(mask_.begin(), mask_.end(), std::int64_t{0});
}

StructuringElement::StructuringElement(int size) : size_(size) {
  if (size < 1 || size % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "structuring element size must be odd and >= 1, got " +
                    std::to_string(size));
  }
}

void BinarizeConfig::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "binarize window must be odd and >= 3");
  }
  if (!(k > 0.0 && k <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "binarize k must be in (0,1]");
  }
  if (!(r > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "binarize r must be positive");
  }
}

BinaryImage threshold(const GrayImage& img, std::uint8_t level) {
  std::vector<std::uint8_t> mask(img.samples().size());
  std::transform(img.samples().begin(), img.samples().end(), mask.begin(),
                 [level](std::uint8_t v) { return v <= level ? 1 : 0; });
  return BinaryImage(img.width(), img.height(), std::move(mask));
}

GrayImage to_gray(const BinaryImage& img) {
  std::vector<std::uint8_t> samples(img.mask().size());
  std::transform(img.mask().begin(), img.mask().end(), samples.begin(),
                 [](std::uint8_t m) { return m ? 0 : 255; });
  return GrayImage(img.width(), img.height(), std::move(samples));
}

GrayImage crop(const GrayImage& img, const Box& box) {
  const Box b = box.intersect({0, 0, img.width() - 1, img.height() - 1});
  if (b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "crop box outside image");
  }
  GrayImage out(b.width(), b.height());
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x) out.at(x, y) = img.at(b.x0 + x, b.y0 + y);
  return out;
}

BinaryImage crop(const BinaryImage& img, const Box& box) {
  const Box b = box.intersect({0, 0, img.width() - 1, img.height() - 1});
  if (b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "crop box outside image");
  }
  BinaryImage out(b.width(), b.height());
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x) out.set(x, y, img.get(b.x0 + x, b.y0 + y));
  return out;
}

GrayImage resize_bilinear(const GrayImage& img, int width, int height) {
  GrayImage out(width, height);
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double wy = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double wx = fx - x0;
      const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
      const double bot = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
      out.at(x, y) = static_cast<std::uint8_t>(
          std::lround(std::clamp(top * (1 - wy) + bot * wy, 0.0, 255.0)));
    }
  }
  return out;
}

}  // namespace folio::imaging
