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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "common/geometry.hpp"

namespace folio::imaging {

// 8-bit luminance raster, row-major, 0 = black.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 255);
  GrayImage(int width, int height, std::vector<std::uint8_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return samples_.empty(); }

  std::uint8_t at(int x, int y) const { return samples_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return samples_[index(x, y)]; }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

// Two-valued raster; true = foreground ink.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height, bool fill = false);
  BinaryImage(int width, int height, std::vector<std::uint8_t> mask);

  int width() const { return width_; }
  int height() const { return height_; }

  bool get(int x, int y) const { return mask_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { mask_[index(x, y)] = v ? 1 : 0; }
  // Out-of-bounds reads are background.
  bool get_or_bg(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && get(x, y);
  }

  std::span<const std::uint8_t> mask() const { return mask_; }
  std::int64_t count() const;
  bool any() const { return count() > 0; }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> mask_;
};

// Square structuring element with its origin at the center.
class StructuringElement {
 public:
  explicit StructuringElement(int size);
  int size() const { return size_; }
  int radius() const { return size_ / 2; }

 private:
  int size_;
};

struct BinarizeConfig {
  int window = 31;
  double k = 0.3;
  double r = 128.0;

  void validate() const;
};

enum class Connectivity { kFour = 4, kEight = 8 };

struct ComponentStats {
  int label = 0;
  Box bbox;
  std::int64_t area = 0;
  double cx = 0.0;
  double cy = 0.0;
};

struct Components {
  int width = 0;
  int height = 0;
  // 0 = background; component i (0-based in `stats`) carries label i + 1.
  std::vector<int> labels;
  std::vector<ComponentStats> stats;

  int label_at(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
};

// Binarization
BinaryImage sauvola_binarize(const GrayImage& img, const BinarizeConfig& cfg);
BinaryImage threshold(const GrayImage& img, std::uint8_t level = 127);
GrayImage to_gray(const BinaryImage& img);

// Morphology. Pixels outside the raster are background for both operators.
BinaryImage dilate(const BinaryImage& img, StructuringElement se);
BinaryImage erode(const BinaryImage& img, StructuringElement se);
BinaryImage close(const BinaryImage& img, StructuringElement se);

Components connected_components(const BinaryImage& img,
                                Connectivity connectivity);

struct SkewSearch {
  double range_deg = 5.0;
  double step_deg = 0.1;
};

// Angle (degrees) that, passed to rotate(), best aligns text rows with the
// x axis. Throws EmptyImage if there is no foreground.
double estimate_skew(const BinaryImage& img, SkewSearch search = {});

// Nearest-neighbour rotation about the image center; output keeps the input
// dimensions and uncovered pixels become background.
BinaryImage rotate(const BinaryImage& img, double degrees);
GrayImage rotate(const GrayImage& img, double degrees, std::uint8_t fill = 255);

BinaryImage remove_scan_border(const BinaryImage& img);

struct Preprocessed {
  BinaryImage binary;
  double skew_deg = 0.0;  // correction applied to the scan
};

// Binarize, drop the scan border, estimate skew on the cleaned mask, then
// rotate the gray scan and binarize and clean again.
Preprocessed preprocess(const GrayImage& scan, const BinarizeConfig& cfg,
                        SkewSearch search = {});

// The box is clipped to the raster; a box that misses it entirely throws
// InvalidArgument.
GrayImage crop(const GrayImage& img, const Box& box);
BinaryImage crop(const BinaryImage& img, const Box& box);
GrayImage resize_bilinear(const GrayImage& img, int width, int height);

}  // namespace folio::imaging
