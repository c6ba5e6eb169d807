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

#include <vector>

#include "imaging/image.hpp"

namespace folio::imaging {

namespace {

// One separable pass of a (2r+1)-wide window along rows or columns. For
// dilation a pixel is set if any pixel in the window is set; for erosion all
// window pixels must be set, and out-of-range positions count as background.
enum class Op { kDilate, kErode };

std::vector<std::uint8_t> pass(std::span<const std::uint8_t> src, int width,
                               int height, int radius, bool along_rows, Op op) {
  std::vector<std::uint8_t> dst(src.size(), 0);
  const int outer = along_rows ? height : width;
  const int inner = along_rows ? width : height;
  const int full = 2 * radius + 1;
  std::vector<int> prefix(inner + 1);

  for (int o = 0; o < outer; ++o) {
    auto idx = [&](int i) {
      return along_rows ? static_cast<std::size_t>(o) * width + i
                        : static_cast<std::size_t>(i) * width + o;
    };
    prefix[0] = 0;
    for (int i = 0; i < inner; ++i) prefix[i + 1] = prefix[i] + src[idx(i)];
    for (int i = 0; i < inner; ++i) {
      const int lo = i - radius;
      const int hi = i + radius;
      const int set = prefix[std::min(hi, inner - 1) + 1] - prefix[std::max(lo, 0)];
      if (op == Op::kDilate) {
        dst[idx(i)] = set > 0 ? 1 : 0;
      } else {
        dst[idx(i)] = (lo >= 0 && hi < inner && set == full) ? 1 : 0;
      }
    }
  }
  return dst;
}

BinaryImage apply(const BinaryImage& img, StructuringElement se, Op op) {
  if (se.radius() == 0) return img;
  auto rows = pass(img.mask(), img.width(), img.height(), se.radius(), true, op);
  auto both = pass(rows, img.width(), img.height(), se.radius(), false, op);
  return BinaryImage(img.width(), img.height(), std::move(both));
}

}  // namespace

BinaryImage dilate(const BinaryImage& img, StructuringElement se) {
  return apply(img, se, Op::kDilate);
}

BinaryImage erode(const BinaryImage& img, StructuringElement se) {
  return apply(img, se, Op::kErode);
}

BinaryImage close(const BinaryImage& img, StructuringElement se) {
  return erode(dilate(img, se), se);
}

}  // namespace folio::imaging
