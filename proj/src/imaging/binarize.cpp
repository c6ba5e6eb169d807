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

#include <cmath>
#include <cstdint>
#include <vector>

#include "imaging/image.hpp"

namespace folio::imaging {

namespace {

// Summed-area tables with a zero row/column of padding.
struct IntegralImages {
  int stride;
  std::vector<std::int64_t> sum;
  std::vector<std::int64_t> sum_sq;

  explicit IntegralImages(const GrayImage& img)
      : stride(img.width() + 1),
        sum(static_cast<std::size_t>(stride) * (img.height() + 1), 0),
        sum_sq(sum.size(), 0) {
    for (int y = 0; y < img.height(); ++y) {
      std::int64_t row = 0;
      std::int64_t row_sq = 0;
      for (int x = 0; x < img.width(); ++x) {
        const std::int64_t v = img.at(x, y);
        row += v;
        row_sq += v * v;
        sum[at(x + 1, y + 1)] = sum[at(x + 1, y)] + row;
        sum_sq[at(x + 1, y + 1)] = sum_sq[at(x + 1, y)] + row_sq;
      }
    }
  }

  std::size_t at(int x, int y) const {
    return static_cast<std::size_t>(y) * stride + x;
  }

  // Inclusive window [x0,x1] x [y0,y1].
  template <typename Table>
  std::int64_t window(const Table& t, int x0, int y0, int x1, int y1) const {
    return t[at(x1 + 1, y1 + 1)] - t[at(x0, y1 + 1)] - t[at(x1 + 1, y0)] +
           t[at(x0, y0)];
  }
};

}  // namespace

BinaryImage sauvola_binarize(const GrayImage& img, const BinarizeConfig& cfg) {
  cfg.validate();
  const IntegralImages integral(img);
  const int half = cfg.window / 2;
  std::vector<std::uint8_t> mask(img.samples().size());

  for (int y = 0; y < img.height(); ++y) {
    const int y0 = std::max(0, y - half);
    const int y1 = std::min(img.height() - 1, y + half);
    for (int x = 0; x < img.width(); ++x) {
      const int x0 = std::max(0, x - half);
      const int x1 = std::min(img.width() - 1, x + half);
      const std::int64_t n =
          static_cast<std::int64_t>(x1 - x0 + 1) * (y1 - y0 + 1);
      const std::int64_t s = integral.window(integral.sum, x0, y0, x1, y1);
      const std::int64_t sq = integral.window(integral.sum_sq, x0, y0, x1, y1);
      // Population variance, numerator kept exact in integers.
      const double mean = static_cast<double>(s) / static_cast<double>(n);
      const double var = static_cast<double>(n * sq - s * s) /
                         (static_cast<double>(n) * static_cast<double>(n));
      const double stddev = std::sqrt(var);
      const double t = mean * (1.0 + cfg.k * (stddev / cfg.r - 1.0));
      mask[static_cast<std::size_t>(y) * img.width() + x] =
          img.at(x, y) <= t ? 1 : 0;
    }
  }
  return BinaryImage(img.width(), img.height(), std::move(mask));
}

}  // namespace folio::imaging
