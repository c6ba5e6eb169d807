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
#include <numbers>
#include <vector>

#include "common/error.hpp"
#include "imaging/image.hpp"

namespace folio::imaging {

namespace {

double to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Maps destination pixels back into the source for a rotation by `degrees`
// about the image center and calls sample(dst_x, dst_y, src_x, src_y).
template <typename Fn>
void inverse_map(int width, int height, double degrees, Fn&& sample) {
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double c = std::cos(to_rad(degrees));
  const double s = std::sin(to_rad(degrees));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      const int sx = static_cast<int>(std::lround(cx + dx * c + dy * s));
      const int sy = static_cast<int>(std::lround(cy - dx * s + dy * c));
      sample(x, y, sx, sy);
    }
  }
}

}  // namespace

BinaryImage rotate(const BinaryImage& img, double degrees) {
  BinaryImage out(img.width(), img.height());
  inverse_map(img.width(), img.height(), degrees,
              [&](int x, int y, int sx, int sy) {
                if (img.get_or_bg(sx, sy)) out.set(x, y, true);
              });
  return out;
}

GrayImage rotate(const GrayImage& img, double degrees, std::uint8_t fill) {
  GrayImage out(img.width(), img.height(), fill);
  inverse_map(img.width(), img.height(), degrees,
              [&](int x, int y, int sx, int sy) {
                if (sx >= 0 && sy >= 0 && sx < img.width() && sy < img.height())
                  out.at(x, y) = img.at(sx, sy);
              });
  return out;
}

double estimate_skew(const BinaryImage& img, SkewSearch search) {
  std::vector<std::pair<double, double>> points;  // centered (x, y)
  const double cx = (img.width() - 1) / 2.0;
  const double cy = (img.height() - 1) / 2.0;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.get(x, y)) points.emplace_back(x - cx, y - cy);
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyImage, "estimate_skew: no foreground pixels");
  }

  const int steps = static_cast<int>(std::lround(search.range_deg / search.step_deg));
  const int diag = static_cast<int>(std::ceil(std::hypot(img.width(), img.height())));
  std::vector<std::int64_t> profile(static_cast<std::size_t>(2 * diag + 1));

  // With a fixed bin range and a fixed point count, the profile variance is
  // an increasing function of the sum of squared bin counts.
  auto score = [&](double degrees) {
    std::fill(profile.begin(), profile.end(), 0);
    const double c = std::cos(to_rad(degrees));
    const double s = std::sin(to_rad(degrees));
    for (const auto& [dx, dy] : points) {
      // Centered coordinates are half-integers; floor keeps 0 deg off the
      // rounding ties that lround would hit.
      const auto row = static_cast<long>(std::floor(dx * s + dy * c));
      ++profile[static_cast<std::size_t>(row + diag)];
    }
    std::int64_t sq = 0;
    for (auto h : profile) sq += h * h;
    return sq;
  };

  // Visit 0, +step, -step, +2 step, ... so that ties resolve toward 0.
  double best_angle = 0.0;
  std::int64_t best = score(0.0);
  for (int i = 1; i <= steps; ++i) {
    for (int sign : {1, -1}) {
      const double angle = sign * i * search.step_deg;
      const std::int64_t v = score(angle);
      if (v > best) {
        best = v;
        best_angle = angle;
      }
    }
  }
  return best_angle;
}

}  // namespace folio::imaging
