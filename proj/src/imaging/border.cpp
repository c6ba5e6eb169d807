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

constexpr int kCloseSize = 5;
constexpr double kEdgeBandFrac = 0.02;
constexpr int kMaxPasses = 8;

BinaryImage remove_border_once(const BinaryImage& img) {
  // Components are found on the closed image so that broken frame segments
  // and cut-off neighbour-page text join into a few large pieces; clearing
  // is applied to the original pixels only.
  // With out-of-bounds background the closing erodes the outermost rows
  // and columns; the union keeps edge ink attached to its component.
  std::vector<std::uint8_t> joined(img.mask().begin(), img.mask().end());
  const BinaryImage closed_raw = close(img, StructuringElement(kCloseSize));
  for (std::size_t i = 0; i < joined.size(); ++i) joined[i] |= closed_raw.mask()[i];
  const BinaryImage closed(img.width(), img.height(), std::move(joined));
  const Components cc = connected_components(closed, Connectivity::kEight);

  const int w = img.width();
  const int h = img.height();
  const Box inner{static_cast<int>(kEdgeBandFrac * w),
                  static_cast<int>(kEdgeBandFrac * h),
                  w - 1 - static_cast<int>(kEdgeBandFrac * w),
                  h - 1 - static_cast<int>(kEdgeBandFrac * h)};

  std::vector<bool> drop(cc.stats.size() + 1, false);
  for (const auto& st : cc.stats) {
    const bool touches_edge = st.bbox.x0 == 0 || st.bbox.y0 == 0 ||
                              st.bbox.x1 == w - 1 || st.bbox.y1 == h - 1;
    const bool in_edge_band = !inner.contains(st.cx, st.cy);
    drop[st.label] = touches_edge || in_edge_band;
  }

  BinaryImage out = img;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!img.get(x, y)) continue;
      // Every original ink pixel carries a label of the joined image.
      if (drop[cc.label_at(x, y)]) out.set(x, y, false);
    }
  }
  return out;
}

}  // namespace

BinaryImage remove_scan_border(const BinaryImage& img) {
  // Iterated to a fixed point: clearing pieces can split a closed component
  // and expose a remainder that the rule would drop on a second call.
  BinaryImage current = img;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    BinaryImage next = remove_border_once(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace folio::imaging
