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

// Breadth-first labelling in raster order, so labels are numbered by the
// position of each component's first pixel.
Components connected_components(const BinaryImage& img,
                                Connectivity connectivity) {
  Components out;
  out.width = img.width();
  out.height = img.height();
  out.labels.assign(static_cast<std::size_t>(img.width()) * img.height(), 0);

  static constexpr int kDx[] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int neighbours = connectivity == Connectivity::kFour ? 4 : 8;

  std::vector<std::size_t> queue;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::size_t seed = static_cast<std::size_t>(y) * img.width() + x;
      if (!img.get(x, y) || out.labels[seed] != 0) continue;

      const int label = static_cast<int>(out.stats.size()) + 1;
      ComponentStats st;
      st.label = label;
      double sx = 0.0;
      double sy = 0.0;
      queue.clear();
      queue.push_back(seed);
      out.labels[seed] = label;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const int px = static_cast<int>(queue[head] % img.width());
        const int py = static_cast<int>(queue[head] / img.width());
        st.bbox.expand(px, py);
        ++st.area;
        sx += px;
        sy += py;
        for (int n = 0; n < neighbours; ++n) {
          const int nx = px + kDx[n];
          const int ny = py + kDy[n];
          if (!img.get_or_bg(nx, ny)) continue;
          const std::size_t ni = static_cast<std::size_t>(ny) * img.width() + nx;
          if (out.labels[ni] != 0) continue;
          out.labels[ni] = label;
          queue.push_back(ni);
        }
      }
      st.cx = sx / static_cast<double>(st.area);
      st.cy = sy / static_cast<double>(st.area);
      out.stats.push_back(st);
    }
  }
  return out;
}

}  // namespace folio::imaging
