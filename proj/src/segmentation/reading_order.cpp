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

#include <algorithm>
#include <numeric>

#include "segmentation/segmentation.hpp"

namespace folio::seg {

namespace {

struct Item {
  Box box;
  std::string id;
  bool emit = true;  // images shape the layout but are not read
};

using Items = std::vector<Item>;

bool share_column(const Box& a, const Box& b) {
  const int overlap = std::min(a.x1, b.x1) - std::max(a.x0, b.x0) + 1;
  const int narrower = std::min(a.width(), b.width());
  return overlap > 0 && 2 * overlap >= narrower;
}

// Transitive clusters under share_column, sorted left to right.
std::vector<Items> columns(const Items& items) {
  std::vector<int> parent(items.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (share_column(items[i].box, items[j].box))
        parent[find(static_cast<int>(i))] = find(static_cast<int>(j));

  std::vector<Items> groups;
  std::vector<int> slot(items.size(), -1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int root = find(static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(items[i]);
  }
  auto left = [](const Items& g) {
    int x = g.front().box.x0;
    for (const auto& it : g) x = std::min(x, it.box.x0);
    return x;
  };
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const Items& a, const Items& b) { return left(a) < left(b); });
  return groups;
}

// Horizontal bands separated by rows that no item spans, top to bottom.
std::vector<Items> bands(Items items) {
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.box.y0 != b.box.y0 ? a.box.y0 < b.box.y0 : a.id < b.id;
  });
  std::vector<Items> out;
  int reach = 0;
  for (auto& it : items) {
    if (out.empty() || it.box.y0 > reach) {
      out.emplace_back();
      reach = it.box.y1;
    }
    reach = std::max(reach, it.box.y1);
    out.back().push_back(std::move(it));
  }
  return out;
}

void order(const Items& items, std::vector<std::string>& out);

void top_to_bottom(Items items, std::vector<std::string>& out) {
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.box.y0 != b.box.y0) return a.box.y0 < b.box.y0;
    if (a.box.x0 != b.box.x0) return a.box.x0 < b.box.x0;
    return a.id < b.id;
  });
  for (auto& it : items)
    if (it.emit) out.push_back(it.id);
}

void order(const Items& items, std::vector<std::string>& out) {
  if (items.size() <= 1) {
    for (const auto& it : items)
      if (it.emit) out.push_back(it.id);
    return;
  }
  std::vector<Items> split = bands(items);
  if (split.size() > 1) {
    // A gap below a multi-column band is coincidental when the next band
    // only continues those columns.
    std::vector<Items> merged;
    for (auto& band : split) {
      const std::size_t above = merged.empty() ? 0 : columns(merged.back()).size();
      if (above > 1) {
        Items joined = merged.back();
        joined.insert(joined.end(), band.begin(), band.end());
        if (columns(joined).size() == above) {
          merged.back() = std::move(joined);
          continue;
        }
      }
      merged.push_back(std::move(band));
    }
    if (merged.size() > 1) {
      for (const auto& band : merged) order(band, out);
      return;
    }
  }
  std::vector<Items> cols = columns(items);
  if (cols.size() > 1) {
    for (const auto& col : cols) order(col, out);
    return;
  }
  top_to_bottom(items, out);
}

}  // namespace

PageSegmentation assign_reading_order(const PageSegmentation& seg) {
  Items items;
  for (const Region& r : seg.regions)
    items.push_back({r.boundary.bbox(), r.id, page::is_text(r.kind)});
  PageSegmentation out = seg;
  out.reading_order.clear();
  order(items, out.reading_order);
  return out;
}

}  // namespace folio::seg
