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

#include "evaluation/seg_diff.hpp"

#include <algorithm>
#include <set>

#include "common/error.hpp"

namespace folio::eval {

using page::PageSegmentation;
using page::RegionType;

bool SegDiff::needs_correction() const {
  return !type_confusions.empty() || !unmatched_a.empty() || !unmatched_b.empty() ||
         !order_consistent;
}

SegDiff diff_segmentations(const PageSegmentation& a, const PageSegmentation& b,
                           double iou_min) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "page sizes differ: " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                    std::to_string(b.height));
  }
  struct Candidate {
    double iou;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> cands;
  std::vector<Box> boxes_b;
  for (const auto& r : b.regions) boxes_b.push_back(r.boundary.bbox());
  for (std::size_t i = 0; i < a.regions.size(); ++i) {
    const Box ba = a.regions[i].boundary.bbox();
    for (std::size_t j = 0; j < b.regions.size(); ++j) {
      const double v = iou(ba, boxes_b[j]);
      if (v >= iou_min && v > 0.0) cands.push_back({v, i, j});
    }
  }
  // Ties resolve by ids so the result is independent of argument order.
  std::sort(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.iou != y.iou) return x.iou > y.iou;
    const auto& xa = a.regions[x.i].id;
    const auto& ya = a.regions[y.i].id;
    if (xa != ya) return xa < ya;
    return b.regions[x.j].id < b.regions[y.j].id;
  });

  SegDiff d;
  d.page_id = a.page_id;
  std::vector<bool> used_a(a.regions.size(), false);
  std::vector<bool> used_b(b.regions.size(), false);
  std::map<std::string, std::string> a_to_b;
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    const auto& ra = a.regions[c.i];
    const auto& rb = b.regions[c.j];
    d.matched.push_back({ra.id, rb.id, c.iou});
    a_to_b[ra.id] = rb.id;
    if (ra.kind != rb.kind) ++d.type_confusions[{ra.kind, rb.kind}];
  }
  for (std::size_t i = 0; i < a.regions.size(); ++i)
    if (!used_a[i]) d.unmatched_a.push_back(a.regions[i].id);
  for (std::size_t j = 0; j < b.regions.size(); ++j)
    if (!used_b[j]) d.unmatched_b.push_back(b.regions[j].id);

  std::vector<std::string> mapped;
  for (const auto& id : a.reading_order) {
    auto it = a_to_b.find(id);
    if (it != a_to_b.end()) mapped.push_back(it->second);
  }
  std::set<std::string> mapped_set(mapped.begin(), mapped.end());
  std::vector<std::string> restricted;
  for (const auto& id : b.reading_order)
    if (mapped_set.count(id) != 0) restricted.push_back(id);
  d.order_consistent = mapped == restricted;
  return d;
}

double TypeCounts::f1() const {
  const int denom = 2 * tp + fp + fn;
  return denom == 0 ? 1.0 : 2.0 * tp / denom;
}

void DiffSummary::add(const PageSegmentation& a, const PageSegmentation& b,
                      const SegDiff& diff) {
  ++pages;
  if (diff.needs_correction()) ++pages_needing_correction;
  auto slot = [&](RegionType t) -> TypeCounts& {
    return per_type[static_cast<std::size_t>(t)];
  };
  for (const auto& m : diff.matched) {
    const RegionType ta = a.find(m.a)->kind;
    const RegionType tb = b.find(m.b)->kind;
    if (ta == tb) {
      ++slot(ta).tp;
    } else {
      ++slot(ta).fn;
      ++slot(tb).fp;
    }
  }
  for (const auto& id : diff.unmatched_a) ++slot(a.find(id)->kind).fn;
  for (const auto& id : diff.unmatched_b) ++slot(b.find(id)->kind).fp;
}

nlohmann::json to_json(const SegDiff& diff) {
  nlohmann::json matched = nlohmann::json::array();
  for (const auto& m : diff.matched)
    matched.push_back({{"a", m.a}, {"b", m.b}, {"iou", m.iou}});
  nlohmann::json confusions = nlohmann::json::array();
  for (const auto& [types, n] : diff.type_confusions) {
    confusions.push_back({{"a", std::string(page::to_string(types.first))},
                          {"b", std::string(page::to_string(types.second))},
                          {"count", n}});
  }
  return {{"page_id", diff.page_id},
          {"matched", matched},
          {"type_confusions", confusions},
          {"unmatched_a", diff.unmatched_a},
          {"unmatched_b", diff.unmatched_b},
          {"order_consistent", diff.order_consistent},
          {"needs_correction", diff.needs_correction()}};
}

nlohmann::json to_json(const DiffSummary& summary) {
  nlohmann::json types = nlohmann::json::object();
  for (RegionType t : page::kAllRegionTypes) {
    const auto& c = summary.per_type[static_cast<std::size_t>(t)];
    types[std::string(page::to_string(t))] = {
        {"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"f1", c.f1()}};
  }
  return {{"pages", summary.pages},
          {"pages_needing_correction", summary.pages_needing_correction},
          {"per_type", types}};
}

}  // namespace folio::eval
