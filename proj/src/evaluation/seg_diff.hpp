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

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "page/page_model.hpp"

namespace folio::eval {

struct MatchedPair {
  std::string a;
  std::string b;
  double iou = 0.0;
};

struct SegDiff {
  std::string page_id;
  std::vector<MatchedPair> matched;
  std::map<std::pair<page::RegionType, page::RegionType>, int> type_confusions;
  std::vector<std::string> unmatched_a;
  std::vector<std::string> unmatched_b;
  // Matched text regions appear in the same relative reading order.
  bool order_consistent = true;

  bool needs_correction() const;
};

inline constexpr double kDefaultIouMin = 0.5;

// Greedy matching of region bounding boxes by descending IoU. Throws
// DimensionMismatch if the page sizes differ.
SegDiff diff_segmentations(const page::PageSegmentation& a,
                           const page::PageSegmentation& b,
                           double iou_min = kDefaultIouMin);

struct TypeCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double f1() const;
};

// Corpus-level tallies with `a` taken as the reference.
struct DiffSummary {
  int pages = 0;
  int pages_needing_correction = 0;
  std::array<TypeCounts, 4> per_type{};  // indexed by RegionType

  void add(const page::PageSegmentation& a, const page::PageSegmentation& b,
           const SegDiff& diff);
};

nlohmann::json to_json(const SegDiff& diff);
nlohmann::json to_json(const DiffSummary& summary);

}  // namespace folio::eval
