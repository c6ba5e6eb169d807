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

#include <compare>
#include <string>
#include <vector>

#include "imaging/image.hpp"
#include "page/page_model.hpp"

namespace folio::seg {

using imaging::BinaryImage;
using page::LayoutConfig;
using page::PageSegmentation;
using page::Region;
using page::TextLine;

struct SegmentationParams {
  int text_merge_se = 7;
  double image_min_area_frac = 0.03;
  // A large component is only an image if its bounding box is at least
  // (1 - image_density_max) filled; sparser ones are treated as text ink.
  double image_density_max = 0.9;
  int min_region_area_px = 64;
  double line_valley_frac = 0.05;
  page::HeadingRuleConfig heading;
  double initial_span_lines = 2.0;

  void validate() const;
};

struct LineRef {
  std::string region_id;
  int line_index = 0;

  friend auto operator<=>(const LineRef&, const LineRef&) = default;
};

// Block-level regions: large components become images, the remaining ink is
// merged by dilation and each merged block is typed by the layout rules.
PageSegmentation coarse_segment(const BinaryImage& bin,
                                const LayoutConfig& layout,
                                const SegmentationParams& params,
                                const std::string& page_id = "page");

// Projection-profile line finder over the region's pixels.
std::vector<TextLine> detect_lines(const BinaryImage& bin, const Region& region,
                                   const SegmentationParams& params);

// Same, over every pixel of `bin`.
std::vector<TextLine> detect_lines(const BinaryImage& bin,
                                   const SegmentationParams& params);

// Lines taller than the mean paragraph line whose glyph components are, on
// average, at least area_ratio_threshold times the page-wide text mean.
std::vector<LineRef> detect_headings(const BinaryImage& bin,
                                     const PageSegmentation& seg,
                                     const SegmentationParams& params);

// Cuts flagged lines out of their regions along line borders; consecutive
// flagged lines of one region form a single heading.
PageSegmentation apply_headings(const PageSegmentation& seg,
                                const std::vector<LineRef>& flagged);

// Moves oversized left-anchored components (ornate initials) out of text
// regions into image regions. Modified text regions get their lines
// re-detected.
PageSegmentation extract_initials(const BinaryImage& bin,
                                  const PageSegmentation& seg,
                                  const SegmentationParams& params);

// Recursive XY-cut over the text regions.
PageSegmentation assign_reading_order(const PageSegmentation& seg);

// Full pipeline: coarse, lines, initials, lines again, headings, reading
// order.
PageSegmentation segment_page(const BinaryImage& bin, const LayoutConfig& layout,
                              const SegmentationParams& params,
                              const std::string& page_id = "page");

}  // namespace folio::seg
