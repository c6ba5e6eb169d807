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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/geometry.hpp"

namespace folio::page {

enum class RegionType { kImage, kParagraph, kHeading, kPageNumber };

inline constexpr std::array<RegionType, 4> kAllRegionTypes = {
    RegionType::kImage, RegionType::kParagraph, RegionType::kHeading,
    RegionType::kPageNumber};

// "image", "paragraph", "heading", "page-number".
std::string_view to_string(RegionType type);
std::optional<RegionType> region_type_from_string(std::string_view name);

inline bool is_text(RegionType type) { return type != RegionType::kImage; }

// Closed polygon over integer pixel coordinates. Vertices are pixel
// positions, so a rectangle with corners (x0,y0) and (x1,y1) covers exactly
// the pixels of the inclusive box.
struct Polygon {
  std::vector<Point> points;

  static Polygon rect(const Box& box);

  Box bbox() const;
  double area() const;
  bool self_intersects() const;
  // Inside or on the boundary.
  bool contains(int x, int y) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

// Removes vertices lying on a straight run between their neighbours.
Polygon simplify(Polygon poly);

// Row-major coverage mask of `poly` restricted to `box` (1 = covered).
std::vector<std::uint8_t> rasterize(const Polygon& poly, const Box& box);

// Per-row covered spans [first, last] of a polygon, one entry per row of its
// bounding box; rows without coverage hold an empty span (first > last).
struct RowSpans {
  int y0 = 0;
  std::vector<std::pair<int, int>> spans;
};
RowSpans row_spans(const Polygon& poly);

// Rectilinear polygon covering exactly the given per-row spans. Every span
// must be non-empty.
Polygon polygon_from_rows(const RowSpans& rows);

// Intersection of a y-monotone polygon with an axis-aligned box. Returns an
// empty polygon when nothing of positive area remains.
Polygon clip(const Polygon& poly, const Box& box);

struct TextLine {
  Box bbox;
  int index = 0;
  std::optional<std::string> text;

  friend bool operator==(const TextLine&, const TextLine&) = default;
};

struct Region {
  std::string id;
  RegionType kind = RegionType::kParagraph;
  Polygon boundary;
  std::vector<TextLine> lines;

  friend bool operator==(const Region&, const Region&) = default;
};

struct PageSegmentation {
  std::string page_id;
  int width = 0;
  int height = 0;
  std::vector<Region> regions;
  std::vector<std::string> reading_order;

  const Region* find(std::string_view id) const;
  Region* find(std::string_view id);

  friend bool operator==(const PageSegmentation&,
                         const PageSegmentation&) = default;
};

// "r0001", "r0002", ...
std::string region_id(int ordinal);
// Smallest ordinal not yet used by an id of that form on the page.
std::string next_free_region_id(const PageSegmentation& seg);

struct Violation {
  std::string region_id;  // empty for page-level rules
  std::string rule;
  std::string message;
};

std::vector<Violation> validate(const PageSegmentation& seg);

// Fractional page rectangle.
struct Zone {
  double x0f = 0.0;
  double y0f = 0.0;
  double x1f = 1.0;
  double y1f = 1.0;

  bool contains(double fx, double fy) const {
    return fx >= x0f && fx <= x1f && fy >= y0f && fy <= y1f;
  }
};

struct TypeRule {
  Zone allowed_zone;
  double min_area_frac = 0.0;
  double max_area_frac = 1.0;
};

struct LayoutConfig {
  std::array<TypeRule, 4> rules;  // indexed by RegionType

  TypeRule& rule(RegionType t) { return rules[static_cast<std::size_t>(t)]; }
  const TypeRule& rule(RegionType t) const {
    return rules[static_cast<std::size_t>(t)];
  }
  void validate() const;
};

// Images and paragraphs anywhere; headings top centre; page numbers in the
// top-right corner and tiny.
LayoutConfig default_layout_config();

struct HeadingRuleConfig {
  double area_ratio_threshold = 1.15;
  bool require_height_above_mean = true;

  void validate() const;
};

}  // namespace folio::page
