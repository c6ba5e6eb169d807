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

#include <doctest.h>

#include <algorithm>

#include "common/error.hpp"
#include "page/page_json.hpp"
#include "page/page_model.hpp"
#include "support/fixtures.hpp"

using namespace folio;
using namespace folio::page;
using fixtures::Rng;

namespace {

std::vector<std::string> rules(const PageSegmentation& seg) {
  std::vector<std::string> out;
  for (const Violation& v : validate(seg)) out.push_back(v.rule);
  return out;
}

const Region* first_of(const PageSegmentation& seg, bool text) {
  for (const Region& r : seg.regions)
    if (is_text(r.kind) == text) return &r;
  return nullptr;
}

// Appends an image region so that faults needing one always have a target.
std::string ensure_image(PageSegmentation& seg) {
  if (const Region* r = first_of(seg, false)) return r->id;
  const std::string id = next_free_region_id(seg);
  seg.regions.push_back(fixtures::rect_region(id, RegionType::kImage, {0, 0, 9, 9}));
  return id;
}

}  // namespace

TEST_CASE("region type names") {
  CHECK(to_string(RegionType::kPageNumber) == "page-number");
  CHECK(region_type_from_string("heading") == RegionType::kHeading);
  CHECK_FALSE(region_type_from_string("marginalia").has_value());
  for (RegionType t : kAllRegionTypes) CHECK(region_type_from_string(to_string(t)) == t);
  CHECK_FALSE(is_text(RegionType::kImage));
  CHECK(is_text(RegionType::kPageNumber));
}

TEST_CASE("rect polygons cover the inclusive box") {
  const Polygon p = Polygon::rect({2, 3, 5, 6});
  CHECK(p.bbox() == Box{2, 3, 5, 6});
  CHECK(p.area() == 9.0);
  CHECK(p.contains(2, 3));
  CHECK(p.contains(5, 6));
  CHECK_FALSE(p.contains(6, 6));
  CHECK_FALSE(p.self_intersects());
  const auto mask = rasterize(p, {0, 0, 9, 9});
  CHECK(std::count(mask.begin(), mask.end(), 1) == 16);
}

TEST_CASE("self intersection and simplify") {
  const Polygon bow{{{0, 0}, {10, 10}, {10, 0}, {0, 4}}};
  CHECK(bow.self_intersects());
  const Polygon padded{{{0, 0}, {5, 0}, {10, 0}, {10, 10}, {0, 10}, {0, 5}}};
  CHECK(simplify(padded) == Polygon::rect({0, 0, 10, 10}));
}

TEST_CASE("row spans and polygons from rows agree") {
  RowSpans rows{10, {}};
  for (int y = 10; y <= 30; ++y) rows.spans.emplace_back(y < 15 ? 20 : 5, 40);
  const Polygon p = polygon_from_rows(rows);
  CHECK_FALSE(p.self_intersects());
  CHECK(p.bbox() == Box{5, 10, 40, 30});
  const RowSpans back = row_spans(p);
  CHECK(back.y0 == 10);
  CHECK(back.spans == rows.spans);
  CHECK(p.contains(20, 10));
  CHECK_FALSE(p.contains(10, 12));
  CHECK(p.contains(5, 15));
}

TEST_CASE("clip against boxes") {
  const Polygon p = Polygon::rect({0, 0, 20, 20});
  CHECK(clip(p, {10, 5, 30, 15}).bbox() == Box{10, 5, 20, 15});
  CHECK(clip(p, {30, 30, 40, 40}).points.empty());
  RowSpans rows{0, {}};
  for (int y = 0; y <= 20; ++y) rows.spans.emplace_back(y < 8 ? 10 : 0, 20);
  const Polygon clipped = clip(polygon_from_rows(rows), {0, 10, 20, 20});
  CHECK(clipped.bbox() == Box{0, 10, 20, 20});
}

TEST_CASE("region ids") {
  CHECK(region_id(1) == "r0001");
  CHECK(region_id(123) == "r0123");
  PageSegmentation seg = fixtures::make_page(
      100, 100, {fixtures::rect_region("r0001", RegionType::kParagraph, {0, 0, 9, 9}),
                 fixtures::rect_region("r0003", RegionType::kParagraph, {0, 20, 9, 29})});
  CHECK(next_free_region_id(seg) == "r0002");
  CHECK(seg.find("r0003") != nullptr);
  CHECK(seg.find("r0002") == nullptr);
}

TEST_CASE("validate examples") {
  PageSegmentation seg = fixtures::make_page(
      200, 200, {fixtures::rect_region("r0001", RegionType::kParagraph, {10, 10, 100, 100}, 3)});
  CHECK(validate(seg).empty());

  PageSegmentation missing = seg;
  missing.reading_order.clear();
  const auto v = validate(missing);
  REQUIRE(v.size() == 1);
  CHECK(v[0].region_id == "r0001");
  CHECK(v[0].rule == "order-missing");

  PageSegmentation image = seg;
  image.regions.push_back(fixtures::rect_region("r0002", RegionType::kImage, {120, 10, 150, 50}));
  image.reading_order.push_back("r0002");
  const auto vi = validate(image);
  REQUIRE(vi.size() == 1);
  CHECK(vi[0].region_id == "r0002");
  CHECK(vi[0].rule == "order-image");
}

TEST_CASE("validate reports exactly an injected fault") {
  Rng rng(2024);
  const std::vector<std::string> faults = {
      "duplicate-id",   "polygon-points",     "polygon-bounds",
      "polygon-area",   "polygon-self-intersection", "image-lines",
      "line-order",     "order-unknown-id",   "order-image",
      "order-duplicate", "order-missing"};
  int trials = 0;
  while (trials < 300) {
    PageSegmentation seg = fixtures::random_segmentation(rng, "p", 8);
    REQUIRE(validate(seg).empty());
    if (first_of(seg, true) == nullptr) continue;
    const std::string fault = faults[static_cast<std::size_t>(trials) % faults.size()];
    ++trials;
    Region* text = seg.find(first_of(seg, true)->id);
    std::string expect_id = text->id;
    const Box b = text->boundary.bbox();
    if (fault == "duplicate-id") {
      seg.regions.push_back(fixtures::rect_region(text->id, RegionType::kImage, b));
    } else if (fault == "polygon-points") {
      text->boundary.points.resize(2);
    } else if (fault == "polygon-bounds") {
      for (Point& p : text->boundary.points) p.x += seg.width;
    } else if (fault == "polygon-area") {
      text->boundary = Polygon{{{b.x0, b.y0}, {b.x1, b.y0}, {b.x0 + 1, b.y0}}};
    } else if (fault == "polygon-self-intersection") {
      text->boundary = Polygon{{{b.x0, b.y0}, {b.x1, b.y1}, {b.x1, b.y0},
                                {b.x0, b.y0 + b.height() / 3}}};
    } else if (fault == "image-lines") {
      expect_id = ensure_image(seg);
      seg.find(expect_id)->lines.push_back({{0, 0, 5, 2}, 0, {}});
    } else if (fault == "line-order") {
      text->lines.push_back({{b.x0, b.y0, b.x1, b.y0}, static_cast<int>(text->lines.size()) + 5, {}});
    } else if (fault == "order-unknown-id") {
      seg.reading_order.push_back("nope");
      expect_id = "nope";
    } else if (fault == "order-image") {
      expect_id = ensure_image(seg);
      seg.reading_order.push_back(expect_id);
    } else if (fault == "order-duplicate") {
      seg.reading_order.push_back(text->id);
    } else if (fault == "order-missing") {
      std::erase(seg.reading_order, text->id);
    }
    const auto v = validate(seg);
    INFO("fault " << fault);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == fault);
    CHECK(v[0].region_id == expect_id);
  }
}

TEST_CASE("page dimensions must be positive") {
  PageSegmentation seg;
  seg.width = 0;
  seg.height = 10;
  CHECK(rules(seg) == std::vector<std::string>{"page-dimensions"});
}

TEST_CASE("default layout zones") {
  const LayoutConfig cfg = default_layout_config();
  CHECK_NOTHROW(cfg.validate());
  const Zone full{0.0, 0.0, 1.0, 1.0};
  const Zone para = cfg.rule(RegionType::kParagraph).allowed_zone;
  CHECK((para.x0f == full.x0f && para.y0f == full.y0f && para.x1f == full.x1f &&
         para.y1f == full.y1f));
  CHECK(cfg.rule(RegionType::kPageNumber).allowed_zone.contains(0.9, 0.05));
  CHECK_FALSE(cfg.rule(RegionType::kHeading).allowed_zone.contains(0.05, 0.5));
  CHECK(cfg.rule(RegionType::kPageNumber).max_area_frac == 0.005);

  LayoutConfig bad = cfg;
  bad.rule(RegionType::kHeading).allowed_zone.x1f = 0.1;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = cfg;
  bad.rule(RegionType::kImage).allowed_zone.y1f = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);

  HeadingRuleConfig h;
  CHECK(h.area_ratio_threshold == 1.15);
  CHECK_NOTHROW(h.validate());
  h.area_ratio_threshold = 1.0;
  CHECK_THROWS_AS(h.validate(), Error);
}

TEST_CASE("page json round trip") {
  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    const PageSegmentation seg = fixtures::random_segmentation(rng, "p" + std::to_string(i));
    CHECK(segmentation_from_json(to_json(seg)) == seg);
  }
  nlohmann::json j = to_json(fixtures::make_page(
      50, 50, {fixtures::rect_region("r0001", RegionType::kParagraph, {1, 1, 20, 20})}));
  j["regions"][0]["type"] = "marginalia";
  CHECK_THROWS_AS(segmentation_from_json(j), Error);
  j.erase("width");
  CHECK_THROWS_AS(segmentation_from_json(j), Error);
}
