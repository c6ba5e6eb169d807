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

#include "page/page_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "common/error.hpp"

namespace folio::page {

std::string_view to_string(RegionType type) {
  switch (type) {
    case RegionType::kImage: return "image";
    case RegionType::kParagraph: return "paragraph";
    case RegionType::kHeading: return "heading";
    case RegionType::kPageNumber: return "page-number";
  }
  return "paragraph";
}

std::optional<RegionType> region_type_from_string(std::string_view name) {
  for (RegionType t : kAllRegionTypes)
    if (to_string(t) == name) return t;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Polygon geometry

namespace {

std::int64_t cross(Point o, Point a, Point b) {
  return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) -
         static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

bool on_segment(Point p, Point a, Point b) {
  return cross(a, b, p) == 0 && p.x >= std::min(a.x, b.x) &&
         p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point a, Point b, Point c, Point d) {
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) ||
         on_segment(d, a, b);
}

}  // namespace

Polygon simplify(Polygon poly) {
  // Drop collinear middle vertices until stable.
  bool changed = true;
  while (changed && poly.points.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < poly.points.size(); ++i) {
      const std::size_t n = poly.points.size();
      const Point a = poly.points[(i + n - 1) % n];
      const Point b = poly.points[i];
      const Point c = poly.points[(i + 1) % n];
      const auto dot = static_cast<std::int64_t>(b.x - a.x) * (c.x - b.x) +
                       static_cast<std::int64_t>(b.y - a.y) * (c.y - b.y);
      if (cross(a, b, c) == 0 && dot >= 0) {
        poly.points.erase(poly.points.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return poly;
}

Polygon Polygon::rect(const Box& b) {
  return Polygon{{{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}}};
}

Box Polygon::bbox() const {
  Box b;
  for (const Point& p : points) b.expand(p.x, p.y);
  return b;
}

double Polygon::area() const {
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& a = points[i];
    const Point& b = points[(i + 1) % points.size()];
    twice += static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(b.x) * a.y;
  }
  return std::abs(static_cast<double>(twice)) / 2.0;
}

bool Polygon::self_intersects() const {
  const std::size_t n = points.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = points[i];
    const Point b = points[(i + 1) % n];
    if (a == b) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point c = points[j];
      const Point d = points[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Neighbouring edges share one vertex; they may only meet there.
        const Point shared = (j == i + 1) ? b : a;
        const Point far_a = (j == i + 1) ? a : b;
        const Point far_c = (j == i + 1) ? d : c;
        if (n == 3) continue;
        if (cross(shared, far_a, far_c) == 0) {
          // Collinear: folding back onto itself is an overlap.
          const auto dot = static_cast<std::int64_t>(far_a.x - shared.x) * (far_c.x - shared.x) +
                           static_cast<std::int64_t>(far_a.y - shared.y) * (far_c.y - shared.y);
          if (dot > 0) return true;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) return true;
    }
  }
  return false;
}

bool Polygon::contains(int x, int y) const {
  const Point p{x, y};
  const std::size_t n = points.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = points[i];
    const Point b = points[j];
    if (on_segment(p, a, b)) return true;
    if ((a.y > y) != (b.y > y)) {
      // x coordinate of the edge at row y, compared exactly.
      const std::int64_t num = static_cast<std::int64_t>(b.x - a.x) * (y - a.y);
      const std::int64_t den = b.y - a.y;
      // p.x < a.x + num/den  <=>  (p.x - a.x) * den < num  (sign-aware)
      const std::int64_t lhs = static_cast<std::int64_t>(x - a.x) * den;
      if (den > 0 ? lhs < num : lhs > num) inside = !inside;
    }
  }
  return inside;
}

std::vector<std::uint8_t> rasterize(const Polygon& poly, const Box& box) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(box.area()), 0);
  const Box pb = poly.bbox();
  const Box b = box.intersect(pb);
  if (b.empty() || poly.points.size() < 3) return mask;
  for (int y = b.y0; y <= b.y1; ++y)
    for (int x = b.x0; x <= b.x1; ++x)
      if (poly.contains(x, y))
        mask[static_cast<std::size_t>(y - box.y0) * box.width() + (x - box.x0)] = 1;
  return mask;
}

RowSpans row_spans(const Polygon& poly) {
  RowSpans out;
  const Box b = poly.bbox();
  out.y0 = b.y0;
  for (int y = b.y0; y <= b.y1; ++y) {
    int first = b.x1 + 1;
    int last = b.x0 - 1;
    for (int x = b.x0; x <= b.x1; ++x) {
      if (poly.contains(x, y)) {
        first = std::min(first, x);
        last = x;
      }
    }
    out.spans.emplace_back(first, last);
  }
  return out;
}

Polygon polygon_from_rows(const RowSpans& rows) {
  struct Run {
    int y_start;
    int y_end;
    int xs;
    int xe;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < rows.spans.size(); ++i) {
    const auto [xs, xe] = rows.spans[i];
    if (xs > xe) {
      throw Error(ErrorCode::kInvalidArgument, "polygon_from_rows: empty row span");
    }
    const int y = rows.y0 + static_cast<int>(i);
    if (!runs.empty() && runs.back().xs == xs && runs.back().xe == xe) {
      runs.back().y_end = y;
    } else {
      runs.push_back({y, y, xs, xe});
    }
  }
  if (runs.empty()) return Polygon{};

  // Boundary pixels belong to the polygon, so each step between runs is
  // drawn on whichever of the two rows is covered over the step's width.
  Polygon poly;
  auto push = [&poly](int x, int y) {
    const Point p{x, y};
    if (poly.points.empty() || !(poly.points.back() == p)) poly.points.push_back(p);
  };
  push(runs.front().xs, runs.front().y_start);
  push(runs.front().xe, runs.front().y_start);
  for (std::size_t k = 1; k < runs.size(); ++k) {
    const Run& above = runs[k - 1];
    const Run& below = runs[k];
    const int row = below.xe < above.xe ? below.y_start - 1 : below.y_start;
    push(above.xe, row);
    push(below.xe, row);
  }
  push(runs.back().xe, runs.back().y_end);
  push(runs.back().xs, runs.back().y_end);
  for (std::size_t k = runs.size() - 1; k > 0; --k) {
    const Run& below = runs[k];
    const Run& above = runs[k - 1];
    const int row = above.xs < below.xs ? below.y_start - 1 : below.y_start;
    push(below.xs, row);
    push(above.xs, row);
  }
  while (poly.points.size() > 1 && poly.points.front() == poly.points.back())
    poly.points.pop_back();
  return simplify(std::move(poly));
}

namespace {

struct FPoint {
  double x;
  double y;
};

template <typename Inside, typename Cut>
std::vector<FPoint> clip_plane(const std::vector<FPoint>& in, Inside inside,
                               Cut cut) {
  std::vector<FPoint> out;
  if (in.empty()) return out;
  FPoint prev = in.back();
  for (const FPoint& cur : in) {
    const bool ci = inside(cur);
    const bool pi = inside(prev);
    if (ci) {
      if (!pi) out.push_back(cut(prev, cur));
      out.push_back(cur);
    } else if (pi) {
      out.push_back(cut(prev, cur));
    }
    prev = cur;
  }
  return out;
}

}  // namespace

Polygon clip(const Polygon& poly, const Box& box) {
  std::vector<FPoint> pts;
  for (const Point& p : poly.points) pts.push_back({double(p.x), double(p.y)});

  auto at_x = [](double xv) {
    return [xv](FPoint a, FPoint b) {
      const double t = (xv - a.x) / (b.x - a.x);
      return FPoint{xv, a.y + t * (b.y - a.y)};
    };
  };
  auto at_y = [](double yv) {
    return [yv](FPoint a, FPoint b) {
      const double t = (yv - a.y) / (b.y - a.y);
      return FPoint{a.x + t * (b.x - a.x), yv};
    };
  };
  pts = clip_plane(pts, [&](FPoint p) { return p.x >= box.x0; }, at_x(box.x0));
  pts = clip_plane(pts, [&](FPoint p) { return p.x <= box.x1; }, at_x(box.x1));
  pts = clip_plane(pts, [&](FPoint p) { return p.y >= box.y0; }, at_y(box.y0));
  pts = clip_plane(pts, [&](FPoint p) { return p.y <= box.y1; }, at_y(box.y1));

  Polygon out;
  for (const FPoint& p : pts) {
    const Point q{static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
    if (out.points.empty() || !(out.points.back() == q)) out.points.push_back(q);
  }
  while (out.points.size() > 1 && out.points.front() == out.points.back())
    out.points.pop_back();
  out = simplify(std::move(out));
  if (out.points.size() < 3 || out.area() <= 0.0) return Polygon{};
  return out;
}

// ---------------------------------------------------------------------------
// Page model

const Region* PageSegmentation::find(std::string_view id) const {
  for (const Region& r : regions)
    if (r.id == id) return &r;
  return nullptr;
}

Region* PageSegmentation::find(std::string_view id) {
  for (Region& r : regions)
    if (r.id == id) return &r;
  return nullptr;
}

std::string region_id(int ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "r%04d", ordinal);
  return buf;
}

std::string next_free_region_id(const PageSegmentation& seg) {
  std::set<std::string> used;
  for (const Region& r : seg.regions) used.insert(r.id);
  for (int i = 1;; ++i) {
    std::string id = region_id(i);
    if (!used.contains(id)) return id;
  }
}

std::vector<Violation> validate(const PageSegmentation& seg) {
  std::vector<Violation> out;
  auto add = [&out](std::string id, std::string rule, std::string msg) {
    out.push_back({std::move(id), std::move(rule), std::move(msg)});
  };

  if (seg.width < 1 || seg.height < 1) {
    add("", "page-dimensions", "page width and height must be positive");
  }

  std::unordered_map<std::string, const Region*> by_id;
  for (const Region& r : seg.regions) {
    if (!by_id.emplace(r.id, &r).second) {
      add(r.id, "duplicate-id", "region id " + r.id + " is not unique");
    }
    const auto& pts = r.boundary.points;
    if (pts.size() < 3) {
      add(r.id, "polygon-points", "boundary needs at least 3 points");
    } else {
      const bool in_bounds = std::all_of(pts.begin(), pts.end(), [&](Point p) {
        return p.x >= 0 && p.y >= 0 && p.x < seg.width && p.y < seg.height;
      });
      if (!in_bounds) add(r.id, "polygon-bounds", "boundary leaves the page");
      if (r.boundary.area() <= 0.0) {
        add(r.id, "polygon-area", "boundary has zero area");
      } else if (r.boundary.self_intersects()) {
        add(r.id, "polygon-self-intersection", "boundary self-intersects");
      }
    }
    if (r.kind == RegionType::kImage && !r.lines.empty()) {
      add(r.id, "image-lines", "image regions carry no text lines");
    }
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
      const TextLine& l = r.lines[i];
      const bool ordered =
          l.index == static_cast<int>(i) && !l.bbox.empty() &&
          (i == 0 || r.lines[i - 1].bbox.y1 < l.bbox.y0);
      if (!ordered) {
        add(r.id, "line-order",
            "line " + std::to_string(i) + " is not y-disjoint and index-ordered");
        break;
      }
    }
  }

  std::unordered_set<std::string> seen;
  for (const std::string& id : seg.reading_order) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      add(id, "order-unknown-id", "reading order references unknown region " + id);
      continue;
    }
    if (it->second->kind == RegionType::kImage) {
      add(id, "order-image", "image region " + id + " is in the reading order");
      continue;
    }
    if (!seen.insert(id).second) {
      add(id, "order-duplicate", "region " + id + " appears twice in the reading order");
    }
  }
  std::unordered_set<std::string> reported;
  for (const Region& r : seg.regions) {
    if (is_text(r.kind) && !seen.contains(r.id) && reported.insert(r.id).second) {
      add(r.id, "order-missing", "text region " + r.id + " missing from the reading order");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Layout configuration

void LayoutConfig::validate() const {
  for (RegionType t : kAllRegionTypes) {
    const TypeRule& r = rule(t);
    const Zone& z = r.allowed_zone;
    auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!(unit(z.x0f) && unit(z.y0f) && unit(z.x1f) && unit(z.y1f)) ||
        !(z.x0f < z.x1f) || !(z.y0f < z.y1f)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid zone for " + std::string(to_string(t)));
    }
    if (!(r.min_area_frac >= 0.0 && r.min_area_frac <= r.max_area_frac &&
          r.max_area_frac <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "invalid area bounds for " + std::string(to_string(t)));
    }
  }
}

LayoutConfig default_layout_config() {
  LayoutConfig cfg;
  cfg.rule(RegionType::kImage) = {{0.0, 0.0, 1.0, 1.0}, 0.0, 1.0};
  cfg.rule(RegionType::kParagraph) = {{0.0, 0.0, 1.0, 1.0}, 0.0, 1.0};
  cfg.rule(RegionType::kHeading) = {{0.20, 0.00, 0.80, 0.20}, 0.0, 1.0};
  cfg.rule(RegionType::kPageNumber) = {{0.70, 0.00, 1.00, 0.12}, 0.0, 0.005};
  return cfg;
}

void HeadingRuleConfig::validate() const {
  if (!(area_ratio_threshold > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "heading area_ratio_threshold must exceed 1");
  }
}

}  // namespace folio::page
