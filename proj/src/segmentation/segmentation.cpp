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

#include "segmentation/segmentation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "common/error.hpp"
#include "common/log.hpp"

namespace folio::seg {

using imaging::Components;
using imaging::Connectivity;
using page::Polygon;
using page::RegionType;

void SegmentationParams::validate() const {
  auto frac = [](double v) { return v > 0.0 && v < 1.0; };
  if (!frac(image_min_area_frac) || !frac(image_density_max) ||
      !frac(line_valley_frac)) {
    throw Error(ErrorCode::kInvalidArgument,
                "segmentation fractions must lie in (0,1)");
  }
  if (text_merge_se < 1 || text_merge_se % 2 == 0 || min_region_area_px < 1 ||
      !(initial_span_lines > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "segmentation sizes must be positive (merge SE odd)");
  }
  heading.validate();
}

namespace {

// Per-pixel owner of each text region (index into seg.regions, -1 = none).
std::vector<int> text_owner_map(const PageSegmentation& seg) {
  std::vector<int> owner(static_cast<std::size_t>(seg.width) * seg.height, -1);
  const Box page{0, 0, seg.width - 1, seg.height - 1};
  for (std::size_t i = 0; i < seg.regions.size(); ++i) {
    const Region& r = seg.regions[i];
    if (!page::is_text(r.kind)) continue;
    const Box b = r.boundary.bbox().intersect(page);
    if (b.empty()) continue;
    const auto mask = page::rasterize(r.boundary, b);
    for (int y = b.y0; y <= b.y1; ++y)
      for (int x = b.x0; x <= b.x1; ++x)
        if (mask[static_cast<std::size_t>(y - b.y0) * b.width() + (x - b.x0)])
          owner[static_cast<std::size_t>(y) * seg.width + x] = static_cast<int>(i);
  }
  return owner;
}

int owner_of(const std::vector<int>& owner, int width, double cx, double cy) {
  const int x = static_cast<int>(std::lround(cx));
  const int y = static_cast<int>(std::lround(cy));
  return owner[static_cast<std::size_t>(y) * width + x];
}

// Renames regions r0001.. in list order and rewrites the reading order.
PageSegmentation renumber(PageSegmentation seg) {
  std::unordered_map<std::string, std::string> rename;
  for (std::size_t i = 0; i < seg.regions.size(); ++i) {
    std::string fresh = page::region_id(static_cast<int>(i) + 1);
    rename[seg.regions[i].id] = fresh;
    seg.regions[i].id = std::move(fresh);
  }
  for (auto& id : seg.reading_order) {
    auto it = rename.find(id);
    if (it != rename.end()) id = it->second;
  }
  return seg;
}

RegionType classify(const Box& bbox, const page::LayoutConfig& layout,
                    int page_w, int page_h) {
  const double fx = (bbox.x0 + bbox.x1) / 2.0 / page_w;
  const double fy = (bbox.y0 + bbox.y1) / 2.0 / page_h;
  const double area = static_cast<double>(bbox.area()) /
                      (static_cast<double>(page_w) * page_h);
  for (RegionType t :
       {RegionType::kPageNumber, RegionType::kHeading, RegionType::kParagraph}) {
    const page::TypeRule& rule = layout.rule(t);
    if (rule.allowed_zone.contains(fx, fy) && area >= rule.min_area_frac &&
        area <= rule.max_area_frac) {
      return t;
    }
  }
  return RegionType::kParagraph;
}

std::vector<TextLine> lines_from_mask(const std::vector<std::uint8_t>& mask,
                                      const Box& box, double valley_frac) {
  const int h = box.height();
  const int w = box.width();
  std::vector<int> profile(h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      profile[y] += mask[static_cast<std::size_t>(y) * w + x];

  std::vector<double> smooth(h, 0.0);
  for (int y = 0; y < h; ++y) {
    double s = 0.0;
    int n = 0;
    for (int d = -1; d <= 1; ++d) {
      if (y + d >= 0 && y + d < h) {
        s += profile[y + d];
        ++n;
      }
    }
    smooth[y] = s / n;
  }
  const double peak = h > 0 ? *std::max_element(smooth.begin(), smooth.end()) : 0.0;
  std::vector<TextLine> lines;
  if (peak <= 0.0) return lines;
  const double cut = valley_frac * peak;

  int y = 0;
  while (y < h) {
    if (smooth[y] <= cut) {
      ++y;
      continue;
    }
    const int start = y;
    while (y < h && smooth[y] > cut) ++y;
    // Tighten the run to the rows and columns that carry ink.
    Box line;
    for (int yy = start; yy < y; ++yy) {
      if (profile[yy] == 0) continue;
      for (int x = 0; x < w; ++x)
        if (mask[static_cast<std::size_t>(yy) * w + x]) line.expand(box.x0 + x, box.y0 + yy);
    }
    if (line.empty()) continue;
    lines.push_back({line, static_cast<int>(lines.size()), std::nullopt});
  }
  return lines;
}

// Region ink: binary pixels covered by the region boundary, over its bbox.
std::vector<std::uint8_t> region_ink(const BinaryImage& bin, const Region& region,
                                     Box& box) {
  box = region.boundary.bbox().intersect({0, 0, bin.width() - 1, bin.height() - 1});
  if (box.empty()) return {};
  auto mask = page::rasterize(region.boundary, box);
  for (int y = box.y0; y <= box.y1; ++y)
    for (int x = box.x0; x <= box.x1; ++x) {
      auto& m = mask[static_cast<std::size_t>(y - box.y0) * box.width() + (x - box.x0)];
      m = m && bin.get(x, y);
    }
  return mask;
}

double mean_line_height(const Region& r) {
  if (r.lines.empty()) return 0.0;
  double s = 0.0;
  for (const auto& l : r.lines) s += l.bbox.height();
  return s / static_cast<double>(r.lines.size());
}

Polygon polygon_or_box(Polygon poly, const Box& fallback) {
  if (poly.points.size() >= 3 && poly.area() > 0.0) return poly;
  return Polygon::rect(fallback);
}

}  // namespace

PageSegmentation coarse_segment(const BinaryImage& bin, const LayoutConfig& layout,
                                const SegmentationParams& params,
                                const std::string& page_id) {
  params.validate();
  PageSegmentation seg;
  seg.page_id = page_id;
  seg.width = bin.width();
  seg.height = bin.height();
  const double page_area = static_cast<double>(bin.width()) * bin.height();

  const Components raw = connected_components(bin, Connectivity::kEight);
  std::vector<bool> is_image(raw.stats.size() + 1, false);
  std::vector<Box> image_boxes;
  const page::TypeRule& image_rule = layout.rule(RegionType::kImage);
  for (const auto& st : raw.stats) {
    if (st.area < params.image_min_area_frac * page_area) continue;
    const double density = static_cast<double>(st.area) / st.bbox.area();
    if (density < 1.0 - params.image_density_max) continue;
    const double fx = (st.bbox.x0 + st.bbox.x1) / 2.0 / bin.width();
    const double fy = (st.bbox.y0 + st.bbox.y1) / 2.0 / bin.height();
    const double frac = st.bbox.area() / page_area;
    if (!image_rule.allowed_zone.contains(fx, fy) || frac < image_rule.min_area_frac ||
        frac > image_rule.max_area_frac) {
      continue;
    }
    is_image[st.label] = true;
    image_boxes.push_back(st.bbox);
    seg.regions.push_back({"", RegionType::kImage, Polygon::rect(st.bbox), {}});
  }

  BinaryImage text = bin;
  for (int y = 0; y < bin.height(); ++y)
    for (int x = 0; x < bin.width(); ++x)
      if (is_image[raw.label_at(x, y)]) text.set(x, y, false);

  const BinaryImage merged =
      imaging::dilate(text, imaging::StructuringElement(params.text_merge_se));
  const Components blocks = connected_components(merged, Connectivity::kEight);
  // Region boxes hug the undilated ink of each block.
  std::vector<Box> ink_boxes(blocks.stats.size());
  for (int y = 0; y < bin.height(); ++y)
    for (int x = 0; x < bin.width(); ++x)
      if (text.get(x, y)) ink_boxes[blocks.label_at(x, y) - 1].expand(x, y);
  for (const auto& st : blocks.stats) {
    const Box& ink = ink_boxes[st.label - 1];
    // Measured on the ink box: dilation inflates a speckle past the floor.
    if (ink.area() < params.min_region_area_px) continue;
    // Loose fragments of a woodcut stay with the woodcut.
    const bool inside_image =
        std::any_of(image_boxes.begin(), image_boxes.end(),
                    [&](const Box& b) { return b.contains(st.cx, st.cy); });
    if (inside_image) continue;
    if (ink.width() < 2 || ink.height() < 2) continue;
    const RegionType kind = classify(ink, layout, bin.width(), bin.height());
    seg.regions.push_back({"", kind, Polygon::rect(ink), {}});
  }

  seg = renumber(std::move(seg));
  return assign_reading_order(seg);
}

std::vector<TextLine> detect_lines(const BinaryImage& bin, const Region& region,
                                   const SegmentationParams& params) {
  Box box;
  const auto mask = region_ink(bin, region, box);
  if (box.empty()) return {};
  return lines_from_mask(mask, box, params.line_valley_frac);
}

std::vector<TextLine> detect_lines(const BinaryImage& bin,
                                   const SegmentationParams& params) {
  const Box box{0, 0, bin.width() - 1, bin.height() - 1};
  std::vector<std::uint8_t> mask(bin.mask().begin(), bin.mask().end());
  return lines_from_mask(mask, box, params.line_valley_frac);
}

std::vector<LineRef> detect_headings(const BinaryImage& bin,
                                     const PageSegmentation& seg,
                                     const SegmentationParams& params) {
  std::vector<LineRef> flagged;

  double height_sum = 0.0;
  int height_n = 0;
  for (const Region& r : seg.regions) {
    if (r.kind != RegionType::kParagraph) continue;
    for (const auto& l : r.lines) {
      height_sum += l.bbox.height();
      ++height_n;
    }
  }
  if (height_n == 0) {
    spdlog::debug("{}: no paragraph lines, heading rule cannot fire", seg.page_id);
    return flagged;
  }
  const double mean_height = height_sum / height_n;

  const auto owner = text_owner_map(seg);
  const Components cc = connected_components(bin, Connectivity::kEight);
  // Components per owning region, and the text-wide mean area.
  std::vector<std::vector<const imaging::ComponentStats*>> per_region(seg.regions.size());
  double area_sum = 0.0;
  int area_n = 0;
  for (const auto& st : cc.stats) {
    const int o = owner_of(owner, seg.width, st.cx, st.cy);
    if (o < 0) continue;
    per_region[o].push_back(&st);
    area_sum += static_cast<double>(st.area);
    ++area_n;
  }
  if (area_n == 0) return flagged;
  const double mean_area = area_sum / area_n;

  for (std::size_t i = 0; i < seg.regions.size(); ++i) {
    const Region& r = seg.regions[i];
    if (!page::is_text(r.kind)) continue;
    for (const auto& l : r.lines) {
      if (params.heading.require_height_above_mean && !(l.bbox.height() > mean_height))
        continue;
      double s = 0.0;
      int n = 0;
      for (const auto* st : per_region[i]) {
        if (st->cy >= l.bbox.y0 && st->cy <= l.bbox.y1) {
          s += static_cast<double>(st->area);
          ++n;
        }
      }
      if (n > 0 && s / n >= params.heading.area_ratio_threshold * mean_area) {
        flagged.push_back({r.id, l.index});
      }
    }
  }
  return flagged;
}

PageSegmentation apply_headings(const PageSegmentation& seg,
                                const std::vector<LineRef>& flagged) {
  std::map<std::string, std::set<int>> by_region;
  for (const auto& f : flagged) by_region[f.region_id].insert(f.line_index);

  PageSegmentation out = seg;
  out.regions.clear();
  std::unordered_map<std::string, std::vector<std::string>> replaced;
  int temp = 0;

  for (const Region& r : seg.regions) {
    auto it = by_region.find(r.id);
    if (it == by_region.end() || r.lines.empty()) {
      out.regions.push_back(r);
      continue;
    }
    const std::set<int>& marks = it->second;
    const Box rb = r.boundary.bbox();

    // Split the index range into maximal runs of equal flag state.
    struct Part {
      bool heading;
      int first;
      int last;
    };
    std::vector<Part> parts;
    for (int i = 0; i < static_cast<int>(r.lines.size()); ++i) {
      const bool h = marks.contains(i);
      if (!parts.empty() && parts.back().heading == h) {
        parts.back().last = i;
      } else {
        parts.push_back({h, i, i});
      }
    }

    auto& ids = replaced[r.id];
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const Part& part = parts[p];
      Box lines_box;
      for (int i = part.first; i <= part.last; ++i) lines_box = lines_box.unite(r.lines[i].bbox);

      Box cut;
      if (part.heading) {
        cut = lines_box;
      } else {
        // Paragraph pieces run from one line border to the next cut.
        const int top = p == 0 ? rb.y0 : lines_box.y0;
        const int bottom = p + 1 == parts.size() ? rb.y1 : lines_box.y1;
        cut = {rb.x0, top, rb.x1, bottom};
      }
      Region piece;
      piece.id = "~" + std::to_string(temp++);
      piece.kind = part.heading ? RegionType::kHeading : RegionType::kParagraph;
      piece.boundary = polygon_or_box(page::clip(r.boundary, cut), lines_box);
      for (int i = part.first; i <= part.last; ++i) {
        TextLine l = r.lines[i];
        l.index = i - part.first;
        piece.lines.push_back(l);
      }
      ids.push_back(piece.id);
      out.regions.push_back(std::move(piece));
    }
  }

  std::vector<std::string> order;
  for (const auto& id : seg.reading_order) {
    auto it = replaced.find(id);
    if (it == replaced.end()) {
      order.push_back(id);
    } else {
      order.insert(order.end(), it->second.begin(), it->second.end());
    }
  }
  out.reading_order = std::move(order);
  return renumber(std::move(out));
}

PageSegmentation extract_initials(const BinaryImage& bin,
                                  const PageSegmentation& seg,
                                  const SegmentationParams& params) {
  const auto owner = text_owner_map(seg);
  const Components cc = connected_components(bin, Connectivity::kEight);

  std::vector<std::vector<Box>> notches(seg.regions.size());
  for (const auto& st : cc.stats) {
    const int o = owner_of(owner, seg.width, st.cx, st.cy);
    if (o < 0) continue;
    const Region& r = seg.regions[o];
    const double mlh = mean_line_height(r);
    if (mlh <= 0.0) continue;
    const Box rb = r.boundary.bbox();
    const bool tall = st.bbox.height() >= params.initial_span_lines * mlh;
    const bool anchored = st.bbox.x0 - rb.x0 <= 0.1 * rb.width();
    // An initial must leave some of the region's width to the text.
    const bool leaves_text = st.bbox.x1 + 1 < rb.x1;
    if (tall && anchored && leaves_text) notches[o].push_back(st.bbox);
  }

  PageSegmentation out = seg;
  std::vector<Region> new_images;
  std::vector<std::string> dropped;
  for (std::size_t i = 0; i < out.regions.size(); ++i) {
    if (notches[i].empty()) continue;
    Region& r = out.regions[i];
    page::RowSpans rows = page::row_spans(r.boundary);
    const int last_row = rows.y0 + static_cast<int>(rows.spans.size()) - 1;
    for (const Box& comp : notches[i]) {
      Box n = comp;
      // A single leftover row next to a notch has no rectilinear outline.
      if (n.y0 - rows.y0 < 2) n.y0 = rows.y0;
      if (last_row - n.y1 < 2) n.y1 = last_row;
      for (int y = n.y0; y <= n.y1; ++y) {
        auto& span = rows.spans[static_cast<std::size_t>(y - rows.y0)];
        span.first = std::max(span.first, n.x1 + 1);
      }
      Region img;
      img.kind = RegionType::kImage;
      img.boundary = Polygon::rect(comp);
      new_images.push_back(std::move(img));
    }
    Polygon notched = page::polygon_from_rows(rows);
    if (notched.area() > 0.0 && !notched.self_intersects()) r.boundary = std::move(notched);
    r.lines = detect_lines(bin, r, params);
    if (r.lines.empty()) dropped.push_back(r.id);
  }

  std::erase_if(out.regions, [&](const Region& r) {
    return std::find(dropped.begin(), dropped.end(), r.id) != dropped.end();
  });
  std::erase_if(out.reading_order, [&](const std::string& id) {
    return std::find(dropped.begin(), dropped.end(), id) != dropped.end();
  });
  for (Region& img : new_images) {
    img.id = page::next_free_region_id(out);
    out.regions.push_back(std::move(img));
  }
  return out;
}

PageSegmentation segment_page(const BinaryImage& bin, const LayoutConfig& layout,
                              const SegmentationParams& params,
                              const std::string& page_id) {
  PageSegmentation seg = coarse_segment(bin, layout, params, page_id);
  for (Region& r : seg.regions)
    if (page::is_text(r.kind)) r.lines = detect_lines(bin, r, params);
  std::erase_if(seg.regions,
                [](const Region& r) { return page::is_text(r.kind) && r.lines.empty(); });
  seg = assign_reading_order(seg);

  seg = extract_initials(bin, seg, params);
  const auto flagged = detect_headings(bin, seg, params);
  seg = apply_headings(seg, flagged);
  seg = assign_reading_order(seg);

  const auto violations = page::validate(seg);
  if (!violations.empty()) {
    throw Error(ErrorCode::kInvalidSegmentation,
                seg.page_id + ": pipeline produced an invalid segmentation (" +
                    violations.front().rule + ": " + violations.front().message + ")");
  }
  return seg;
}

}  // namespace folio::seg
