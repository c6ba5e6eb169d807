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

#include "extraction/extraction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "common/log.hpp"
#include "imaging/image_io.hpp"

namespace folio::extract {

namespace fs = std::filesystem;
using page::PageSegmentation;
using page::Region;

std::vector<RegionImage> extract_regions(const GrayImage& original,
                                         const PageSegmentation& seg) {
  if (original.width() != seg.width || original.height() != seg.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                "scan is " + std::to_string(original.width()) + "x" +
                    std::to_string(original.height()) + " but segmentation " +
                    seg.page_id + " is " + std::to_string(seg.width) + "x" +
                    std::to_string(seg.height));
  }
  const Box page_box{0, 0, seg.width - 1, seg.height - 1};
  std::vector<RegionImage> out;
  for (const Region& r : seg.regions) {
    const Box b = r.boundary.bbox().intersect(page_box);
    if (b.empty()) continue;
    const auto inside = page::rasterize(r.boundary, b);
    GrayImage img(b.width(), b.height(), 255);
    for (int y = 0; y < b.height(); ++y)
      for (int x = 0; x < b.width(); ++x)
        if (inside[static_cast<std::size_t>(y) * b.width() + x])
          img.at(x, y) = original.at(b.x0 + x, b.y0 + y);
    out.push_back({r.id, b, std::move(img)});
  }
  return out;
}

std::vector<LineImage> extract_lines(const GrayImage& region_img,
                                     const imaging::BinarizeConfig& cfg,
                                     const seg::SegmentationParams& params,
                                     int line_height) {
  std::vector<LineImage> out;
  const BinaryImage first = imaging::sauvola_binarize(region_img, cfg);
  if (!first.any()) return out;
  const double angle = imaging::estimate_skew(first);
  const GrayImage straight =
      angle == 0.0 ? region_img : imaging::rotate(region_img, angle, 255);
  const BinaryImage bin =
      angle == 0.0 ? first : imaging::sauvola_binarize(straight, cfg);

  for (const auto& line : seg::detect_lines(bin, params)) {
    const Box& b = line.bbox;
    const GrayImage gray = imaging::crop(straight, b);
    const int width = std::max(
        1, static_cast<int>(std::lround(static_cast<double>(gray.width()) *
                                        line_height / gray.height())));
    out.push_back({line.index, imaging::resize_bilinear(gray, width, line_height),
                   imaging::crop(bin, b)});
  }
  return out;
}

AssembledText assemble_text(const PageSegmentation& seg, const LineTexts& line_texts) {
  AssembledText out;
  bool first_block = true;
  for (const std::string& id : seg.reading_order) {
    const Region* r = seg.find(id);
    if (!r) continue;
    std::set<int> indices;
    for (const auto& l : r->lines) indices.insert(l.index);
    for (auto it = line_texts.lower_bound({id, std::numeric_limits<int>::min()});
         it != line_texts.end() && it->first.first == id; ++it) {
      indices.insert(it->first.second);
    }
    if (!first_block) out.text += "\n\n";
    first_block = false;
    bool first_line = true;
    for (int idx : indices) {
      if (!first_line) out.text += '\n';
      first_line = false;
      auto it = line_texts.find({id, idx});
      if (it == line_texts.end()) {
        out.warnings.push_back(seg.page_id + ": no text for " + id + " line " +
                               std::to_string(idx));
        continue;
      }
      out.text += it->second;
    }
  }
  return out;
}

std::string normalize_text(std::string_view s) {
  auto is_punct = [](char c) {
    return c == '.' || c == ',' || c == ':' || c == ';' || c == '!' || c == '?';
  };
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  };
  std::string out;
  out.reserve(s.size() + s.size() / 8);
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += s[i];
    if (is_punct(s[i]) && i + 1 < s.size() && !is_space(s[i + 1])) out += ' ';
  }
  return out;
}

std::vector<ManifestRow> export_lines(const fs::path& out_root, const GrayImage& original,
                                      const PageSegmentation& seg,
                                      const imaging::BinarizeConfig& cfg,
                                      const seg::SegmentationParams& params,
                                      int line_height) {
  const auto regions = extract_regions(original, seg);
  std::vector<ManifestRow> rows;
  for (const std::string& id : seg.reading_order) {
    auto it = std::find_if(regions.begin(), regions.end(),
                           [&](const RegionImage& r) { return r.region_id == id; });
    if (it == regions.end()) continue;
    const fs::path dir = out_root / seg.page_id / id;
    fs::create_directories(dir);
    imaging::write_png(dir / "region.png", it->image);
    for (const auto& line : extract_lines(it->image, cfg, params, line_height)) {
      const std::string stem = std::to_string(line.index);
      imaging::write_png(dir / (stem + ".png"), line.gray);
      imaging::write_png(dir / (stem + ".bin.png"), line.binary);
      rows.push_back({seg.page_id, id, line.index,
                      (fs::path(seg.page_id) / id / (stem + ".png")).generic_string()});
    }
  }
  return rows;
}

LineTexts read_line_texts(const fs::path& root, const PageSegmentation& seg,
                          const std::string& suffix) {
  LineTexts texts;
  for (const Region& r : seg.regions) {
    if (!page::is_text(r.kind)) continue;
    const fs::path dir = root / seg.page_id / r.id;
    if (!fs::is_directory(dir)) continue;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().filename().string();
      if (name.size() <= suffix.size() || !name.ends_with(suffix)) continue;
      const std::string stem = name.substr(0, name.size() - suffix.size());
      int index = 0;
      auto [ptr, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), index);
      if (ec != std::errc() || ptr != stem.data() + stem.size()) continue;
      std::ifstream in(entry.path(), std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      std::string text = ss.str();
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      texts[{r.id, index}] = std::move(text);
    }
  }
  return texts;
}

}  // namespace folio::extract
