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

#include "support/fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace folio::fixtures {

using imaging::BinaryImage;
using imaging::GrayImage;
using page::Region;
using page::RegionType;

GrayImage random_gray(Rng& rng, int width, int height) {
  std::uniform_int_distribution<int> d(0, 255);
  GrayImage img(width, height);
  for (auto& v : img.samples()) v = static_cast<std::uint8_t>(d(rng));
  return img;
}

BinaryImage random_binary(Rng& rng, int width, int height, double density) {
  std::bernoulli_distribution d(density);
  BinaryImage img(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) img.set(x, y, d(rng));
  return img;
}

void fill_box(BinaryImage& img, const Box& box, bool value) {
  for (int y = box.y0; y <= box.y1; ++y)
    for (int x = box.x0; x <= box.x1; ++x) img.set(x, y, value);
}

Region rect_region(const std::string& id, RegionType kind, const Box& box,
                   int lines) {
  Region r{id, kind, page::Polygon::rect(box), {}};
  if (lines > 0 && page::is_text(kind)) {
    const int pitch = box.height() / lines;
    for (int i = 0; i < lines; ++i) {
      const int y0 = box.y0 + i * pitch;
      r.lines.push_back({{box.x0, y0, box.x1, y0 + std::max(0, pitch - 2)}, i, {}});
    }
  }
  return r;
}

page::PageSegmentation make_page(int width, int height, std::vector<Region> regions) {
  page::PageSegmentation seg{"page", width, height, std::move(regions), {}};
  for (const Region& r : seg.regions)
    if (page::is_text(r.kind)) seg.reading_order.push_back(r.id);
  return seg;
}

namespace {

const char* const kSnippets[] = {
    "Vnd der herr sprach", "a<b & c>d", "\"zitat\" 'x'", "Grüße äöü ß",
    "ſchöne Straße", "", "  leading and trailing  ", "Ωμέγα", "x;y:z!",
};

// Rectilinear polygon for `box` with a notch of at least 2x2 cut from the
// top-left corner, leaving at least 2 full rows below it.
page::Polygon notched(const Box& box, Rng& rng) {
  const int nw = std::uniform_int_distribution<int>(2, box.width() - 2)(rng);
  const int nh = std::uniform_int_distribution<int>(2, box.height() - 3)(rng);
  page::RowSpans rows{box.y0, {}};
  for (int y = box.y0; y <= box.y1; ++y)
    rows.spans.emplace_back(y < box.y0 + nh ? box.x0 + nw : box.x0, box.x1);
  return page::polygon_from_rows(rows);
}

}  // namespace

page::PageSegmentation random_segmentation(Rng& rng, const std::string& page_id,
                                           int max_regions) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  page::PageSegmentation seg;
  seg.page_id = page_id;
  seg.width = uni(64, 2000);
  seg.height = uni(64, 3000);
  const int n = uni(0, max_regions);
  for (int i = 0; i < n; ++i) {
    const int w = uni(8, std::max(8, seg.width / 2));
    const int h = uni(8, std::max(8, seg.height / 2));
    const int x0 = uni(0, seg.width - w);
    const int y0 = uni(0, seg.height - h);
    const Box box{x0, y0, x0 + w - 1, y0 + h - 1};
    const auto kind = page::kAllRegionTypes[static_cast<std::size_t>(uni(0, 3))];
    Region r{page::region_id(i + 1), kind, {}, {}};
    r.boundary = uni(0, 3) == 0 ? notched(box, rng) : page::Polygon::rect(box);
    if (page::is_text(kind)) {
      int y = box.y0;
      int index = 0;
      while (uni(0, 4) != 0) {
        const int lh = uni(1, 6);
        if (y + lh > box.y1) break;
        page::TextLine line{{box.x0, y, box.x1, y + lh - 1}, index++, {}};
        if (uni(0, 2) != 0) line.text = kSnippets[uni(0, std::size(kSnippets) - 1)];
        r.lines.push_back(std::move(line));
        y += lh + uni(1, 4);
      }
      seg.reading_order.push_back(r.id);
    }
    seg.regions.push_back(std::move(r));
  }
  std::shuffle(seg.reading_order.begin(), seg.reading_order.end(), rng);
  return seg;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("folio-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

std::u32string random_text(Rng& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> pick(0, kTextAlphabet.size() - 1);
  std::u32string s;
  const auto n = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  for (std::size_t i = 0; i < n; ++i) s += kTextAlphabet[pick(rng)];
  return s;
}

std::u32string mutate_text(Rng& rng, std::u32string s) {
  std::uniform_int_distribution<std::size_t> pick(0, kTextAlphabet.size() - 1);
  const int edits = std::uniform_int_distribution<int>(0, 8)(rng);
  for (int i = 0; i < edits; ++i) {
    const auto pos = std::uniform_int_distribution<std::size_t>(0, s.size())(rng);
    const char32_t c = kTextAlphabet[pick(rng)];
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), c); break;
      case 1: if (pos < s.size()) s.erase(pos, 1); break;
      default: if (pos < s.size()) s[pos] = c;
    }
  }
  return s;
}

}  // namespace folio::fixtures
