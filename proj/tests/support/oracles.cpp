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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace folio::oracle {

using imaging::BinaryImage;
using imaging::GrayImage;

BinaryImage naive_sauvola(const GrayImage& img, int window, double k, double r) {
  const int half = window / 2;
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      std::int64_t n = 0, s = 0, sq = 0;
      for (int v = y - half; v <= y + half; ++v) {
        for (int u = x - half; u <= x + half; ++u) {
          if (u < 0 || v < 0 || u >= img.width() || v >= img.height()) continue;
          const std::int64_t p = img.at(u, v);
          ++n;
          s += p;
          sq += p * p;
        }
      }
      const double mean = static_cast<double>(s) / static_cast<double>(n);
      const double var = static_cast<double>(n * sq - s * s) /
                         (static_cast<double>(n) * static_cast<double>(n));
      const double t = mean * (1.0 + k * (std::sqrt(var) / r - 1.0));
      out.set(x, y, img.at(x, y) <= t);
    }
  }
  return out;
}

std::vector<int> flood_fill_labels(const BinaryImage& img, int connectivity) {
  const int w = img.width();
  const int h = img.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, 0);
  std::function<void(int, int, int)> fill = [&](int x, int y, int label) {
    if (x < 0 || y < 0 || x >= w || y >= h) return;
    int& l = labels[static_cast<std::size_t>(y) * w + x];
    if (l != 0 || !img.get(x, y)) return;
    l = label;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (connectivity == 4 && dx != 0 && dy != 0) continue;
        fill(x + dx, y + dy, label);
      }
    }
  };
  int next = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (img.get(x, y) && labels[static_cast<std::size_t>(y) * w + x] == 0)
        fill(x, y, ++next);
  return labels;
}

std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out(labels.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    auto [it, fresh] = remap.emplace(labels[i], static_cast<int>(remap.size()) + 1);
    out[i] = it->second;
  }
  return out;
}

BinaryImage shift_union_dilate(const BinaryImage& img, int size) {
  const int r = size / 2;
  BinaryImage out(img.width(), img.height());
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
          if (img.get_or_bg(x - dx, y - dy)) out.set(x, y, true);
  return out;
}

BinaryImage duality_erode(const BinaryImage& img, int size) {
  const int r = size / 2;
  const int pw = img.width() + 2 * r;
  const int ph = img.height() + 2 * r;
  BinaryImage complement(pw, ph, true);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      complement.set(x + r, y + r, !img.get(x, y));
  const BinaryImage grown = shift_union_dilate(complement, size);
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      out.set(x, y, !grown.get(x + r, y + r));
  return out;
}

std::size_t edit_distance(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

std::size_t lcs(const std::vector<std::u32string>& a,
                const std::vector<std::u32string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1
                                     : std::max(t[i - 1][j], t[i][j - 1]);
  return t[a.size()][b.size()];
}

std::vector<std::u32string> letter_words(const std::u32string& s) {
  const auto letter = [](char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'ä' || c == U'ö' ||
           c == U'ü' || c == U'ß';
  };
  std::vector<std::u32string> out;
  std::u32string cur;
  for (char32_t c : s) {
    if (letter(c)) {
      cur += (c >= U'A' && c <= U'Z') ? c + 32 : c;
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace folio::oracle
