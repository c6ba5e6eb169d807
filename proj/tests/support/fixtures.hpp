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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "imaging/image.hpp"
#include "page/page_model.hpp"

namespace folio::fixtures {

using Rng = std::mt19937_64;

imaging::GrayImage random_gray(Rng& rng, int width, int height);
// Each pixel set with probability `density`.
imaging::BinaryImage random_binary(Rng& rng, int width, int height,
                                   double density);

void fill_box(imaging::BinaryImage& img, const Box& box, bool value = true);

// Rectangular region with `lines` evenly spaced line boxes (text kinds only).
page::Region rect_region(const std::string& id, page::RegionType kind,
                         const Box& box, int lines = 0);

// Reading order = text regions in vector order.
page::PageSegmentation make_page(int width, int height,
                                 std::vector<page::Region> regions);

// Valid page with up to `max_regions` regions: rectangles and notched
// rectilinear polygons, lines with and without text, XML-hostile and
// non-ASCII characters, shuffled reading order.
page::PageSegmentation random_segmentation(Rng& rng, const std::string& page_id,
                                           int max_regions = 12);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

// Letters, digits, punctuation, space and newline.
inline const std::u32string kTextAlphabet =
    U"abcdefghijklmnopqrstuvwxyzABCDEFGHXYZäöüß0123456789 .,;!?-\n";

// 1..max_len code points from kTextAlphabet.
std::u32string random_text(Rng& rng, std::size_t max_len);

// Up to eight random insertions, deletions and substitutions.
std::u32string mutate_text(Rng& rng, std::u32string s);

}  // namespace folio::fixtures
