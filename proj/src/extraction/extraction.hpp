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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imaging/image.hpp"
#include "page/page_model.hpp"
#include "segmentation/segmentation.hpp"

namespace folio::extract {

using imaging::BinaryImage;
using imaging::GrayImage;

struct RegionImage {
  std::string region_id;
  Box bbox;
  GrayImage image;
};

// Crops every region from the original scan; pixels outside the region
// polygon are painted white. Throws DimensionMismatch if the scan and the
// segmentation disagree in size.
std::vector<RegionImage> extract_regions(const GrayImage& original,
                                         const page::PageSegmentation& seg);

struct LineImage {
  int index = 0;
  GrayImage gray;      // height-normalized
  BinaryImage binary;  // native resolution
};

// Deskew, binarize and cut a text region image into lines.
std::vector<LineImage> extract_lines(const GrayImage& region_img,
                                     const imaging::BinarizeConfig& cfg,
                                     const seg::SegmentationParams& params,
                                     int line_height = 48);

using LineKey = std::pair<std::string, int>;  // (region id, line index)
using LineTexts = std::map<LineKey, std::string>;

struct AssembledText {
  std::string text;
  std::vector<std::string> warnings;
};

// Regions in reading order, lines in index order, one line per row and a
// blank row between regions. A region's lines are those of the segmentation
// plus any indices present in `line_texts`; absent texts become empty.
AssembledText assemble_text(const page::PageSegmentation& seg,
                            const LineTexts& line_texts);

// Puts one blank after . , : ; ! ? unless whitespace or the end of the text
// already follows.
std::string normalize_text(std::string_view s);

struct ManifestRow {
  std::string page_id;
  std::string region_id;
  int index = 0;
  std::string path;  // relative to the output root
};

// Writes <out>/<page>/<region>/<index>.png and .bin.png for every text line
// and returns the manifest rows in reading order.
std::vector<ManifestRow> export_lines(const std::filesystem::path& out_root,
                                      const GrayImage& original,
                                      const page::PageSegmentation& seg,
                                      const imaging::BinarizeConfig& cfg,
                                      const seg::SegmentationParams& params,
                                      int line_height = 48);

// Reads <root>/<page>/<region>/<index><suffix> files for the page's text
// regions.
LineTexts read_line_texts(const std::filesystem::path& root,
                          const page::PageSegmentation& seg,
                          const std::string& suffix = ".txt");

}  // namespace folio::extract
