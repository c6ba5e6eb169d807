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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "imaging/image.hpp"
#include "page/page_model.hpp"

namespace folio::synth {

using Rng = std::mt19937_64;

// Glyph geometry of one type size.
struct Typeface {
  int x_height = 12;
  int ascender = 17;   // capitals and tall letters
  int min_width = 6;
  int max_width = 11;
  int stroke = 2;
  int letter_gap = 2;
  int word_gap = 6;
};

Typeface body_face();
Typeface heading_face();

struct RenderedLine {
  Box bbox;
  std::string text;
};

// Draws `text` with its baseline on row `baseline`, starting at column x.
// Returns the ink bounding box (empty for blank text).
RenderedLine render_line(imaging::BinaryImage& img, int x, int baseline,
                         std::string_view text, const Typeface& face);

// Advance width of `text` in pixels.
int text_width(std::string_view text, const Typeface& face);

// Random pseudo-German line of at most `max_width` pixels. Lines start with
// a capital so every body line reaches ascender height.
std::string random_line(Rng& rng, int max_width, const Typeface& face,
                        bool punctuation = true);

struct RenderedBlock {
  Box bbox;
  std::vector<RenderedLine> lines;
};

// Consecutive lines at a fixed pitch (first baseline at top + ascender).
// `indent` shifts the first `indent_lines` lines right.
RenderedBlock render_block(imaging::BinaryImage& img, Rng& rng, int x, int top,
                           int width, int lines, const Typeface& face, int pitch,
                           int indent = 0, int indent_lines = 0);

// Hatched, framed rectangle forming one connected component.
void draw_woodcut(imaging::BinaryImage& img, const Box& box, Rng& rng);
// Framed, patterned initial; one connected component.
void draw_initial(imaging::BinaryImage& img, const Box& box, Rng& rng);

struct PageOptions {
  int width = 1000;
  int height = 1400;
  double top_heading_prob = 0.6;
  double column_heading_prob = 0.5;
  int max_heading_lines = 2;
  double woodcut_prob = 0.4;
  double initial_prob = 0.4;
  double page_number_prob = 0.9;
  int page_number = 1;
};

struct SyntheticPage {
  imaging::BinaryImage ink;      // clean foreground
  imaging::GrayImage scan;       // gray scan with border, neighbour strip, noise
  page::PageSegmentation truth;  // tight boxes, lines with text
};

SyntheticPage generate_page(const PageOptions& options, std::uint64_t seed,
                            const std::string& page_id);

// Page text as assembled from the truth lines.
std::string page_text(const page::PageSegmentation& truth);

// Replaces each code point, newlines included, with probability p by a
// different lower-case letter, so p is the exact per-character error rate.
std::string inject_substitutions(std::string_view text, double p, Rng& rng);

// Horizontal black bands of the given height and pitch with margins.
imaging::BinaryImage band_page(int width, int height, int band_height, int pitch);

struct BookOptions {
  int pages = 10;
  std::uint64_t seed = 0;
  std::optional<double> ocr_noise;
  PageOptions page;
};

// "p0001", "p0002", ...
std::string page_name(int ordinal);

// Per-page seed; independent of how many pages are generated.
std::uint64_t page_seed(std::uint64_t book_seed, int ordinal);

// Writes scans/, binary/, truth/, text/ (and ocr/ when noise is set) for
// page `ordinal` (1-based) under `root`.
void write_book_page(const std::filesystem::path& root, const BookOptions& options,
                     int ordinal);

}  // namespace folio::synth
