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

#include <cmath>

#include "common/error.hpp"
#include "imaging/image.hpp"
#include "imaging/image_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "synth/generator.hpp"

using namespace folio;
using namespace folio::imaging;
using fixtures::Rng;

namespace {

bool subset(const BinaryImage& a, const BinaryImage& b) {
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.get(x, y) && !b.get(x, y)) return false;
  return true;
}

BinaryImage union_of(const BinaryImage& a, const BinaryImage& b) {
  BinaryImage out = a;
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (b.get(x, y)) out.set(x, y, true);
  return out;
}

// Row of 3-px glyphs with 2-px gaps; a closing with SE 5 joins the row.
void glyph_row(BinaryImage& img, int x0, int x1, int y0, int height) {
  for (int x = x0; x <= x1; x += 5)
    fixtures::fill_box(img, {x, y0, std::min(x + 2, x1), y0 + height - 1});
}

}  // namespace

TEST_CASE("containers enforce their shape") {
  CHECK_THROWS_AS(GrayImage(0, 5), Error);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>(3)), Error);
  CHECK_THROWS_AS(BinaryImage(3, 3, std::vector<std::uint8_t>(8)), Error);
  CHECK_THROWS_AS(StructuringElement(4), Error);
  CHECK_THROWS_AS(StructuringElement(0), Error);
  CHECK(StructuringElement(5).radius() == 2);
}

TEST_CASE("binarize config validation") {
  BinarizeConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.window = 4;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.window = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.r = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.k = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("sauvola: zero-variance pages") {
  BinarizeConfig cfg;
  cfg.k = 0.5;
  cfg.r = 128;
  CHECK_FALSE(sauvola_binarize(GrayImage(20, 10, 128), cfg).any());
  CHECK(sauvola_binarize(GrayImage(20, 10, 0), cfg).count() == 200);
}

TEST_CASE("sauvola matches the windowed-statistics oracle") {
  Rng rng(11);
  for (int window : {3, 5, 7, 31}) {
    for (int i = 0; i < 10; ++i) {
      const GrayImage img = fixtures::random_gray(rng, 16, 16);
      BinarizeConfig cfg;
      cfg.window = window;
      CHECK(sauvola_binarize(img, cfg) ==
            oracle::naive_sauvola(img, window, cfg.k, cfg.r));
    }
  }
}

TEST_CASE("dilate examples") {
  BinaryImage img(5, 5);
  img.set(2, 2, true);
  const BinaryImage d = dilate(img, StructuringElement(3));
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x)
      CHECK(d.get(x, y) == (x >= 1 && x <= 3 && y >= 1 && y <= 3));
  CHECK_FALSE(dilate(BinaryImage(7, 4), StructuringElement(5)).any());
}

TEST_CASE("erode treats the outside as background") {
  const BinaryImage e = erode(BinaryImage(5, 5, true), StructuringElement(3));
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x)
      CHECK(e.get(x, y) == (x >= 1 && x <= 3 && y >= 1 && y <= 3));
}

TEST_CASE("morphology matches shift-union and duality oracles") {
  Rng rng(5);
  for (int size : {1, 3, 5}) {
    for (int i = 0; i < 20; ++i) {
      const BinaryImage img = fixtures::random_binary(rng, 16, 16, 0.3 + 0.02 * i);
      const StructuringElement se(size);
      CHECK(dilate(img, se) == oracle::shift_union_dilate(img, size));
      CHECK(erode(img, se) == oracle::duality_erode(img, size));
    }
  }
}

TEST_CASE("morphology properties on random images") {
  Rng rng(99);
  const StructuringElement se(3);
  for (int i = 0; i < 50; ++i) {
    const BinaryImage x = fixtures::random_binary(rng, 24, 17, 0.4);
    const BinaryImage y = union_of(x, fixtures::random_binary(rng, 24, 17, 0.2));
    CHECK(subset(x, dilate(x, se)));
    CHECK(subset(erode(x, se), x));
    CHECK(subset(dilate(x, se), dilate(y, se)));
    CHECK(subset(erode(x, se), erode(y, se)));
    // Closing is extensive away from the border; with background outside
    // the raster the outermost ring may be eroded.
    const BinaryImage c = erode(dilate(x, se), se);
    for (int v = 1; v < x.height() - 1; ++v)
      for (int u = 1; u < x.width() - 1; ++u)
        if (x.get(u, v)) CHECK(c.get(u, v));
  }
}

TEST_CASE("connected components: connectivity and empties") {
  BinaryImage img(3, 3);
  img.set(0, 0, true);
  img.set(1, 1, true);
  CHECK(connected_components(img, Connectivity::kFour).stats.size() == 2);
  CHECK(connected_components(img, Connectivity::kEight).stats.size() == 1);
  CHECK(connected_components(BinaryImage(4, 4), Connectivity::kEight).stats.empty());
}

TEST_CASE("connected components match flood fill and keep stats consistent") {
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const BinaryImage img = fixtures::random_binary(rng, 32, 32, 0.45);
    for (auto conn : {Connectivity::kFour, Connectivity::kEight}) {
      const Components cc = connected_components(img, conn);
      CHECK(oracle::canonical_labels(cc.labels) ==
            oracle::flood_fill_labels(img, static_cast<int>(conn)));
      std::vector<std::int64_t> area(cc.stats.size() + 1, 0);
      for (int y = 0; y < 32; ++y) {
        for (int x = 0; x < 32; ++x) {
          const int l = cc.label_at(x, y);
          CHECK((l != 0) == img.get(x, y));
          if (l == 0) continue;
          ++area[l];
          CHECK(cc.stats[l - 1].bbox.contains(x, y));
        }
      }
      for (const auto& st : cc.stats) {
        CHECK(st.area >= 1);
        CHECK(st.area == area[st.label]);
        CHECK(st.bbox.contains(st.cx, st.cy));
      }
    }
  }
}

TEST_CASE("skew: band pages, tie break and empty input") {
  const BinaryImage bands = synth::band_page(600, 500, 6, 20);
  CHECK(estimate_skew(bands) == 0.0);
  CHECK(std::abs(estimate_skew(rotate(bands, 2.0)) + 2.0) <= 0.2);
  BinaryImage dot(30, 30);
  dot.set(14, 9, true);
  CHECK(estimate_skew(dot) == 0.0);
  CHECK_THROWS_AS(estimate_skew(BinaryImage(10, 10)), Error);
  try {
    estimate_skew(BinaryImage(10, 10));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyImage);
  }
}

TEST_CASE("rotate keeps size and is identity at zero") {
  Rng rng(8);
  const BinaryImage img = fixtures::random_binary(rng, 41, 23, 0.3);
  CHECK(rotate(img, 0.0) == img);
  const BinaryImage r = rotate(img, 3.0);
  CHECK(r.width() == 41);
  CHECK(r.height() == 23);
  const GrayImage g = fixtures::random_gray(rng, 20, 30);
  CHECK(rotate(g, 0.0) == g);
  CHECK(rotate(g, 45.0, 200).at(0, 0) == 200);
}

TEST_CASE("border removal: frame around text") {
  BinaryImage page(300, 200);
  fixtures::fill_box(page, {0, 0, 299, 3});
  fixtures::fill_box(page, {0, 196, 299, 199});
  fixtures::fill_box(page, {0, 0, 3, 199});
  fixtures::fill_box(page, {296, 0, 299, 199});
  BinaryImage text(300, 200);
  for (int row = 0; row < 5; ++row) glyph_row(text, 60, 240, 50 + row * 20, 10);
  const BinaryImage in = union_of(page, text);
  CHECK(remove_scan_border(in) == text);
}

TEST_CASE("border removal: clean page is untouched") {
  BinaryImage text(300, 200);
  for (int row = 0; row < 5; ++row) glyph_row(text, 60, 240, 50 + row * 20, 10);
  CHECK(remove_scan_border(text) == text);
}

TEST_CASE("border removal: neighbour-page strip on the right edge") {
  BinaryImage text(400, 300);
  for (int row = 0; row < 8; ++row) glyph_row(text, 60, 300, 40 + row * 25, 12);
  BinaryImage strip(400, 300);
  // Glyph rows of the facing page, cut by the image edge at x = 399.
  for (int row = 0; row < 10; ++row) glyph_row(strip, 372, 399, 20 + row * 25, 12);
  const BinaryImage out = remove_scan_border(union_of(text, strip));
  CHECK(out == text);
}

TEST_CASE("border removal is idempotent") {
  for (int i = 1; i <= 4; ++i) {
    const synth::SyntheticPage p = synth::generate_page({}, 100 + i, "p");
    const BinaryImage once = remove_scan_border(sauvola_binarize(p.scan, {}));
    CHECK(remove_scan_border(once) == once);
  }
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const BinaryImage noise = fixtures::random_binary(rng, 60, 50, 0.1);
    const BinaryImage once = remove_scan_border(noise);
    CHECK(remove_scan_border(once) == once);
  }
}

TEST_CASE("preprocess undoes an injected rotation of a scan") {
  const synth::SyntheticPage p = synth::generate_page({}, 21, "p");
  const GrayImage tilted = rotate(p.scan, 1.5, 228);
  const Preprocessed pre = preprocess(tilted, {});
  CHECK(std::abs(pre.skew_deg + 1.5) <= 0.2);
  CHECK(pre.binary.width() == p.scan.width());
  CHECK(pre.binary.height() == p.scan.height());
}

TEST_CASE("crop and resize") {
  Rng rng(1);
  const GrayImage g = fixtures::random_gray(rng, 10, 8);
  const GrayImage c = crop(g, {2, 3, 5, 6});
  CHECK(c.width() == 4);
  CHECK(c.height() == 4);
  CHECK(c.at(0, 0) == g.at(2, 3));
  CHECK(c.at(3, 3) == g.at(5, 6));
  const GrayImage clipped = crop(g, {5, 5, 12, 6});
  CHECK(clipped.width() == 5);
  CHECK(clipped.height() == 2);
  CHECK(clipped.at(4, 1) == g.at(9, 6));
  CHECK_THROWS_AS(crop(g, {20, 0, 30, 5}), Error);
  const GrayImage r = resize_bilinear(GrayImage(7, 3, 90), 14, 48);
  CHECK(r.width() == 14);
  CHECK(r.height() == 48);
  CHECK(r.at(13, 47) == 90);
}

TEST_CASE("image io round trips") {
  fixtures::TempDir dir("io");
  Rng rng(2);
  const GrayImage g = fixtures::random_gray(rng, 13, 7);
  write_png(dir / "g.png", g);
  CHECK(read_gray(dir / "g.png") == g);
  write_pgm(dir / "g.pgm", g);
  CHECK(read_gray(dir / "g.pgm") == g);

  const BinaryImage b = fixtures::random_binary(rng, 19, 5, 0.5);
  write_png(dir / "b.png", b);
  CHECK(read_binary(dir / "b.png") == b);
  write_pbm(dir / "b.pbm", b);
  CHECK(read_binary(dir / "b.pbm") == b);

  fixtures::write_file(dir / "ascii.pgm", "P2\n# c\n3 1\n255\n0 128 255\n");
  const GrayImage a = read_gray(dir / "ascii.pgm");
  CHECK(a.at(1, 0) == 128);
  fixtures::write_file(dir / "ascii.pbm", "P1\n2 2\n1 0\n0 1\n");
  const BinaryImage p1 = read_binary(dir / "ascii.pbm");
  CHECK(p1.get(0, 0));
  CHECK_FALSE(p1.get(1, 0));

  fixtures::write_file(dir / "junk.png", "not an image");
  CHECK_THROWS_AS(read_gray(dir / "junk.png"), Error);
  CHECK_THROWS_AS(read_gray(dir / "missing.png"), Error);
}

TEST_CASE("luma weights") {
  CHECK(rec601_luma(255, 255, 255) == 255);
  CHECK(rec601_luma(0, 0, 0) == 0);
  CHECK(rec601_luma(255, 0, 0) == 76);
  CHECK(rec601_luma(0, 255, 0) == 150);
  CHECK(rec601_luma(0, 0, 255) == 29);
}
