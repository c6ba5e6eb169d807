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

#include "synth/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "common/error.hpp"
#include "evaluation/unicode.hpp"
#include "imaging/image_io.hpp"
#include "pagexml/pagexml.hpp"

namespace folio::synth {

using imaging::BinaryImage;
using imaging::GrayImage;
using page::Polygon;
using page::Region;
using page::RegionType;

Typeface body_face() { return {}; }

Typeface heading_face() {
  Typeface f;
  f.x_height = 26;
  f.ascender = 26;
  f.min_width = 10;
  f.max_width = 18;
  f.stroke = 3;
  f.letter_gap = 3;
  f.word_gap = 6;
  return f;
}

namespace {

constexpr int kBodyPitch = 22;
constexpr int kHeadingPitch = 31;
constexpr int kBlockGapMin = 20;
constexpr int kBlockGapMax = 30;

std::uint64_t mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

bool is_tall(char32_t c) {
  if (c >= U'A' && c <= U'Z') return true;
  switch (c) {
    case U'b': case U'd': case U'f': case U'h': case U'k': case U'l':
    case U't': case U'ſ': case U'Ä': case U'Ö': case U'Ü':
      return true;
    default:
      return false;
  }
}

bool has_umlaut(char32_t c) {
  switch (c) {
    case U'ä': case U'ö': case U'ü':
      return true;
    default:
      return false;
  }
}

int glyph_width(char32_t c, const Typeface& face) {
  if (c == U'.' || c == U',') return face.stroke + 1;
  const std::uint64_t h = mix(c);
  return face.min_width + static_cast<int>(h % (face.max_width - face.min_width + 1));
}

void fill(BinaryImage& img, int x0, int y0, int x1, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width() - 1);
  y1 = std::min(y1, img.height() - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) img.set(x, y, true);
}

// Draws one glyph; returns its ink box.
Box draw_glyph(BinaryImage& img, char32_t c, int x, int baseline, const Typeface& face) {
  const int s = face.stroke;
  const int w = glyph_width(c, face);
  if (c == U'.') {
    fill(img, x, baseline - s, x + s, baseline);
    return {x, baseline - s, x + s, baseline};
  }
  if (c == U',') {
    fill(img, x, baseline - s - 2, x + s, baseline);
    return {x, baseline - s - 2, x + s, baseline};
  }
  const int h = is_tall(c) ? face.ascender : face.x_height;
  const int top = baseline - h + 1;
  // Stem and top bar keep every variant connected.
  fill(img, x, top, x + s - 1, baseline);
  fill(img, x, top, x + w - 1, top + s - 1);
  const std::uint64_t v = mix(c * 7919ull) % 4;
  if (v == 0 || v == 3) fill(img, x, baseline - s + 1, x + w - 1, baseline);
  if (v == 1) fill(img, x + w - s, top, x + w - 1, baseline);
  if (v == 2) fill(img, x, top + h / 2 - s / 2, x + w - 1, top + h / 2 - s / 2 + s - 1);
  if (v == 3) fill(img, x + w - s, top + h / 2, x + w - 1, baseline);
  Box box{x, top, x + w - 1, baseline};
  if (has_umlaut(c)) {
    const int dy = top - s - 2;
    fill(img, x + 1, dy, x + s, dy + s - 1);
    fill(img, x + w - s - 1, dy, x + w - 2, dy + s - 1);
    box.y0 = dy;
  }
  return box;
}

const std::array<const char*, 40> kSyllables = {
    "der", "die", "und", "heil", "ig", "en", "le", "ben", "sch", "ſt",
    "ein", "ver", "ge", "ſei", "nach", "gott", "mit", "ſo", "daz", "wir",
    "mü", "hä", "lö", "in", "an", "er", "un", "wart", "ſant", "kun",
    "ig", "lich", "ten", "mar", "tyr", "bi", "ſch", "of", "zu", "al"};

const std::array<const char*, 12> kInitialWords = {
    "Der", "Die", "Und", "Do", "Nu", "Als", "Wie", "In", "Von", "Sant", "Bi", "Er"};

std::string random_word(Rng& rng) {
  std::uniform_int_distribution<int> n(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, kSyllables.size() - 1);
  std::string w;
  for (int i = n(rng); i > 0; --i) w += kSyllables[pick(rng)];
  return w;
}

}  // namespace

int text_width(std::string_view text, const Typeface& face) {
  int width = 0;
  bool first = true;
  for (char32_t c : eval::decode_utf8(text)) {
    if (c == U' ') {
      width += face.word_gap;
      first = true;
      continue;
    }
    if (!first) width += face.letter_gap;
    width += glyph_width(c, face);
    first = false;
  }
  return width;
}

RenderedLine render_line(BinaryImage& img, int x, int baseline, std::string_view text,
                         const Typeface& face) {
  RenderedLine line;
  line.text = std::string(text);
  bool first = true;
  for (char32_t c : eval::decode_utf8(text)) {
    if (c == U' ') {
      x += face.word_gap;
      first = true;
      continue;
    }
    if (!first) x += face.letter_gap;
    line.bbox = line.bbox.unite(draw_glyph(img, c, x, baseline, face));
    x += glyph_width(c, face);
    first = false;
  }
  return line;
}

std::string random_line(Rng& rng, int max_width, const Typeface& face, bool punctuation) {
  std::uniform_int_distribution<std::size_t> pick(0, kInitialWords.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string line = kInitialWords[pick(rng)];
  for (int attempts = 0; attempts < 8;) {
    std::string word = random_word(rng);
    if (punctuation) {
      const double r = u(rng);
      if (r < 0.08) {
        word += ".";
      } else if (r < 0.14) {
        word += ",";
      }
    }
    const std::string candidate = line + " " + word;
    if (text_width(candidate, face) <= max_width) {
      line = candidate;
    } else {
      ++attempts;
    }
  }
  return line;
}

RenderedBlock render_block(BinaryImage& img, Rng& rng, int x, int top, int width,
                           int lines, const Typeface& face, int pitch, int indent,
                           int indent_lines) {
  RenderedBlock block;
  std::uniform_real_distribution<double> ragged(0.4, 1.0);
  for (int i = 0; i < lines; ++i) {
    const int shift = i < indent_lines ? indent : 0;
    int w = width - shift;
    if (i + 1 == lines && lines > 1) w = static_cast<int>(w * ragged(rng));
    const std::string text = random_line(rng, std::max(w, face.max_width * 4), face);
    const int baseline = top + i * pitch + face.ascender - 1;
    RenderedLine line = render_line(img, x + shift, baseline, text, face);
    block.bbox = block.bbox.unite(line.bbox);
    block.lines.push_back(std::move(line));
  }
  return block;
}

void draw_woodcut(BinaryImage& img, const Box& box, Rng& rng) {
  constexpr int kFrame = 4;
  fill(img, box.x0, box.y0, box.x1, box.y0 + kFrame - 1);
  fill(img, box.x0, box.y1 - kFrame + 1, box.x1, box.y1);
  fill(img, box.x0, box.y0, box.x0 + kFrame - 1, box.y1);
  fill(img, box.x1 - kFrame + 1, box.y0, box.x1, box.y1);
  for (int y = box.y0 + kFrame; y <= box.y1 - kFrame; ++y)
    for (int x = box.x0 + kFrame; x <= box.x1 - kFrame; ++x)
      if ((x + y) % 4 < 2) img.set(x, y, true);
  // A few solid shapes over the hatching.
  std::uniform_int_distribution<int> count(2, 5);
  for (int n = count(rng); n > 0; --n) {
    std::uniform_int_distribution<int> rad(12, std::max(13, box.height() / 6));
    const int r = rad(rng);
    std::uniform_int_distribution<int> cx(box.x0 + r + kFrame, box.x1 - r - kFrame);
    std::uniform_int_distribution<int> cy(box.y0 + r + kFrame, box.y1 - r - kFrame);
    const int x0 = cx(rng);
    const int y0 = cy(rng);
    for (int y = y0 - r; y <= y0 + r; ++y)
      for (int x = x0 - r; x <= x0 + r; ++x)
        if ((x - x0) * (x - x0) + (y - y0) * (y - y0) <= r * r) img.set(x, y, true);
  }
}

void draw_initial(BinaryImage& img, const Box& box, Rng& rng) {
  constexpr int kFrame = 3;
  fill(img, box.x0, box.y0, box.x1, box.y0 + kFrame - 1);
  fill(img, box.x0, box.y1 - kFrame + 1, box.x1, box.y1);
  fill(img, box.x0, box.y0, box.x0 + kFrame - 1, box.y1);
  fill(img, box.x1 - kFrame + 1, box.y0, box.x1, box.y1);
  std::uniform_int_distribution<int> phase(0, 4);
  const int p = phase(rng);
  for (int y = box.y0 + kFrame; y <= box.y1 - kFrame; ++y)
    for (int x = box.x0 + kFrame; x <= box.x1 - kFrame; ++x)
      if ((x - y + p + 1000) % 5 < 2) img.set(x, y, true);
}

namespace {

struct Layout {
  BinaryImage ink;
  std::vector<Region> regions;  // in reading order, images interleaved
};

void add_text_region(Layout& page, RegionType kind, const RenderedBlock& block) {
  Region r;
  r.kind = kind;
  r.boundary = Polygon::rect(block.bbox);
  for (std::size_t i = 0; i < block.lines.size(); ++i) {
    r.lines.push_back({block.lines[i].bbox, static_cast<int>(i), block.lines[i].text});
  }
  page.regions.push_back(std::move(r));
}

void add_image_region(Layout& page, const Box& box) {
  page.regions.push_back({"", RegionType::kImage, Polygon::rect(box), {}});
}

int block_height(int lines, int pitch, const Typeface& face) {
  return (lines - 1) * pitch + face.ascender;
}

GrayImage degrade(const BinaryImage& ink, Rng& rng) {
  GrayImage scan(ink.width(), ink.height());
  std::normal_distribution<double> paper(228.0, 6.0);
  std::normal_distribution<double> dark(35.0, 10.0);
  auto clamp8 = [](double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  };
  for (int y = 0; y < ink.height(); ++y)
    for (int x = 0; x < ink.width(); ++x)
      scan.at(x, y) = clamp8(ink.get(x, y) ? dark(rng) : paper(rng));

  // Scanner shadow along one vertical edge, neighbouring page on the other.
  std::uniform_int_distribution<int> band(10, 24);
  std::bernoulli_distribution left(0.5);
  const bool border_left = left(rng);
  const int bw = band(rng);
  for (int y = 0; y < ink.height(); ++y)
    for (int i = 0; i < bw; ++i)
      scan.at(border_left ? i : ink.width() - 1 - i, y) = 0;
  const int sw = band(rng) + 10;
  for (int y = 0; y < ink.height(); ++y) {
    for (int i = 0; i < sw; ++i) {
      const int x = border_left ? ink.width() - 1 - i : i;
      const bool stroke = (y / 6) % 4 == 0 && i < sw - 4;
      scan.at(x, y) = stroke ? 40 : 150;
    }
  }
  // Speckles.
  std::uniform_int_distribution<int> sx(0, ink.width() - 3);
  std::uniform_int_distribution<int> sy(0, ink.height() - 3);
  for (int n = 0; n < 40; ++n) {
    const int x = sx(rng);
    const int y = sy(rng);
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) scan.at(x + dx, y + dy) = 60;
  }
  return scan;
}

}  // namespace

SyntheticPage generate_page(const PageOptions& options, std::uint64_t seed,
                            const std::string& page_id) {
  if (options.width < 600 || options.height < 800) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic pages need at least 600x800 pixels");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int W = options.width;
  const int H = options.height;
  const Typeface body = body_face();
  const Typeface head = heading_face();

  Layout page;
  page.ink = BinaryImage(W, H);

  const bool with_page_number = u(rng) < options.page_number_prob;
  if (with_page_number) {
    const std::string digits = std::to_string(options.page_number);
    const int tw = text_width(digits, body);
    RenderedBlock block;
    RenderedLine line = render_line(page.ink, static_cast<int>(0.88 * W) - tw / 2,
                                    static_cast<int>(0.03 * H) + body.x_height / 2,
                                    digits, body);
    block.bbox = line.bbox;
    block.lines.push_back(std::move(line));
    add_text_region(page, RegionType::kPageNumber, block);
  }

  std::uniform_int_distribution<int> heading_lines(1, std::max(1, options.max_heading_lines));
  if (u(rng) < options.top_heading_prob) {
    const int n = heading_lines(rng);
    RenderedBlock block;
    const int top = static_cast<int>(0.065 * H);
    for (int i = 0; i < n; ++i) {
      const std::string text = random_line(rng, static_cast<int>(0.5 * W), head, false);
      const int x = (W - text_width(text, head)) / 2;
      RenderedLine line =
          render_line(page.ink, x, top + i * kHeadingPitch + head.ascender - 1, text, head);
      block.bbox = block.bbox.unite(line.bbox);
      block.lines.push_back(std::move(line));
    }
    add_text_region(page, RegionType::kHeading, block);
  }

  const int col_w = static_cast<int>(0.41 * W);
  const std::array<int, 2> col_x = {static_cast<int>(0.07 * W), W - static_cast<int>(0.07 * W) - col_w};
  const int col_top = static_cast<int>(0.17 * H);
  const int col_bottom = static_cast<int>(0.93 * H);
  const int heading_min_y = static_cast<int>(0.3 * H);

  std::uniform_int_distribution<int> which(0, 1);
  const int woodcut_col = u(rng) < options.woodcut_prob ? which(rng) : -1;
  const int heading_col = u(rng) < options.column_heading_prob ? which(rng) : -1;
  const int initial_col = u(rng) < options.initial_prob ? which(rng) : -1;
  std::uniform_int_distribution<int> gap(kBlockGapMin, kBlockGapMax);

  for (int c = 0; c < 2; ++c) {
    const int x = col_x[c];
    int y = col_top;
    bool woodcut_pending = woodcut_col == c;
    bool heading_pending = heading_col == c;
    bool first = true;
    while (true) {
      if (!first) y += gap(rng);
      const int room = col_bottom - y;
      if (heading_pending && y >= heading_min_y) {
        const int n = heading_lines(rng);
        if (block_height(n, kHeadingPitch, head) > room) break;
        RenderedBlock block;
        for (int i = 0; i < n; ++i) {
          const std::string text = random_line(rng, col_w - 20, head, false);
          RenderedLine line = render_line(page.ink, x, y + i * kHeadingPitch + head.ascender - 1,
                                          text, head);
          block.bbox = block.bbox.unite(line.bbox);
          block.lines.push_back(std::move(line));
        }
        add_text_region(page, RegionType::kHeading, block);
        y = block.bbox.y1 + 1;
        heading_pending = false;
        first = false;
        continue;
      }
      if (woodcut_pending && !first) {
        woodcut_pending = false;
        std::uniform_int_distribution<int> wh(250, 330);
        const int h = wh(rng);
        if (h <= room) {
          const Box box{x, y, x + col_w - 1, y + h - 1};
          draw_woodcut(page.ink, box, rng);
          add_image_region(page, box);
          y = box.y1 + 1;
          continue;
        }
      }
      const bool with_initial = first && initial_col == c;
      std::uniform_int_distribution<int> nl(first ? (with_initial ? 8 : 6) : 3, 14);
      int n = nl(rng);
      while (n >= 3 && block_height(n, kBodyPitch, body) > room) --n;
      if (n < 3) break;
      if (with_initial) {
        std::uniform_int_distribution<int> iw(44, 56);
        const Box box{x, y, x + iw(rng) - 1, y + 2 * kBodyPitch + body.ascender - 1};
        draw_initial(page.ink, box, rng);
        add_image_region(page, box);
        const int indent = box.width() + 6;
        const RenderedBlock block =
            render_block(page.ink, rng, x, y, col_w, n, body, kBodyPitch, indent, 3);
        add_text_region(page, RegionType::kParagraph, block);
        y = std::max(block.bbox.y1, box.y1) + 1;
      } else {
        const RenderedBlock block = render_block(page.ink, rng, x, y, col_w, n, body, kBodyPitch);
        add_text_region(page, RegionType::kParagraph, block);
        y = block.bbox.y1 + 1;
      }
      first = false;
    }
  }

  SyntheticPage out;
  out.truth.page_id = page_id;
  out.truth.width = W;
  out.truth.height = H;
  for (std::size_t i = 0; i < page.regions.size(); ++i) {
    Region r = std::move(page.regions[i]);
    r.id = page::region_id(static_cast<int>(i) + 1);
    if (page::is_text(r.kind)) out.truth.reading_order.push_back(r.id);
    out.truth.regions.push_back(std::move(r));
  }
  out.scan = degrade(page.ink, rng);
  out.ink = std::move(page.ink);
  return out;
}

std::string page_text(const page::PageSegmentation& truth) {
  std::string out;
  bool first_region = true;
  for (const auto& id : truth.reading_order) {
    const Region* r = truth.find(id);
    if (r == nullptr) continue;
    if (!first_region) out += "\n\n";
    first_region = false;
    for (std::size_t i = 0; i < r->lines.size(); ++i) {
      if (i > 0) out += "\n";
      out += r->lines[i].text.value_or("");
    }
  }
  return out;
}

std::string inject_substitutions(std::string_view text, double p, Rng& rng) {
  std::bernoulli_distribution hit(p);
  std::uniform_int_distribution<int> letter(0, 25);
  std::u32string cps = eval::decode_utf8(text);
  for (char32_t& c : cps) {
    if (!hit(rng)) continue;
    char32_t r = c;
    while (r == c) r = U'a' + static_cast<char32_t>(letter(rng));
    c = r;
  }
  return eval::encode_utf8(cps);
}

BinaryImage band_page(int width, int height, int band_height, int pitch) {
  BinaryImage img(width, height);
  for (int y0 = pitch; y0 + band_height < height - pitch; y0 += pitch)
    fill(img, width / 8, y0, width - width / 8 - 1, y0 + band_height - 1);
  return img;
}

std::string page_name(int ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "p%04d", ordinal);
  return buf;
}

std::uint64_t page_seed(std::uint64_t book_seed, int ordinal) {
  return mix(mix(book_seed) ^ static_cast<std::uint64_t>(ordinal));
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace

void write_book_page(const std::filesystem::path& root, const BookOptions& options,
                     int ordinal) {
  namespace fs = std::filesystem;
  const std::string id = page_name(ordinal);
  PageOptions po = options.page;
  po.page_number = ordinal;
  const std::uint64_t seed = page_seed(options.seed, ordinal);
  const SyntheticPage page = generate_page(po, seed, id);

  for (const char* dir : {"scans", "binary", "truth", "text"}) fs::create_directories(root / dir);
  imaging::write_png(root / "scans" / (id + ".png"), page.scan);
  imaging::write_png(root / "binary" / (id + ".png"), page.ink);
  write_text(root / "truth" / (id + ".xml"), pagexml::write_pagexml(page.truth, id + ".png"));
  const std::string text = page_text(page.truth);
  write_text(root / "text" / (id + ".txt"), text);
  if (options.ocr_noise) {
    fs::create_directories(root / "ocr");
    Rng rng(mix(seed ^ 0x6F6372ull));
    write_text(root / "ocr" / (id + ".txt"), inject_substitutions(text, *options.ocr_noise, rng));
  }
}

}  // namespace folio::synth
