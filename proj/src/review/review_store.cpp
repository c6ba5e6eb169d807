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

#include "review/review_store.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "common/log.hpp"
#include "imaging/image_io.hpp"
#include "pagexml/pagexml.hpp"

namespace folio::review {

namespace fs = std::filesystem;
using nlohmann::json;
using page::PageSegmentation;
using page::Polygon;
using page::Region;
using page::RegionType;

namespace {

constexpr std::array<EditKind, 5> kAllEditKinds = {
    EditKind::kDeleteRegion, EditKind::kSplitRegion, EditKind::kChangeType,
    EditKind::kSetReadingOrder, EditKind::kMergeRegions};

}  // namespace

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::kDeleteRegion: return "delete_region";
    case EditKind::kSplitRegion: return "split_region";
    case EditKind::kChangeType: return "change_type";
    case EditKind::kSetReadingOrder: return "set_reading_order";
    case EditKind::kMergeRegions: return "merge_regions";
  }
  return "unknown";
}

std::string_view to_string(ReviewStatus status) {
  return status == ReviewStatus::kApproved ? "approved" : "unreviewed";
}

EditCommand edit_from_json(const json& j) {
  try {
    EditCommand e;
    const auto op = j.at("op").get<std::string>();
    const auto* kind = std::find_if(kAllEditKinds.begin(), kAllEditKinds.end(),
                                    [&](EditKind k) { return to_string(k) == op; });
    if (kind == kAllEditKinds.end()) throw Error(ErrorCode::kSchema, "unknown edit op '" + op + "'");
    e.kind = *kind;
    switch (e.kind) {
      case EditKind::kDeleteRegion:
        e.id = j.at("id").get<std::string>();
        break;
      case EditKind::kSplitRegion:
        e.id = j.at("id").get<std::string>();
        e.y = j.at("y").get<int>();
        break;
      case EditKind::kChangeType: {
        e.id = j.at("id").get<std::string>();
        const auto name = j.at("type").get<std::string>();
        auto t = page::region_type_from_string(name);
        if (!t) throw Error(ErrorCode::kSchema, "unknown region type '" + name + "'");
        e.type = *t;
        break;
      }
      case EditKind::kSetReadingOrder:
        e.order = j.at("order").get<std::vector<std::string>>();
        break;
      case EditKind::kMergeRegions:
        e.id = j.at("a").get<std::string>();
        e.other = j.at("b").get<std::string>();
        break;
    }
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::kSchema, std::string("bad edit command: ") + ex.what());
  }
}

json to_json(const EditCommand& e) {
  json j = {{"op", std::string(to_string(e.kind))}};
  switch (e.kind) {
    case EditKind::kDeleteRegion:
      j["id"] = e.id;
      break;
    case EditKind::kSplitRegion:
      j["id"] = e.id;
      j["y"] = e.y;
      break;
    case EditKind::kChangeType:
      j["id"] = e.id;
      j["type"] = std::string(page::to_string(e.type));
      break;
    case EditKind::kSetReadingOrder:
      j["order"] = e.order;
      break;
    case EditKind::kMergeRegions:
      j["a"] = e.id;
      j["b"] = e.other;
      break;
  }
  return j;
}

namespace {

Region& require(PageSegmentation& seg, const std::string& id) {
  Region* r = seg.find(id);
  if (r == nullptr) throw Error(ErrorCode::kNotFound, "unknown region '" + id + "'");
  return *r;
}

void erase_from_order(PageSegmentation& seg, const std::string& id) {
  std::erase(seg.reading_order, id);
}

void reindex(std::vector<page::TextLine>& lines) {
  std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    return a.bbox.y0 != b.bbox.y0 ? a.bbox.y0 < b.bbox.y0 : a.bbox.x0 < b.bbox.x0;
  });
  for (std::size_t i = 0; i < lines.size(); ++i) lines[i].index = static_cast<int>(i);
}

void split(PageSegmentation& seg, const EditCommand& e) {
  Region& r = require(seg, e.id);
  const Box b = r.boundary.bbox();
  if (e.y <= b.y0 || e.y > b.y1) {
    throw Error(ErrorCode::kInvalidSegmentation,
                "split row " + std::to_string(e.y) + " outside rows " +
                    std::to_string(b.y0 + 1) + ".." + std::to_string(b.y1) + " of " + e.id);
  }
  Polygon top = page::clip(r.boundary, {b.x0, b.y0, b.x1, e.y - 1});
  Polygon bottom = page::clip(r.boundary, {b.x0, e.y, b.x1, b.y1});
  if (top.points.empty() || bottom.points.empty()) {
    throw Error(ErrorCode::kInvalidSegmentation, "split of " + e.id + " leaves an empty part");
  }
  Region lower;
  lower.id = page::next_free_region_id(seg);
  lower.kind = r.kind;
  lower.boundary = std::move(bottom);
  std::vector<page::TextLine> upper_lines;
  for (auto& l : r.lines) {
    // Lines follow their centre row.
    if (l.bbox.y0 + l.bbox.y1 < 2 * e.y) {
      upper_lines.push_back(std::move(l));
    } else {
      lower.lines.push_back(std::move(l));
    }
  }
  r.boundary = std::move(top);
  r.lines = std::move(upper_lines);
  reindex(r.lines);
  reindex(lower.lines);
  const std::string upper_id = r.id;
  auto pos = std::find(seg.reading_order.begin(), seg.reading_order.end(), upper_id);
  if (pos != seg.reading_order.end()) seg.reading_order.insert(pos + 1, lower.id);
  seg.regions.push_back(std::move(lower));
}

void change_type(PageSegmentation& seg, const EditCommand& e) {
  Region& r = require(seg, e.id);
  const bool was_text = page::is_text(r.kind);
  r.kind = e.type;
  if (!page::is_text(e.type)) {
    r.lines.clear();
    erase_from_order(seg, r.id);
  } else if (!was_text) {
    seg.reading_order.push_back(r.id);
  }
}

void merge(PageSegmentation& seg, const EditCommand& e) {
  if (e.id == e.other) {
    throw Error(ErrorCode::kInvalidSegmentation, "cannot merge " + e.id + " with itself");
  }
  Region& b = require(seg, e.other);
  Region& a = require(seg, e.id);
  const Box box = a.boundary.bbox().unite(b.boundary.bbox());
  a.boundary = Polygon::rect(box);
  if (page::is_text(a.kind)) {
    for (auto& l : b.lines) a.lines.push_back(std::move(l));
    reindex(a.lines);
  }
  const std::string gone = b.id;
  erase_from_order(seg, gone);
  std::erase_if(seg.regions, [&](const Region& r) { return r.id == gone; });
}

}  // namespace

PageSegmentation apply_edits(const PageSegmentation& seg,
                             std::span<const EditCommand> edits) {
  PageSegmentation out = seg;
  for (const EditCommand& e : edits) {
    switch (e.kind) {
      case EditKind::kDeleteRegion: {
        require(out, e.id);
        erase_from_order(out, e.id);
        std::erase_if(out.regions, [&](const Region& r) { return r.id == e.id; });
        break;
      }
      case EditKind::kSplitRegion:
        split(out, e);
        break;
      case EditKind::kChangeType:
        change_type(out, e);
        break;
      case EditKind::kSetReadingOrder:
        for (const auto& id : e.order) require(out, id);
        out.reading_order = e.order;
        break;
      case EditKind::kMergeRegions:
        merge(out, e);
        break;
    }
  }
  const auto violations = page::validate(out);
  if (!violations.empty()) {
    std::string msg = "edits leave the page invalid:";
    for (const auto& v : violations) {
      msg += " [" + v.rule + (v.region_id.empty() ? "" : " " + v.region_id) + "] " + v.message + ";";
    }
    throw Error(ErrorCode::kInvalidSegmentation, msg);
  }
  return out;
}

struct ReviewStore::Page {
  mutable std::mutex mutex;
  PageSegmentation seg;
  PageInfo info;
  std::map<std::string, int> edits_by_kind;
  fs::path journal;
};

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void append_line(const fs::path& path, const std::string& line) {
  std::ofstream f(path, std::ios::binary | std::ios::app);
  f << line << '\n';
  f.flush();
  if (!f) throw Error(ErrorCode::kIo, "cannot append to " + path.string());
}

}  // namespace

ReviewStore::ReviewStore(fs::path image_dir, fs::path pagexml_dir, fs::path state_dir)
    : image_dir_(std::move(image_dir)), state_dir_(std::move(state_dir)) {
  if (!fs::is_directory(pagexml_dir)) {
    throw Error(ErrorCode::kIo, "not a directory: " + pagexml_dir.string());
  }
  fs::create_directories(state_dir_);
  for (const auto& entry : fs::directory_iterator(pagexml_dir)) {
    if (entry.path().extension() != ".xml") continue;
    const std::string id = entry.path().stem().string();
    auto p = std::make_unique<Page>();
    p->seg = pagexml::read_pagexml(read_file(entry.path())).seg;
    p->info.id = id;
    p->journal = state_dir_ / (id + ".journal.jsonl");
    if (fs::exists(p->journal)) {
      std::istringstream lines(read_file(p->journal));
      std::string line;
      while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json rec = json::parse(line);
        if (rec.value("approve", false)) {
          p->info.status = ReviewStatus::kApproved;
          continue;
        }
        std::vector<EditCommand> edits;
        for (const auto& je : rec.at("edits")) edits.push_back(edit_from_json(je));
        p->seg = apply_edits(p->seg, edits);
        p->info.status = ReviewStatus::kUnreviewed;
        ++p->info.revision;
        p->info.edits += static_cast<int>(edits.size());
        for (const auto& e : edits) ++p->edits_by_kind[std::string(to_string(e.kind))];
      }
    }
    pages_.emplace(id, std::move(p));
  }
  spdlog::info("review store: {} pages from {}", pages_.size(), pagexml_dir.string());
}

ReviewStore::~ReviewStore() = default;

ReviewStore::Page& ReviewStore::page(const std::string& page_id) const {
  auto it = pages_.find(page_id);
  if (it == pages_.end()) throw Error(ErrorCode::kNotFound, "unknown page '" + page_id + "'");
  return *it->second;
}

std::vector<PageInfo> ReviewStore::pages() const {
  std::vector<PageInfo> out;
  for (const auto& [id, p] : pages_) {
    std::lock_guard lock(p->mutex);
    out.push_back(p->info);
  }
  return out;
}

PageSnapshot ReviewStore::snapshot(const std::string& page_id) const {
  Page& p = page(page_id);
  std::lock_guard lock(p.mutex);
  return {p.seg, p.info};
}

std::vector<std::uint8_t> ReviewStore::image_png(const std::string& page_id) const {
  page(page_id);
  const fs::path path = image_dir_ / (page_id + ".png");
  if (!fs::exists(path)) throw Error(ErrorCode::kNotFound, "no image for page '" + page_id + "'");
  return imaging::encode_png(imaging::read_gray(path));
}

PageSnapshot ReviewStore::apply(const std::string& page_id, int revision,
                                std::span<const EditCommand> edits) {
  Page& p = page(page_id);
  std::lock_guard lock(p.mutex);
  if (revision != p.info.revision) {
    throw Error(ErrorCode::kConflict, "stale revision " + std::to_string(revision) +
                                          ", current is " + std::to_string(p.info.revision));
  }
  PageSegmentation next = apply_edits(p.seg, edits);
  json batch = json::array();
  for (const auto& e : edits) batch.push_back(to_json(e));
  append_line(p.journal, json{{"revision", revision + 1}, {"edits", batch}}.dump());
  p.seg = std::move(next);
  // Changes after approval need another review.
  p.info.status = ReviewStatus::kUnreviewed;
  ++p.info.revision;
  p.info.edits += static_cast<int>(edits.size());
  for (const auto& e : edits) ++p.edits_by_kind[std::string(to_string(e.kind))];
  return {p.seg, p.info};
}

fs::path ReviewStore::approve(const std::string& page_id) {
  Page& p = page(page_id);
  std::lock_guard lock(p.mutex);
  const fs::path out = state_dir_ / (page_id + ".xml");
  {
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    f << pagexml::write_pagexml(p.seg, page_id + ".png");
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + out.string());
  }
  if (p.info.status != ReviewStatus::kApproved) {
    append_line(p.journal, json{{"approve", true}}.dump());
    p.info.status = ReviewStatus::kApproved;
  }
  return out;
}

ReviewStats ReviewStore::stats() const {
  ReviewStats s;
  for (EditKind k : kAllEditKinds) s.edits_by_kind[std::string(to_string(k))] = 0;
  for (const auto& [id, p] : pages_) {
    std::lock_guard lock(p->mutex);
    ++s.pages;
    if (p->info.status == ReviewStatus::kApproved) ++s.reviewed;
    if (p->info.edits > 0) ++s.edited;
    for (const auto& [k, n] : p->edits_by_kind) s.edits_by_kind[k] += n;
  }
  return s;
}

}  // namespace folio::review
