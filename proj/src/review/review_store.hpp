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
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "page/page_model.hpp"

namespace folio::review {

enum class EditKind {
  kDeleteRegion,
  kSplitRegion,
  kChangeType,
  kSetReadingOrder,
  kMergeRegions,
};

// "delete_region", "split_region", "change_type", "set_reading_order",
// "merge_regions".
std::string_view to_string(EditKind kind);

struct EditCommand {
  EditKind kind = EditKind::kDeleteRegion;
  std::string id;                   // delete, split, change_type; merge: a
  std::string other;                // merge: b
  int y = 0;                        // split: first row of the lower part
  page::RegionType type = page::RegionType::kParagraph;  // change_type
  std::vector<std::string> order;   // set_reading_order
};

// Throws SchemaError on malformed commands.
EditCommand edit_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EditCommand& edit);

// Applies the batch to a copy, in order. Throws NotFound for unknown ids and
// InvalidSegmentation if any step is impossible or the result does not
// validate.
page::PageSegmentation apply_edits(const page::PageSegmentation& seg,
                                   std::span<const EditCommand> edits);

enum class ReviewStatus { kUnreviewed, kApproved };
std::string_view to_string(ReviewStatus status);

struct PageInfo {
  std::string id;
  ReviewStatus status = ReviewStatus::kUnreviewed;
  int revision = 0;
  int edits = 0;  // applied commands
};

struct PageSnapshot {
  page::PageSegmentation seg;
  PageInfo info;
};

struct ReviewStats {
  int pages = 0;
  int reviewed = 0;
  int edited = 0;
  std::map<std::string, int> edits_by_kind;
};

// File-backed review state. Initial segmentations come from
// <pagexml_dir>/<id>.xml and page images from <image_dir>/<id>.png. Every
// accepted batch and approval is appended to <state_dir>/<id>.journal.jsonl;
// approval writes <state_dir>/<id>.xml. Opening a store replays existing
// journals.
class ReviewStore {
 public:
  ReviewStore(std::filesystem::path image_dir, std::filesystem::path pagexml_dir,
              std::filesystem::path state_dir);
  ~ReviewStore();
  ReviewStore(const ReviewStore&) = delete;
  ReviewStore& operator=(const ReviewStore&) = delete;

  std::vector<PageInfo> pages() const;
  // The following throw NotFound for unknown pages.
  PageSnapshot snapshot(const std::string& page_id) const;
  std::vector<std::uint8_t> image_png(const std::string& page_id) const;
  // Throws Conflict if `revision` is not current; nothing changes then.
  PageSnapshot apply(const std::string& page_id, int revision,
                     std::span<const EditCommand> edits);
  std::filesystem::path approve(const std::string& page_id);
  ReviewStats stats() const;

 private:
  struct Page;
  Page& page(const std::string& page_id) const;

  std::filesystem::path image_dir_;
  std::filesystem::path state_dir_;
  std::map<std::string, std::unique_ptr<Page>> pages_;
};

}  // namespace folio::review
