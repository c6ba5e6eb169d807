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

#include <string>
#include <string_view>
#include <vector>

#include "page/page_model.hpp"

namespace folio::pagexml {

inline constexpr std::string_view kNamespace =
    "http://schema.primaresearch.org/PAGE/gts/pagecontent/2013-07-15";

// Serializes a valid segmentation as a PAGE 2013-07-15 document. Output is
// a pure function of the inputs. Throws InvalidSegmentation if the page
// does not validate.
std::string write_pagexml(const page::PageSegmentation& seg,
                          const std::string& image_filename);

struct ReadResult {
  page::PageSegmentation seg;
  std::string image_filename;
  std::vector<std::string> warnings;
  // Set when the document had no ReadingOrder and one was derived.
  bool reading_order_reconstructed = false;
};

// Throws ParseError for malformed XML and SchemaError for structurally
// unusable documents. Unknown region kinds load as paragraphs.
ReadResult read_pagexml(std::string_view xml);

}  // namespace folio::pagexml
