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

#include <json.hpp>

#include "page/page_model.hpp"

namespace folio::page {

// JSON mirror of the PageXML model:
// {"page_id", "width", "height",
//  "regions": [{"id", "type", "points": [[x,y],...],
//               "lines": [{"index", "bbox": [x0,y0,x1,y1], "text"?}]}],
//  "reading_order": [ids]}
nlohmann::json to_json(const PageSegmentation& seg);
// Throws SchemaError on missing fields or unknown region types.
PageSegmentation segmentation_from_json(const nlohmann::json& j);

}  // namespace folio::page
