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

#include <json.hpp>

#include "imaging/image.hpp"
#include "page/page_model.hpp"
#include "segmentation/segmentation.hpp"

namespace folio {

// Everything a run is parameterized by; loaded from one JSON file whose
// layout is described in docs/layout-config.schema.json. Absent keys keep
// their defaults.
struct WorkbenchConfig {
  page::LayoutConfig layout = page::default_layout_config();
  seg::SegmentationParams segmentation;
  imaging::BinarizeConfig binarize;
  int line_height = 48;

  void validate() const;
};

WorkbenchConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const WorkbenchConfig& cfg);
WorkbenchConfig load_config(const std::filesystem::path& path);

}  // namespace folio
