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

#include "segmentation/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>

#include "common/error.hpp"

namespace folio {

using nlohmann::json;

void WorkbenchConfig::validate() const {
  layout.validate();
  segmentation.validate();
  binarize.validate();
  if (line_height < 8) {
    throw Error(ErrorCode::kInvalidArgument, "line_height must be at least 8");
  }
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

// Misspelled keys would otherwise fall back to defaults without notice.
void only(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; })) {
      throw Error(ErrorCode::kInvalidArgument, "unknown config key " + where + "." + k);
    }
  }
}

}  // namespace

WorkbenchConfig config_from_json(const json& j) {
  WorkbenchConfig cfg;
  try {
    only(j, {"layout", "segmentation", "binarize", "extraction"}, "config");
    if (j.contains("layout")) {
      only(j["layout"], {"paragraph", "heading", "image", "page-number"}, "layout");
      for (auto t : page::kAllRegionTypes) {
        const std::string name(page::to_string(t));
        if (!j["layout"].contains(name)) continue;
        const json& jr = j["layout"][name];
        only(jr, {"zone", "min_area_frac", "max_area_frac"}, "layout." + name);
        page::TypeRule& rule = cfg.layout.rule(t);
        if (jr.contains("zone")) {
          const auto z = jr.at("zone").get<std::vector<double>>();
          if (z.size() != 4) throw Error(ErrorCode::kInvalidArgument, name + ".zone needs 4 numbers");
          rule.allowed_zone = {z[0], z[1], z[2], z[3]};
        }
        read(jr, "min_area_frac", rule.min_area_frac);
        read(jr, "max_area_frac", rule.max_area_frac);
      }
    }
    if (j.contains("segmentation")) {
      const json& js = j["segmentation"];
      only(js, {"text_merge_se", "image_min_area_frac", "image_density_max", "min_region_area_px",
                "line_valley_frac", "initial_span_lines", "heading"},
           "segmentation");
      auto& p = cfg.segmentation;
      read(js, "text_merge_se", p.text_merge_se);
      read(js, "image_min_area_frac", p.image_min_area_frac);
      read(js, "image_density_max", p.image_density_max);
      read(js, "min_region_area_px", p.min_region_area_px);
      read(js, "line_valley_frac", p.line_valley_frac);
      read(js, "initial_span_lines", p.initial_span_lines);
      if (js.contains("heading")) {
        only(js["heading"], {"area_ratio_threshold", "require_height_above_mean"},
             "segmentation.heading");
        read(js["heading"], "area_ratio_threshold", p.heading.area_ratio_threshold);
        read(js["heading"], "require_height_above_mean", p.heading.require_height_above_mean);
      }
    }
    if (j.contains("binarize")) {
      only(j["binarize"], {"window", "k", "r"}, "binarize");
      read(j["binarize"], "window", cfg.binarize.window);
      read(j["binarize"], "k", cfg.binarize.k);
      read(j["binarize"], "r", cfg.binarize.r);
    }
    if (j.contains("extraction")) only(j["extraction"], {"line_height"}, "extraction");
    if (j.contains("extraction")) read(j["extraction"], "line_height", cfg.line_height);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const WorkbenchConfig& cfg) {
  json layout;
  for (auto t : page::kAllRegionTypes) {
    const auto& r = cfg.layout.rule(t);
    layout[std::string(page::to_string(t))] = {
        {"zone", {r.allowed_zone.x0f, r.allowed_zone.y0f, r.allowed_zone.x1f, r.allowed_zone.y1f}},
        {"min_area_frac", r.min_area_frac},
        {"max_area_frac", r.max_area_frac}};
  }
  const auto& p = cfg.segmentation;
  return {{"layout", layout},
          {"segmentation",
           {{"text_merge_se", p.text_merge_se},
            {"image_min_area_frac", p.image_min_area_frac},
            {"image_density_max", p.image_density_max},
            {"min_region_area_px", p.min_region_area_px},
            {"line_valley_frac", p.line_valley_frac},
            {"initial_span_lines", p.initial_span_lines},
            {"heading",
             {{"area_ratio_threshold", p.heading.area_ratio_threshold},
              {"require_height_above_mean", p.heading.require_height_above_mean}}}}},
          {"binarize", {{"window", cfg.binarize.window}, {"k", cfg.binarize.k}, {"r", cfg.binarize.r}}},
          {"extraction", {{"line_height", cfg.line_height}}}};
}

WorkbenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, "config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace folio
