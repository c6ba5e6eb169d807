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

#include "page/page_json.hpp"

#include "common/error.hpp"

namespace folio::page {

using nlohmann::json;

json to_json(const PageSegmentation& seg) {
  json regions = json::array();
  for (const Region& r : seg.regions) {
    json points = json::array();
    for (const Point& p : r.boundary.points) points.push_back({p.x, p.y});
    json lines = json::array();
    for (const TextLine& l : r.lines) {
      json jl = {{"index", l.index},
                 {"bbox", {l.bbox.x0, l.bbox.y0, l.bbox.x1, l.bbox.y1}}};
      if (l.text) jl["text"] = *l.text;
      lines.push_back(std::move(jl));
    }
    regions.push_back({{"id", r.id},
                       {"type", std::string(to_string(r.kind))},
                       {"points", std::move(points)},
                       {"lines", std::move(lines)}});
  }
  return {{"page_id", seg.page_id},
          {"width", seg.width},
          {"height", seg.height},
          {"regions", std::move(regions)},
          {"reading_order", seg.reading_order}};
}

PageSegmentation segmentation_from_json(const json& j) {
  try {
    PageSegmentation seg;
    seg.page_id = j.at("page_id").get<std::string>();
    seg.width = j.at("width").get<int>();
    seg.height = j.at("height").get<int>();
    for (const auto& jr : j.at("regions")) {
      Region r;
      r.id = jr.at("id").get<std::string>();
      const auto type = jr.at("type").get<std::string>();
      auto kind = region_type_from_string(type);
      if (!kind) throw Error(ErrorCode::kSchema, "unknown region type '" + type + "'");
      r.kind = *kind;
      for (const auto& p : jr.at("points")) r.boundary.points.push_back({p.at(0), p.at(1)});
      if (jr.contains("lines")) {
        for (const auto& jl : jr.at("lines")) {
          TextLine l;
          l.index = jl.at("index").get<int>();
          const auto& b = jl.at("bbox");
          l.bbox = {b.at(0), b.at(1), b.at(2), b.at(3)};
          if (jl.contains("text")) l.text = jl.at("text").get<std::string>();
          r.lines.push_back(std::move(l));
        }
      }
      seg.regions.push_back(std::move(r));
    }
    seg.reading_order = j.at("reading_order").get<std::vector<std::string>>();
    return seg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("bad segmentation JSON: ") + e.what());
  }
}

}  // namespace folio::page
