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

#include "pagexml/pagexml.hpp"

#include <expat.h>

#include <exception>

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "segmentation/segmentation.hpp"

namespace folio::pagexml {

using page::PageSegmentation;
using page::Polygon;
using page::Region;
using page::RegionType;

namespace {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string points_attr(const Polygon& poly) {
  std::string out;
  for (const auto& p : poly.points) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p.x) + ',' + std::to_string(p.y);
  }
  return out;
}

std::string line_id(const std::string& region_id, int index) {
  std::string idx = std::to_string(index);
  while (idx.size() < 3) idx = "0" + idx;
  return region_id + "_l" + idx;
}

}  // namespace

std::string write_pagexml(const PageSegmentation& seg,
                          const std::string& image_filename) {
  const auto violations = page::validate(seg);
  if (!violations.empty()) {
    throw Error(ErrorCode::kInvalidSegmentation,
                "cannot write PageXML for " + seg.page_id + ": " +
                    violations.front().message);
  }
  std::ostringstream x;
  x << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  x << "<PcGts xmlns=\"" << kNamespace
    << "\" xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\""
    << " xsi:schemaLocation=\"" << kNamespace << ' ' << kNamespace
    << "/pagecontent.xsd\" pcGtsId=\"" << escape(seg.page_id) << "\">\n";
  x << "  <Metadata>\n"
    << "    <Creator>folio</Creator>\n"
    << "    <Created>1970-01-01T00:00:00</Created>\n"
    << "    <LastChange>1970-01-01T00:00:00</LastChange>\n"
    << "  </Metadata>\n";
  x << "  <Page imageFilename=\"" << escape(image_filename) << "\" imageWidth=\""
    << seg.width << "\" imageHeight=\"" << seg.height << "\">\n";
  if (!seg.reading_order.empty()) {
    x << "    <ReadingOrder>\n      <OrderedGroup id=\"ro0\">\n";
    for (std::size_t i = 0; i < seg.reading_order.size(); ++i) {
      x << "        <RegionRefIndexed index=\"" << i << "\" regionRef=\""
        << escape(seg.reading_order[i]) << "\"/>\n";
    }
    x << "      </OrderedGroup>\n    </ReadingOrder>\n";
  }
  for (const Region& r : seg.regions) {
    if (r.kind == RegionType::kImage) {
      x << "    <ImageRegion id=\"" << escape(r.id) << "\">\n"
        << "      <Coords points=\"" << points_attr(r.boundary) << "\"/>\n"
        << "    </ImageRegion>\n";
      continue;
    }
    x << "    <TextRegion id=\"" << escape(r.id) << "\" type=\""
      << page::to_string(r.kind) << "\">\n"
      << "      <Coords points=\"" << points_attr(r.boundary) << "\"/>\n";
    for (const auto& l : r.lines) {
      x << "      <TextLine id=\"" << escape(line_id(r.id, l.index)) << "\">\n"
        << "        <Coords points=\"" << points_attr(Polygon::rect(l.bbox))
        << "\"/>\n";
      if (l.text) {
        x << "        <TextEquiv>\n          <Unicode>" << escape(*l.text)
          << "</Unicode>\n        </TextEquiv>\n";
      }
      x << "      </TextLine>\n";
    }
    x << "    </TextRegion>\n";
  }
  x << "  </Page>\n</PcGts>\n";
  return x.str();
}

namespace {

class Reader {
 public:
  explicit Reader(ReadResult& result) : r_(result) {}

  void start(std::string_view name, const XML_Char** attrs) {
    std::map<std::string, std::string, std::less<>> a;
    for (int i = 0; attrs[i]; i += 2) a.emplace(local(attrs[i]), attrs[i + 1]);
    stack_.push_back(std::string(name));
    if (ignore_depth_ != 0) return;

    if (name == "PcGts") {
      take(a, "pcGtsId", r_.seg.page_id);
      known(name, a, {"pcGtsId", "schemaLocation"});
    } else if (name == "Page") {
      seen_page_ = true;
      take(a, "imageFilename", r_.image_filename);
      r_.seg.width = int_attr(a, "imageWidth");
      r_.seg.height = int_attr(a, "imageHeight");
      known(name, a, {"imageFilename", "imageWidth", "imageHeight"});
    } else if (name == "TextRegion" || name == "ImageRegion") {
      if (!inside("Page") || region_) {
        warn("nested or misplaced " + std::string(name) + " ignored");
        ignore_depth_ = stack_.size();
        return;
      }
      region_ = std::make_unique<Region>();
      take(a, "id", region_->id);
      if (name == "ImageRegion") {
        region_->kind = RegionType::kImage;
        known(name, a, {"id"});
      } else {
        std::string type;
        take(a, "type", type);
        auto kind = page::region_type_from_string(type);
        if (!kind || *kind == RegionType::kImage) {
          warn("TextRegion " + region_->id + " has unsupported type '" + type +
               "', loaded as paragraph");
          kind = RegionType::kParagraph;
        }
        region_->kind = *kind;
        known(name, a, {"id", "type"});
      }
    } else if (name == "TextLine") {
      if (!region_) return;
      line_ = std::make_unique<page::TextLine>();
      known(name, a, {"id"});
    } else if (name == "Coords") {
      coords_.clear();
      auto it = a.find("points");
      if (it != a.end()) coords_ = parse_points(it->second);
      known(name, a, {"points"});
    } else if (name == "Point") {
      if (parent_is("Coords")) coords_.push_back({int_attr(a, "x"), int_attr(a, "y")});
    } else if (name == "Unicode") {
      text_.clear();
    } else if (name == "RegionRefIndexed" || name == "RegionRef") {
      std::string ref;
      take(a, "regionRef", ref);
      int index = name == "RegionRefIndexed" ? int_attr(a, "index")
                                             : static_cast<int>(order_.size());
      order_.emplace_back(std::make_pair(group_base_, index), ref);
    } else if (name == "ReadingOrder") {
      seen_order_ = true;
    } else if (name == "OrderedGroup" || name == "UnorderedGroup") {
      group_base_ = static_cast<int>(order_.size());
    } else if (is_known_silent(name)) {
      // metadata and text-equivalence containers
    } else {
      warn("unknown element <" + std::string(name) + "> ignored");
      if (name.ends_with("Region")) ignore_depth_ = stack_.size();
    }
  }

  void end(std::string_view name) {
    if (ignore_depth_ != 0) {
      if (ignore_depth_ == stack_.size()) ignore_depth_ = 0;
      stack_.pop_back();
      return;
    }
    if (name == "Coords" && (line_ || region_)) {
      if (line_ ? coords_.empty() : coords_.size() < 3) {
        throw Error(ErrorCode::kSchema, "Coords with too few points");
      }
      if (line_) {
        Box b;
        for (const auto& p : coords_) b.expand(p.x, p.y);
        line_->bbox = b;
      } else if (region_) {
        region_->boundary.points = coords_;
      }
    } else if (name == "Unicode") {
      if (line_ && parent_is("TextEquiv") && parent_is("TextLine", 1)) line_->text = text_;
    } else if (name == "TextLine" && line_ && region_) {
      line_->index = static_cast<int>(region_->lines.size());
      region_->lines.push_back(std::move(*line_));
      line_.reset();
    } else if ((name == "TextRegion" || name == "ImageRegion") && region_) {
      if (region_->boundary.points.empty()) {
        throw Error(ErrorCode::kSchema, "region " + region_->id + " has no Coords");
      }
      r_.seg.regions.push_back(std::move(*region_));
      region_.reset();
    }
    stack_.pop_back();
  }

  void text(std::string_view s) {
    if (!stack_.empty() && stack_.back() == "Unicode") text_ += s;
  }

  void finish() {
    if (!seen_page_) throw Error(ErrorCode::kSchema, "document has no Page element");
    if (r_.seg.width < 1 || r_.seg.height < 1) {
      throw Error(ErrorCode::kSchema, "Page lacks positive imageWidth/imageHeight");
    }
    if (!seen_order_) {
      r_.reading_order_reconstructed = true;
      if (std::any_of(r_.seg.regions.begin(), r_.seg.regions.end(),
                      [](const Region& g) { return page::is_text(g.kind); })) {
        warn("no ReadingOrder element; reading order reconstructed");
      }
      r_.seg = seg::assign_reading_order(r_.seg);
      return;
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, id] : order_) r_.seg.reading_order.push_back(id);
  }

 private:
  static std::string_view local(std::string_view qname) {
    const auto sep = qname.rfind(' ');
    return sep == std::string_view::npos ? qname : qname.substr(sep + 1);
  }

  static bool is_known_silent(std::string_view name) {
    static const std::set<std::string_view> names = {
        "Metadata", "Creator", "Created", "LastChange", "Comments",
        "TextEquiv", "PlainText", "TextStyle", "MetadataItem", "Labels", "Label",
        "UserDefined", "UserAttribute", "Baseline", "Word", "Glyph",
        "AlternativeImage", "Border", "PrintSpace"};
    return names.contains(name);
  }

  bool inside(std::string_view name) const {
    return std::find(stack_.begin(), stack_.end(), name) != stack_.end();
  }

  // Parent of the current element (or of an ancestor `up` levels higher).
  bool parent_is(std::string_view name, std::size_t up = 0) const {
    return stack_.size() >= 2 + up && stack_[stack_.size() - 2 - up] == name;
  }

  void warn(std::string msg) { r_.warnings.push_back(std::move(msg)); }

  template <typename Map>
  void known(std::string_view element, const Map& a,
             std::initializer_list<std::string_view> names) {
    for (const auto& [k, v] : a) {
      if (std::find(names.begin(), names.end(), k) != names.end()) continue;
      const std::string key = std::string(element) + "@" + k;
      if (warned_attrs_.insert(key).second) warn("unknown attribute " + key + " ignored");
    }
  }

  template <typename Map>
  static void take(const Map& a, std::string_view key, std::string& out) {
    auto it = a.find(key);
    if (it != a.end()) out = it->second;
  }

  template <typename Map>
  static int int_attr(const Map& a, std::string_view key) {
    auto it = a.find(key);
    if (it == a.end()) {
      throw Error(ErrorCode::kSchema, "missing attribute " + std::string(key));
    }
    return parse_int(it->second);
  }

  static int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kSchema, "bad integer '" + std::string(s) + "'");
    }
    return v;
  }

  static std::vector<Point> parse_points(std::string_view s) {
    std::vector<Point> pts;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && s[i] == ' ') ++i;
      if (i >= s.size()) break;
      std::size_t j = s.find(' ', i);
      if (j == std::string_view::npos) j = s.size();
      const std::string_view pair = s.substr(i, j - i);
      const auto comma = pair.find(',');
      if (comma == std::string_view::npos) {
        throw Error(ErrorCode::kSchema, "bad Coords point '" + std::string(pair) + "'");
      }
      pts.push_back({parse_int(pair.substr(0, comma)), parse_int(pair.substr(comma + 1))});
      i = j;
    }
    return pts;
  }

  ReadResult& r_;
  std::vector<std::string> stack_;
  std::unique_ptr<Region> region_;
  std::unique_ptr<page::TextLine> line_;
  std::vector<Point> coords_;
  std::string text_;
  std::vector<std::pair<std::pair<int, int>, std::string>> order_;
  int group_base_ = 0;
  std::size_t ignore_depth_ = 0;
  bool seen_page_ = false;
  bool seen_order_ = false;
  std::set<std::string> warned_attrs_;
};

// Callbacks never let exceptions cross expat's C frames; the first failure
// stops the parser and is rethrown once XML_Parse returns.
struct Context {
  Reader* reader;
  XML_Parser parser;
  std::exception_ptr error;

  template <typename Fn>
  void guard(Fn&& fn) {
    if (error) return;
    try {
      fn();
    } catch (...) {
      error = std::current_exception();
      XML_StopParser(parser, XML_FALSE);
    }
  }
};

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  const auto sep = n.rfind(' ');
  return sep == std::string_view::npos ? n : n.substr(sep + 1);
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

ReadResult read_pagexml(std::string_view xml) {
  ReadResult result;
  Reader reader(result);
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(
      XML_ParserCreateNS("UTF-8", ' '));
  Context ctx{&reader, parser.get(), nullptr};
  XML_SetUserData(parser.get(), &ctx);
  XML_SetElementHandler(
      parser.get(),
      [](void* ud, const XML_Char* name, const XML_Char** attrs) {
        auto* c = static_cast<Context*>(ud);
        c->guard([&] { c->reader->start(local_name(name), attrs); });
      },
      [](void* ud, const XML_Char* name) {
        auto* c = static_cast<Context*>(ud);
        c->guard([&] { c->reader->end(local_name(name)); });
      });
  XML_SetCharacterDataHandler(parser.get(), [](void* ud, const XML_Char* s, int len) {
    auto* c = static_cast<Context*>(ud);
    c->guard([&] { c->reader->text(std::string_view(s, static_cast<std::size_t>(len))); });
  });

  const auto status =
      XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE);
  if (ctx.error) std::rethrow_exception(ctx.error);
  if (status == XML_STATUS_ERROR) {
    throw Error(ErrorCode::kParse,
                std::string("malformed XML at line ") +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                    XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  reader.finish();
  return result;
}

}  // namespace folio::pagexml
