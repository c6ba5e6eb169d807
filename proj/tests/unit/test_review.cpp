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

#include <httplib.h>

#include <thread>

#include "common/error.hpp"
#include "page/page_json.hpp"
#include "pagexml/pagexml.hpp"
#include "review/review_server.hpp"
#include "review/review_store.hpp"
#include "support/fixtures.hpp"
#include "synth/generator.hpp"

using namespace folio;
using namespace folio::review;
using nlohmann::json;
using page::PageSegmentation;
using page::RegionType;

namespace {

// Two generated pages laid out the way `folio gen` writes them.
struct Workspace {
  fixtures::TempDir dir{"review"};
  std::filesystem::path images = dir / "book/binary";
  std::filesystem::path pagexml = dir / "book/truth";
  std::filesystem::path state = dir / "state";

  Workspace() {
    synth::BookOptions o;
    o.seed = 11;
    o.page.column_heading_prob = 1.0;
    for (int i = 1; i <= 2; ++i) synth::write_book_page(dir / "book", o, i);
  }
};

const page::Region& first_of(const PageSegmentation& s, RegionType t) {
  for (const auto& r : s.regions)
    if (r.kind == t) return r;
  FAIL("no region of the requested type");
  return s.regions.front();
}

EditCommand op(const json& j) { return edit_from_json(j); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

std::string xml_of(const PageSnapshot& s) { return pagexml::write_pagexml(s.seg, s.seg.page_id + ".png"); }

}  // namespace

TEST_CASE("edit commands parse and print") {
  for (const char* text :
       {R"({"op":"delete_region","id":"r0001"})", R"({"op":"split_region","id":"r0002","y":40})",
        R"({"op":"change_type","id":"r0003","type":"heading"})",
        R"({"op":"set_reading_order","order":["r0002","r0001"]})",
        R"({"op":"merge_regions","a":"r0001","b":"r0004"})"}) {
    const json j = json::parse(text);
    CHECK(to_json(edit_from_json(j)) == j);
  }
  CHECK(code_of([] { edit_from_json(json::parse(R"({"op":"rotate","id":"r1"})")); }) ==
        ErrorCode::kSchema);
  CHECK(code_of([] { edit_from_json(json::parse(R"({"op":"split_region","id":"r1"})")); }) ==
        ErrorCode::kSchema);
  CHECK(code_of([] { edit_from_json(json::parse(R"({"op":"change_type","id":"r1","type":"x"})")); }) ==
        ErrorCode::kSchema);
}

TEST_CASE("edit semantics") {
  const PageSegmentation base = synth::generate_page({}, 44, "p").truth;
  const page::Region& para = first_of(base, RegionType::kParagraph);

  SUBCASE("delete") {
    const EditCommand e = op({{"op", "delete_region"}, {"id", para.id}});
    const auto out = apply_edits(base, std::span(&e, 1));
    CHECK(out.find(para.id) == nullptr);
    CHECK(std::find(out.reading_order.begin(), out.reading_order.end(), para.id) ==
          out.reading_order.end());
    CHECK(out.regions.size() + 1 == base.regions.size());
  }
  SUBCASE("split between lines") {
    REQUIRE(para.lines.size() >= 2);
    const int y = (para.lines[0].bbox.y1 + para.lines[1].bbox.y0) / 2 + 1;
    const EditCommand e = op({{"op", "split_region"}, {"id", para.id}, {"y", y}});
    const auto out = apply_edits(base, std::span(&e, 1));
    const Box upper = out.find(para.id)->boundary.bbox();
    const std::string lower_id = page::next_free_region_id(base);
    REQUIRE(out.find(lower_id) != nullptr);
    const Box lower = out.find(lower_id)->boundary.bbox();
    const Box whole = para.boundary.bbox();
    CHECK(upper.y0 == whole.y0);
    CHECK(upper.y1 == y - 1);
    CHECK(lower.y0 == y);
    CHECK(lower.y1 == whole.y1);
    CHECK(out.find(para.id)->lines.size() == 1);
    CHECK(out.find(lower_id)->lines.size() == para.lines.size() - 1);
    const auto pos = std::find(out.reading_order.begin(), out.reading_order.end(), para.id);
    REQUIRE(pos + 1 != out.reading_order.end());
    CHECK(*(pos + 1) == lower_id);
  }
  SUBCASE("retype to image leaves the reading order") {
    const EditCommand e = op({{"op", "change_type"}, {"id", para.id}, {"type", "image"}});
    const auto out = apply_edits(base, std::span(&e, 1));
    CHECK(out.find(para.id)->kind == RegionType::kImage);
    CHECK(out.find(para.id)->lines.empty());
    CHECK(std::find(out.reading_order.begin(), out.reading_order.end(), para.id) ==
          out.reading_order.end());
    const EditCommand back = op({{"op", "change_type"}, {"id", para.id}, {"type", "paragraph"}});
    const auto again = apply_edits(out, std::span(&back, 1));
    CHECK(again.reading_order.back() == para.id);
  }
  SUBCASE("reading order must list every text region") {
    std::vector<std::string> reversed(base.reading_order.rbegin(), base.reading_order.rend());
    const EditCommand ok = op({{"op", "set_reading_order"}, {"order", reversed}});
    CHECK(apply_edits(base, std::span(&ok, 1)).reading_order == reversed);
    reversed.pop_back();
    const EditCommand short_order = op({{"op", "set_reading_order"}, {"order", reversed}});
    CHECK(code_of([&] { apply_edits(base, std::span(&short_order, 1)); }) ==
          ErrorCode::kInvalidSegmentation);
  }
  SUBCASE("merge") {
    const std::string a = base.reading_order.at(1);
    const std::string b = base.reading_order.at(2);
    const EditCommand e = op({{"op", "merge_regions"}, {"a", a}, {"b", b}});
    const auto out = apply_edits(base, std::span(&e, 1));
    CHECK(out.find(b) == nullptr);
    CHECK(out.find(a)->boundary.bbox() ==
          base.find(a)->boundary.bbox().unite(base.find(b)->boundary.bbox()));
    CHECK(page::validate(out).empty());
  }
  SUBCASE("unknown ids") {
    const EditCommand e = op({{"op", "delete_region"}, {"id", "r9999"}});
    CHECK(code_of([&] { apply_edits(base, std::span(&e, 1)); }) == ErrorCode::kNotFound);
  }
}

TEST_CASE("store: revisions, conflicts, journal replay") {
  Workspace ws;
  std::string final_xml;
  int final_revision = 0;
  {
    ReviewStore store(ws.images, ws.pagexml, ws.state);
    const auto pages = store.pages();
    REQUIRE(pages.size() == 2);
    CHECK(pages[0].id == "p0001");
    CHECK(pages[0].revision == 0);
    CHECK(pages[0].status == ReviewStatus::kUnreviewed);

    const PageSnapshot s0 = store.snapshot("p0001");
    const std::string para = first_of(s0.seg, RegionType::kParagraph).id;
    const EditCommand del = op({{"op", "delete_region"}, {"id", para}});
    const PageSnapshot s1 = store.apply("p0001", 0, std::span(&del, 1));
    CHECK(s1.info.revision == 1);

    // Stale token: rejected, nothing changes.
    const EditCommand retype =
        op({{"op", "change_type"}, {"id", s1.seg.reading_order.front()}, {"type", "heading"}});
    CHECK(code_of([&] { store.apply("p0001", 0, std::span(&retype, 1)); }) == ErrorCode::kConflict);
    CHECK(xml_of(store.snapshot("p0001")) == xml_of(s1));

    // Invalid batch: rejected atomically.
    const std::vector<EditCommand> bad = {retype, op({{"op", "delete_region"}, {"id", "r9999"}})};
    CHECK(code_of([&] { store.apply("p0001", 1, bad); }) == ErrorCode::kNotFound);
    CHECK(store.snapshot("p0001").info.revision == 1);

    store.apply("p0001", 1, std::span(&retype, 1));
    const auto approved = store.approve("p0001");
    CHECK(approved == ws.state / "p0001.xml");
    const auto on_disk = pagexml::read_pagexml(fixtures::read_file(approved));
    CHECK(page::validate(on_disk.seg).empty());
    CHECK(on_disk.seg == store.snapshot("p0001").seg);

    const ReviewStats stats = store.stats();
    CHECK(stats.pages == 2);
    CHECK(stats.reviewed == 1);
    CHECK(stats.edited == 1);
    CHECK(stats.edits_by_kind.at("delete_region") == 1);
    CHECK(stats.edits_by_kind.at("change_type") == 1);
    CHECK(stats.edits_by_kind.at("merge_regions") == 0);

    CHECK(code_of([&] { store.snapshot("p0099"); }) == ErrorCode::kNotFound);
    CHECK(store.image_png("p0002").size() > 8);
    final_xml = xml_of(store.snapshot("p0001"));
    final_revision = store.snapshot("p0001").info.revision;
  }
  ReviewStore replayed(ws.images, ws.pagexml, ws.state);
  const PageSnapshot s = replayed.snapshot("p0001");
  CHECK(xml_of(s) == final_xml);
  CHECK(s.info.revision == final_revision);
  CHECK(s.info.status == ReviewStatus::kApproved);
  CHECK(replayed.stats().edited == 1);
  CHECK(replayed.snapshot("p0002").info.revision == 0);
}

TEST_CASE("http api") {
  Workspace ws;
  fixtures::write_file(ws.dir / "ui/index.html", "<html>review</html>");
  ReviewStore store(ws.images, ws.pagexml, ws.state);
  ReviewServer server(store, ws.dir / "ui");
  const int port = server.bind("127.0.0.1", 0);
  std::thread thread([&] { server.run(); });
  httplib::Client cli("127.0.0.1", port);

  SUBCASE("reads") {
    auto pages = cli.Get("/pages");
    REQUIRE(pages);
    CHECK(pages->status == 200);
    const json pj = json::parse(pages->body);
    CHECK(pj["pages"].size() == 2);
    CHECK(pj["pages"][0]["status"] == "unreviewed");

    auto img = cli.Get("/pages/p0001/image");
    REQUIRE(img);
    CHECK(img->status == 200);
    CHECK(img->get_header_value("Content-Type") == "image/png");
    CHECK(img->body.substr(1, 3) == "PNG");

    auto seg = cli.Get("/pages/p0001/segmentation");
    REQUIRE(seg);
    const json sj = json::parse(seg->body);
    CHECK(sj["revision"] == 0);
    CHECK(page::segmentation_from_json(sj) == store.snapshot("p0001").seg);

    auto missing = cli.Get("/pages/nope/segmentation");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body)["error"] == "NotFound");

    auto ui = cli.Get("/ui/index.html");
    REQUIRE(ui);
    CHECK(ui->body == "<html>review</html>");
  }

  SUBCASE("scripted review of one page") {
    const PageSegmentation s0 = store.snapshot("p0001").seg;
    const auto& para = first_of(s0, RegionType::kParagraph);
    REQUIRE(para.lines.size() >= 2);
    const int y = (para.lines[0].bbox.y1 + para.lines[1].bbox.y0) / 2 + 1;
    const std::string heading = first_of(s0, RegionType::kHeading).id;

    auto post = [&](int revision, const json& edits) {
      return cli.Post("/pages/p0001/edits", json{{"revision", revision}, {"edits", edits}}.dump(),
                      "application/json");
    };
    auto r1 = post(0, json::array({{{"op", "split_region"}, {"id", para.id}, {"y", y}},
                                   {{"op", "change_type"}, {"id", heading}, {"type", "paragraph"}}}));
    REQUIRE(r1);
    CHECK(r1->status == 200);
    json j1 = json::parse(r1->body);
    CHECK(j1["revision"] == 1);

    // Stale token.
    const std::string before = cli.Get("/pages/p0001/segmentation")->body;
    auto stale = post(0, json::array({{{"op", "delete_region"}, {"id", para.id}}}));
    REQUIRE(stale);
    CHECK(stale->status == 409);
    CHECK(cli.Get("/pages/p0001/segmentation")->body == before);

    // Invariant violation: an order that drops a text region.
    std::vector<std::string> order = j1["reading_order"].get<std::vector<std::string>>();
    auto invalid = post(1, json::array({{{"op", "set_reading_order"},
                                         {"order", std::vector<std::string>(order.begin() + 1, order.end())}}}));
    REQUIRE(invalid);
    CHECK(invalid->status == 422);
    CHECK(cli.Get("/pages/p0001/segmentation")->body == before);

    auto unknown = post(1, json::array({{{"op", "delete_region"}, {"id", "r9999"}}}));
    REQUIRE(unknown);
    CHECK(unknown->status == 404);

    auto malformed = cli.Post("/pages/p0001/edits", "{\"edits\": 3}", "application/json");
    REQUIRE(malformed);
    CHECK(malformed->status == 400);

    std::reverse(order.begin(), order.end());
    auto r2 = post(1, json::array({{{"op", "delete_region"}, {"id", order.back()}},
                                   {{"op", "set_reading_order"},
                                    {"order", std::vector<std::string>(order.begin(), order.end() - 1)}}}));
    REQUIRE(r2);
    CHECK(r2->status == 200);

    auto approve = cli.Post("/pages/p0001/approve", "", "application/json");
    REQUIRE(approve);
    CHECK(approve->status == 200);
    const auto on_disk = pagexml::read_pagexml(fixtures::read_file(ws.state / "p0001.xml"));
    CHECK(page::validate(on_disk.seg).empty());

    auto stats = cli.Get("/stats");
    REQUIRE(stats);
    const json st = json::parse(stats->body);
    CHECK(st["reviewed"] == 1);
    CHECK(st["edited"] == 1);
    CHECK(st["unedited_fraction"] == 0.5);
    CHECK(st["edits_by_type"]["split_region"] == 1);
    CHECK(st["edits_by_type"]["delete_region"] == 1);

    const std::string served = cli.Get("/pages/p0001/segmentation")->body;
    ReviewStore replayed(ws.images, ws.pagexml, ws.dir / "state");
    CHECK(xml_of(replayed.snapshot("p0001")) == xml_of(store.snapshot("p0001")));
    CHECK(fixtures::read_file(ws.state / "p0001.xml") == xml_of(replayed.snapshot("p0001")));
    CHECK(json::parse(served)["revision"] == 2);
  }

  server.stop();
  thread.join();
}
