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

#include "review/review_server.hpp"

#include <httplib.h>

#include "common/error.hpp"
#include "common/log.hpp"
#include "page/page_json.hpp"

namespace folio::review {

using nlohmann::json;

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kInvalidSegmentation: return 422;
    case ErrorCode::kSchema:
    case ErrorCode::kParse:
    case ErrorCode::kInvalidArgument: return 400;
    default: return 500;
  }
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message) {
  send_json(res, {{"error", code}, {"message", message}}, status);
}

json snapshot_json(const PageSnapshot& s) {
  json j = page::to_json(s.seg);
  j["revision"] = s.info.revision;
  j["status"] = std::string(to_string(s.info.status));
  return j;
}

// Runs a handler, mapping library errors to HTTP statuses.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    send_error(res, http_status(e.code()), error_code_name(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "SchemaError", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "InternalError", e.what());
  }
}

}  // namespace

struct ReviewServer::Impl {
  ReviewStore& store;
  httplib::Server server;

  explicit Impl(ReviewStore& s) : store(s) {}
};

ReviewServer::ReviewServer(ReviewStore& store, std::optional<std::filesystem::path> ui_dir)
    : impl_(std::make_unique<Impl>(store)) {
  auto& srv = impl_->server;
  ReviewStore* st = &store;

  srv.Get("/pages", [st](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      json pages = json::array();
      for (const auto& p : st->pages()) {
        pages.push_back({{"id", p.id},
                         {"status", std::string(to_string(p.status))},
                         {"revision", p.revision},
                         {"edits", p.edits}});
      }
      send_json(res, {{"pages", pages}});
    });
  });

  srv.Get(R"(/pages/([^/]+)/image)", [st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto png = st->image_png(req.matches[1]);
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
  });

  srv.Get(R"(/pages/([^/]+)/segmentation)",
          [st](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] { send_json(res, snapshot_json(st->snapshot(req.matches[1]))); });
          });

  srv.Post(R"(/pages/([^/]+)/edits)", [st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = json::parse(req.body);
      if (!body.is_object() || !body.contains("revision") || !body.contains("edits") ||
          !body.at("edits").is_array()) {
        throw Error(ErrorCode::kSchema, "body must be {\"revision\": n, \"edits\": [...]}");
      }
      std::vector<EditCommand> edits;
      for (const auto& je : body.at("edits")) edits.push_back(edit_from_json(je));
      send_json(res, snapshot_json(st->apply(req.matches[1], body.at("revision").get<int>(), edits)));
    });
  });

  srv.Post(R"(/pages/([^/]+)/approve)", [st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      const auto path = st->approve(id);
      send_json(res, {{"id", id}, {"status", "approved"}, {"pagexml", path.filename().string()}});
    });
  });

  srv.Get("/stats", [st](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      const ReviewStats s = st->stats();
      send_json(res, {{"pages", s.pages},
                      {"reviewed", s.reviewed},
                      {"edited", s.edited},
                      {"unedited_fraction",
                       s.pages > 0 ? static_cast<double>(s.pages - s.edited) / s.pages : 0.0},
                      {"edits_by_type", s.edits_by_kind}});
    });
  });

  if (ui_dir) srv.set_mount_point("/ui", ui_dir->string());
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    const int bound = srv.bind_to_any_port(host.c_str());
    if (bound < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
    return bound;
  }
  if (!srv.bind_to_port(host.c_str(), port)) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void ReviewServer::run() { impl_->server.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace folio::review
