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

#include "folio/folio.h"

#include <cstdlib>
#include <cstring>
#include <mutex>
#include <string>

#include "common/error.hpp"
#include "common/log.hpp"
#include "evaluation/metrics.hpp"
#include "evaluation/seg_diff.hpp"
#include "extraction/extraction.hpp"
#include "imaging/image_io.hpp"
#include "page/page_json.hpp"
#include "pagexml/pagexml.hpp"
#include "review/review_server.hpp"
#include "segmentation/config.hpp"
#include "synth/generator.hpp"

struct folio_config {
  folio::WorkbenchConfig value;
};
struct folio_image {
  folio::imaging::GrayImage value;
};
struct folio_mask {
  folio::imaging::BinaryImage value;
};
struct folio_page {
  folio::page::PageSegmentation value;
};
struct folio_diff_summary {
  std::mutex mutex;
  folio::eval::DiffSummary value;
};

namespace {

thread_local std::string g_last_error;

folio_status to_status(folio::ErrorCode code) {
  return static_cast<folio_status>(static_cast<int>(code));
}

// Runs `f`, translating exceptions into a status and the thread's last error.
template <typename F>
folio_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return FOLIO_OK;
  } catch (const folio::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FOLIO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FOLIO_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw folio::Error(folio::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* folio_version(void) { return "0.1.0"; }

const char* folio_last_error(void) { return g_last_error.c_str(); }

const char* folio_status_name(folio_status status) {
  if (status == FOLIO_OK) return "Ok";
  if (status == FOLIO_ERR_INTERNAL) return "Internal";
  if (status >= FOLIO_ERR_INVALID_ARGUMENT && status <= FOLIO_ERR_CONFLICT) {
    return folio::error_code_name(static_cast<folio::ErrorCode>(status));
  }
  return "Unknown";
}

void folio_string_free(char* s) { std::free(s); }

void folio_init_logging(void) { folio::init_logging(); }

folio_status folio_config_default(folio_config** out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new folio_config{};
  });
}

folio_status folio_config_load(const char* json_path, folio_config** out) {
  return guard([&] {
    require(json_path != nullptr && out != nullptr, "NULL argument");
    *out = new folio_config{folio::load_config(json_path)};
  });
}

folio_status folio_config_to_json(const folio_config* cfg, char** out) {
  return guard([&] {
    require(cfg != nullptr && out != nullptr, "NULL argument");
    *out = dup(folio::config_to_json(cfg->value).dump(2));
  });
}

void folio_config_free(folio_config* cfg) { delete cfg; }

folio_status folio_image_load(const char* path, folio_image** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = new folio_image{folio::imaging::read_gray(path)};
  });
}

folio_status folio_image_save_png(const folio_image* img, const char* path) {
  return guard([&] {
    require(img != nullptr && path != nullptr, "NULL argument");
    folio::imaging::write_png(path, img->value);
  });
}

folio_status folio_image_size(const folio_image* img, int* width, int* height) {
  return guard([&] {
    require(img != nullptr && width != nullptr && height != nullptr, "NULL argument");
    *width = img->value.width();
    *height = img->value.height();
  });
}

void folio_image_free(folio_image* img) { delete img; }

folio_status folio_mask_load(const char* path, folio_mask** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = new folio_mask{folio::imaging::read_binary(path)};
  });
}

folio_status folio_mask_save_png(const folio_mask* mask, const char* path) {
  return guard([&] {
    require(mask != nullptr && path != nullptr, "NULL argument");
    folio::imaging::write_png(path, mask->value);
  });
}

void folio_mask_free(folio_mask* mask) { delete mask; }

folio_status folio_preprocess(const folio_image* scan, const folio_config* cfg,
                              folio_mask** out, double* skew_deg) {
  return guard([&] {
    require(scan != nullptr && cfg != nullptr && out != nullptr, "NULL argument");
    auto result = folio::imaging::preprocess(scan->value, cfg->value.binarize);
    if (skew_deg != nullptr) *skew_deg = result.skew_deg;
    *out = new folio_mask{std::move(result.binary)};
  });
}

folio_status folio_segment(const folio_mask* page, const folio_config* cfg,
                           const char* page_id, folio_page** out) {
  return guard([&] {
    require(page != nullptr && cfg != nullptr && page_id != nullptr && out != nullptr,
            "NULL argument");
    *out = new folio_page{folio::seg::segment_page(page->value, cfg->value.layout,
                                                   cfg->value.segmentation, page_id)};
  });
}

folio_status folio_page_read_xml(const char* path, folio_page** out, char** warnings_json) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    std::FILE* f = std::fopen(path, "rb");
    if (f == nullptr) throw folio::Error(folio::ErrorCode::kIo, std::string("cannot read ") + path);
    std::string xml;
    char buf[65536];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) xml.append(buf, n);
    std::fclose(f);
    auto result = folio::pagexml::read_pagexml(xml);
    if (warnings_json != nullptr) *warnings_json = dup(nlohmann::json(result.warnings).dump());
    *out = new folio_page{std::move(result.seg)};
  });
}

folio_status folio_page_write_xml(const folio_page* page, const char* image_filename,
                                  const char* path) {
  return guard([&] {
    require(page != nullptr && image_filename != nullptr && path != nullptr, "NULL argument");
    const std::string xml = folio::pagexml::write_pagexml(page->value, image_filename);
    std::FILE* f = std::fopen(path, "wb");
    if (f == nullptr) throw folio::Error(folio::ErrorCode::kIo, std::string("cannot write ") + path);
    const bool ok = std::fwrite(xml.data(), 1, xml.size(), f) == xml.size();
    if (std::fclose(f) != 0 || !ok) {
      throw folio::Error(folio::ErrorCode::kIo, std::string("cannot write ") + path);
    }
  });
}

folio_status folio_page_to_json(const folio_page* page, char** out) {
  return guard([&] {
    require(page != nullptr && out != nullptr, "NULL argument");
    *out = dup(folio::page::to_json(page->value).dump());
  });
}

folio_status folio_page_from_json(const char* json, folio_page** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "NULL argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw folio::Error(folio::ErrorCode::kParse, e.what());
    }
    *out = new folio_page{folio::page::segmentation_from_json(j)};
  });
}

folio_status folio_page_validate(const folio_page* page, char** violations_json) {
  return guard([&] {
    require(page != nullptr && violations_json != nullptr, "NULL argument");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : folio::page::validate(page->value)) {
      arr.push_back({{"region_id", v.region_id}, {"rule", v.rule}, {"message", v.message}});
    }
    *violations_json = dup(arr.dump());
  });
}

void folio_page_free(folio_page* page) { delete page; }

folio_status folio_extract_page(const folio_image* original, const folio_page* page,
                                const folio_config* cfg, const char* out_dir,
                                char** manifest_tsv) {
  return guard([&] {
    require(original != nullptr && page != nullptr && cfg != nullptr && out_dir != nullptr,
            "NULL argument");
    const auto rows = folio::extract::export_lines(out_dir, original->value, page->value,
                                                   cfg->value.binarize, cfg->value.segmentation,
                                                   cfg->value.line_height);
    if (manifest_tsv != nullptr) {
      std::string tsv;
      for (const auto& r : rows) {
        tsv += r.page_id + "\t" + r.region_id + "\t" + std::to_string(r.index) + "\t" + r.path +
               "\n";
      }
      *manifest_tsv = dup(tsv);
    }
  });
}

folio_status folio_assemble_page(const folio_page* page, const char* lines_dir,
                                 const char* suffix, char** text, char** warnings_json) {
  return guard([&] {
    require(page != nullptr && lines_dir != nullptr && text != nullptr, "NULL argument");
    const auto lines =
        folio::extract::read_line_texts(lines_dir, page->value, suffix ? suffix : ".txt");
    const auto assembled = folio::extract::assemble_text(page->value, lines);
    *text = dup(folio::extract::normalize_text(assembled.text));
    if (warnings_json != nullptr) *warnings_json = dup(nlohmann::json(assembled.warnings).dump());
  });
}

folio_status folio_normalize_text(const char* text, char** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "NULL argument");
    *out = dup(folio::extract::normalize_text(text));
  });
}

folio_status folio_char_accuracy(const char* gt, const char* ocr, double* out) {
  return guard([&] {
    require(gt != nullptr && ocr != nullptr && out != nullptr, "NULL argument");
    *out = folio::eval::char_accuracy(gt, ocr);
  });
}

folio_status folio_word_accuracy(const char* gt, const char* ocr, double* out) {
  return guard([&] {
    require(gt != nullptr && ocr != nullptr && out != nullptr, "NULL argument");
    *out = folio::eval::word_accuracy(gt, ocr);
  });
}

folio_status folio_evaluate(const char* const* page_ids, const char* const* gt,
                            const char* const* ocr, size_t n, double level, uint64_t seed,
                            char** report_json, char** report_table) {
  return guard([&] {
    require(n == 0 || (page_ids != nullptr && gt != nullptr && ocr != nullptr),
            "NULL argument");
    std::vector<folio::eval::PageTexts> pages;
    for (size_t i = 0; i < n; ++i) {
      require(page_ids[i] != nullptr && gt[i] != nullptr && ocr[i] != nullptr,
              "NULL page entry");
      pages.push_back({page_ids[i], gt[i], ocr[i]});
    }
    const auto report = folio::eval::evaluate(pages, level, seed);
    if (report_json != nullptr) *report_json = dup(folio::eval::to_json(report).dump(2));
    if (report_table != nullptr) *report_table = dup(folio::eval::format_table(report));
  });
}

folio_status folio_diff_summary_new(folio_diff_summary** out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new folio_diff_summary{};
  });
}

folio_status folio_diff_summary_to_json(const folio_diff_summary* summary, char** out) {
  return guard([&] {
    require(summary != nullptr && out != nullptr, "NULL argument");
    std::lock_guard lock(const_cast<folio_diff_summary*>(summary)->mutex);
    *out = dup(folio::eval::to_json(summary->value).dump(2));
  });
}

void folio_diff_summary_free(folio_diff_summary* summary) { delete summary; }

folio_status folio_diff(const folio_page* a, const folio_page* b, double iou_min,
                        folio_diff_summary* summary, char** diff_json) {
  return guard([&] {
    require(a != nullptr && b != nullptr, "NULL argument");
    const auto d = folio::eval::diff_segmentations(a->value, b->value, iou_min);
    if (summary != nullptr) {
      std::lock_guard lock(summary->mutex);
      summary->value.add(a->value, b->value, d);
    }
    if (diff_json != nullptr) *diff_json = dup(folio::eval::to_json(d).dump());
  });
}

folio_status folio_generate_page(const char* root, uint64_t seed, int ordinal,
                                 double ocr_noise) {
  return guard([&] {
    require(root != nullptr && ordinal >= 1, "bad argument");
    folio::synth::BookOptions options;
    options.seed = seed;
    if (ocr_noise >= 0.0) {
      require(ocr_noise <= 1.0, "ocr noise must lie in [0,1]");
      options.ocr_noise = ocr_noise;
    }
    folio::synth::write_book_page(root, options, ordinal);
  });
}

folio_status folio_page_name(int ordinal, char** out) {
  return guard([&] {
    require(out != nullptr && ordinal >= 1, "bad argument");
    *out = dup(folio::synth::page_name(ordinal));
  });
}

folio_status folio_serve(const char* image_dir, const char* pagexml_dir, const char* state_dir,
                         const char* ui_dir, const char* host, int port) {
  return guard([&] {
    require(image_dir != nullptr && pagexml_dir != nullptr && state_dir != nullptr &&
                host != nullptr && port >= 0,
            "bad argument");
    folio::review::ReviewStore store(image_dir, pagexml_dir, state_dir);
    std::optional<std::filesystem::path> ui;
    if (ui_dir != nullptr) ui = ui_dir;
    folio::review::ReviewServer server(store, ui);
    const int bound = server.bind(host, port);
    spdlog::info("review service listening on {}:{}", host, bound);
    server.run();
  });
}

}  // extern "C"
