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

#ifndef FOLIO_FOLIO_H_
#define FOLIO_FOLIO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FOLIO_BUILDING_LIBRARY)
#define FOLIO_API __attribute__((visibility("default")))
#else
#define FOLIO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Every fallible call returns a status. On failure a description is
// available from folio_last_error() on the same thread until the next call.
typedef enum folio_status {
  FOLIO_OK = 0,
  FOLIO_ERR_INVALID_ARGUMENT = 1,
  FOLIO_ERR_IO = 2,
  FOLIO_ERR_PARSE = 3,
  FOLIO_ERR_SCHEMA = 4,
  FOLIO_ERR_INVALID_SEGMENTATION = 5,
  FOLIO_ERR_DIMENSION_MISMATCH = 6,
  FOLIO_ERR_EMPTY_IMAGE = 7,
  FOLIO_ERR_EMPTY_GROUND_TRUTH = 8,
  FOLIO_ERR_NO_WORDS_IN_GROUND_TRUTH = 9,
  FOLIO_ERR_TOO_FEW_PAGES = 10,
  FOLIO_ERR_NOT_FOUND = 11,
  FOLIO_ERR_CONFLICT = 12,
  FOLIO_ERR_INTERNAL = 100
} folio_status;

typedef struct folio_config folio_config;              // workbench settings
typedef struct folio_image folio_image;                // 8-bit gray raster
typedef struct folio_mask folio_mask;                  // binary raster
typedef struct folio_page folio_page;                  // page segmentation
typedef struct folio_diff_summary folio_diff_summary;  // corpus diff tallies

FOLIO_API const char* folio_version(void);
FOLIO_API const char* folio_last_error(void);
FOLIO_API const char* folio_status_name(folio_status status);

// Strings returned through char** out-parameters are owned by the caller.
FOLIO_API void folio_string_free(char* s);

// Reads FOLIO_LOG (trace, debug, info, warn, error, off). Idempotent.
FOLIO_API void folio_init_logging(void);

// --- configuration ---------------------------------------------------------
FOLIO_API folio_status folio_config_default(folio_config** out);
FOLIO_API folio_status folio_config_load(const char* json_path, folio_config** out);
FOLIO_API folio_status folio_config_to_json(const folio_config* cfg, char** out);
FOLIO_API void folio_config_free(folio_config* cfg);

// --- rasters ---------------------------------------------------------------
FOLIO_API folio_status folio_image_load(const char* path, folio_image** out);
FOLIO_API folio_status folio_image_save_png(const folio_image* img, const char* path);
FOLIO_API folio_status folio_image_size(const folio_image* img, int* width, int* height);
FOLIO_API void folio_image_free(folio_image* img);

FOLIO_API folio_status folio_mask_load(const char* path, folio_mask** out);
FOLIO_API folio_status folio_mask_save_png(const folio_mask* mask, const char* path);
FOLIO_API void folio_mask_free(folio_mask* mask);

// Binarization, scan-border removal and deskew. `skew_deg` may be NULL.
FOLIO_API folio_status folio_preprocess(const folio_image* scan, const folio_config* cfg,
                                        folio_mask** out, double* skew_deg);

// --- segmentation ----------------------------------------------------------
FOLIO_API folio_status folio_segment(const folio_mask* page, const folio_config* cfg,
                                     const char* page_id, folio_page** out);

// `warnings_json`, if not NULL, receives a JSON array of reader warnings.
FOLIO_API folio_status folio_page_read_xml(const char* path, folio_page** out,
                                           char** warnings_json);
FOLIO_API folio_status folio_page_write_xml(const folio_page* page,
                                            const char* image_filename, const char* path);
FOLIO_API folio_status folio_page_to_json(const folio_page* page, char** out);
FOLIO_API folio_status folio_page_from_json(const char* json, folio_page** out);
// JSON array of {region_id, rule, message}; "[]" for a valid page.
FOLIO_API folio_status folio_page_validate(const folio_page* page, char** violations_json);
FOLIO_API void folio_page_free(folio_page* page);

// --- extraction ------------------------------------------------------------
// Writes <out_dir>/<page>/<region>/{region.png,<i>.png,<i>.bin.png} and
// returns manifest rows "page\tregion\tindex\tpath\n" in reading order.
FOLIO_API folio_status folio_extract_page(const folio_image* original, const folio_page* page,
                                          const folio_config* cfg, const char* out_dir,
                                          char** manifest_tsv);

// Joins <lines_dir>/<page>/<region>/<i><suffix> texts in reading order and
// normalizes punctuation spacing. `warnings_json` may be NULL.
FOLIO_API folio_status folio_assemble_page(const folio_page* page, const char* lines_dir,
                                           const char* suffix, char** text,
                                           char** warnings_json);
FOLIO_API folio_status folio_normalize_text(const char* text, char** out);

// --- evaluation ------------------------------------------------------------
FOLIO_API folio_status folio_char_accuracy(const char* gt, const char* ocr, double* out);
FOLIO_API folio_status folio_word_accuracy(const char* gt, const char* ocr, double* out);

// Character and word accuracy with bootstrap confidence intervals over `n`
// pages. Either output may be NULL.
FOLIO_API folio_status folio_evaluate(const char* const* page_ids, const char* const* gt,
                                      const char* const* ocr, size_t n, double level,
                                      uint64_t seed, char** report_json, char** report_table);

FOLIO_API folio_status folio_diff_summary_new(folio_diff_summary** out);
FOLIO_API folio_status folio_diff_summary_to_json(const folio_diff_summary* summary,
                                                  char** out);
FOLIO_API void folio_diff_summary_free(folio_diff_summary* summary);

// Region matching of `a` (reference) against `b`. When `summary` is not
// NULL the result is added to it; adding is thread-safe.
FOLIO_API folio_status folio_diff(const folio_page* a, const folio_page* b, double iou_min,
                                  folio_diff_summary* summary, char** diff_json);

// --- synthetic data ----------------------------------------------------------
// Writes page `ordinal` (1-based) of a synthetic book below `root`.
// `ocr_noise` < 0 disables the noisy OCR text.
FOLIO_API folio_status folio_generate_page(const char* root, uint64_t seed, int ordinal,
                                           double ocr_noise);
// "p0001" style page name.
FOLIO_API folio_status folio_page_name(int ordinal, char** out);

// --- review service ---------------------------------------------------------
// Serves the review API until the process is interrupted. `ui_dir` may be
// NULL.
FOLIO_API folio_status folio_serve(const char* image_dir, const char* pagexml_dir,
                                   const char* state_dir, const char* ui_dir,
                                   const char* host, int port);

#ifdef __cplusplus
}
#endif

#endif  // FOLIO_FOLIO_H_
