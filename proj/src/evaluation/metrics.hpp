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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace folio::eval {

// Unit-cost edit distance over code points.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Length of the longest common subsequence of two word sequences.
std::size_t lcs_length(std::span<const std::u32string> a,
                       std::span<const std::u32string> b);

// Maximal runs of letters, case-folded.
std::vector<std::u32string> words(std::string_view text);

struct CharScore {
  std::size_t count = 0;   // ground-truth code points after normalization
  std::size_t errors = 0;  // edit distance
  double accuracy() const;
};

struct WordScore {
  std::size_t count = 0;    // ground-truth words
  std::size_t matched = 0;  // LCS length
  double accuracy() const;
};

// Both sides are punctuation-normalized first. Throws EmptyGroundTruth.
CharScore score_chars(std::string_view gt, std::string_view ocr);
// Throws NoWordsInGroundTruth.
WordScore score_words(std::string_view gt, std::string_view ocr);

// (|gt| - d) / |gt|; negative when the OCR output is mostly garbage.
double char_accuracy(std::string_view gt, std::string_view ocr);
double word_accuracy(std::string_view gt, std::string_view ocr);

struct WeightedAccuracy {
  double weight = 0.0;
  double accuracy = 0.0;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

inline constexpr int kBootstrapResamples = 10000;

double pooled_accuracy(std::span<const WeightedAccuracy> pages);

// Percentile bootstrap over pages of the weighted pooled accuracy. The
// bounds are widened, if needed, to contain the pooled mean itself.
// Throws TooFewPages for fewer than two pages.
Interval confidence_interval(std::span<const WeightedAccuracy> pages,
                             double level, std::uint64_t seed,
                             int resamples = kBootstrapResamples);

struct PageAccuracy {
  std::string page_id;
  std::size_t count = 0;
  double accuracy = 0.0;
};

struct AccuracyReport {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<PageAccuracy> per_page;
};

struct PageTexts {
  std::string page_id;
  std::string gt;
  std::string ocr;
};

struct EvaluationReport {
  AccuracyReport characters;
  AccuracyReport words;
  double level = 0.95;
  std::uint64_t seed = 0;
};

EvaluationReport evaluate(std::span<const PageTexts> pages, double level,
                          std::uint64_t seed);

// Lower Limit / Mean / Upper Limit table, one row per measure.
std::string format_table(const EvaluationReport& report);
nlohmann::json to_json(const EvaluationReport& report);

}  // namespace folio::eval
