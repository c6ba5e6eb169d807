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

#include "evaluation/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "common/error.hpp"
#include "evaluation/unicode.hpp"
#include "extraction/extraction.hpp"

namespace folio::eval {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t lcs_length(std::span<const std::u32string> a,
                       std::span<const std::u32string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::u32string> words(std::string_view text) {
  std::vector<std::u32string> out;
  std::u32string word;
  for (char32_t c : decode_utf8(text)) {
    if (is_letter(c)) {
      word.push_back(fold_case(c));
    } else if (!word.empty()) {
      out.push_back(std::move(word));
      word.clear();
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

double CharScore::accuracy() const {
  return count == 0 ? 0.0
                    : (static_cast<double>(count) - static_cast<double>(errors)) /
                          static_cast<double>(count);
}

double WordScore::accuracy() const {
  return count == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(count);
}

CharScore score_chars(std::string_view gt, std::string_view ocr) {
  const std::u32string g = decode_utf8(extract::normalize_text(gt));
  if (g.empty()) throw Error(ErrorCode::kEmptyGroundTruth, "ground truth is empty");
  const std::u32string o = decode_utf8(extract::normalize_text(ocr));
  return {g.size(), levenshtein(g, o)};
}

WordScore score_words(std::string_view gt, std::string_view ocr) {
  const auto g = words(gt);
  if (g.empty()) {
    throw Error(ErrorCode::kNoWordsInGroundTruth, "ground truth contains no words");
  }
  const auto o = words(ocr);
  return {g.size(), lcs_length(g, o)};
}

double char_accuracy(std::string_view gt, std::string_view ocr) {
  return score_chars(gt, ocr).accuracy();
}

double word_accuracy(std::string_view gt, std::string_view ocr) {
  return score_words(gt, ocr).accuracy();
}

double pooled_accuracy(std::span<const WeightedAccuracy> pages) {
  double w = 0.0;
  double s = 0.0;
  for (const auto& p : pages) {
    w += p.weight;
    s += p.weight * p.accuracy;
  }
  return w > 0.0 ? s / w : 0.0;
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

}  // namespace

Interval confidence_interval(std::span<const WeightedAccuracy> pages, double level,
                             std::uint64_t seed, int resamples) {
  if (pages.size() < 2) {
    throw Error(ErrorCode::kTooFewPages,
                "confidence interval needs at least 2 pages, got " +
                    std::to_string(pages.size()));
  }
  if (!(level > 0.0 && level < 1.0) || resamples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad confidence level or resample count");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pages.size() - 1);
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    double w = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < pages.size(); ++i) {
      const auto& p = pages[pick(rng)];
      w += p.weight;
      s += p.weight * p.accuracy;
    }
    stats.push_back(w > 0.0 ? s / w : 0.0);
  }
  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - level) / 2.0;
  const double mean = pooled_accuracy(pages);
  return {std::min(percentile(stats, tail), mean),
          std::max(percentile(stats, 1.0 - tail), mean)};
}

namespace {

AccuracyReport make_report(std::vector<PageAccuracy> per_page, double level,
                           std::uint64_t seed) {
  std::vector<WeightedAccuracy> weighted;
  for (const auto& p : per_page)
    weighted.push_back({static_cast<double>(p.count), p.accuracy});
  AccuracyReport r;
  r.mean = pooled_accuracy(weighted);
  if (weighted.size() >= 2) {
    const Interval ci = confidence_interval(weighted, level, seed);
    r.ci_low = ci.low;
    r.ci_high = ci.high;
  } else {
    r.ci_low = r.ci_high = r.mean;
  }
  r.per_page = std::move(per_page);
  return r;
}

}  // namespace

EvaluationReport evaluate(std::span<const PageTexts> pages, double level,
                          std::uint64_t seed) {
  if (pages.size() < 2) {
    throw Error(ErrorCode::kTooFewPages,
                "evaluation needs at least 2 pages, got " + std::to_string(pages.size()));
  }
  std::vector<PageAccuracy> chars;
  std::vector<PageAccuracy> wrds;
  for (const auto& p : pages) {
    const CharScore c = score_chars(p.gt, p.ocr);
    const WordScore w = score_words(p.gt, p.ocr);
    chars.push_back({p.page_id, c.count, c.accuracy()});
    wrds.push_back({p.page_id, w.count, w.accuracy()});
  }
  EvaluationReport report;
  report.level = level;
  report.seed = seed;
  report.characters = make_report(std::move(chars), level, seed);
  report.words = make_report(std::move(wrds), level, seed);
  return report;
}

std::string format_table(const EvaluationReport& report) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "%-12s %12s %10s %12s\n", "", "Lower Limit", "Mean",
                "Upper Limit");
  out += buf;
  auto row = [&](const char* name, const AccuracyReport& r) {
    std::snprintf(buf, sizeof buf, "%-12s %11.2f%% %9.2f%% %11.2f%%\n", name,
                  100.0 * r.ci_low, 100.0 * r.mean, 100.0 * r.ci_high);
    out += buf;
  };
  row("Characters", report.characters);
  row("Words", report.words);
  return out;
}

nlohmann::json to_json(const EvaluationReport& report) {
  auto one = [](const AccuracyReport& r) {
    nlohmann::json pages = nlohmann::json::array();
    for (const auto& p : r.per_page)
      pages.push_back({{"page_id", p.page_id}, {"count", p.count}, {"accuracy", p.accuracy}});
    return nlohmann::json{
        {"mean", r.mean}, {"ci_low", r.ci_low}, {"ci_high", r.ci_high}, {"per_page", pages}};
  };
  return {{"level", report.level},
          {"seed", report.seed},
          {"characters", one(report.characters)},
          {"words", one(report.words)}};
}

}  // namespace folio::eval
