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

// Command-line front end. Links only the public C API.

#include <folio/folio.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

namespace fs = std::filesystem;

namespace {

struct Failure {
  std::string page;
  std::string message;
};

class CapiError : public std::runtime_error {
 public:
  explicit CapiError(folio_status s)
      : std::runtime_error(std::string(folio_status_name(s)) + ": " + folio_last_error()) {}
};

void check(folio_status s) {
  if (s != FOLIO_OK) throw CapiError(s);
}

struct StringDeleter {
  void operator()(char* s) const { folio_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  CString owned(s);
  return s ? std::string(s) : std::string();
}

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Config = std::unique_ptr<folio_config, HandleDeleter<folio_config, folio_config_free>>;
using Image = std::unique_ptr<folio_image, HandleDeleter<folio_image, folio_image_free>>;
using Mask = std::unique_ptr<folio_mask, HandleDeleter<folio_mask, folio_mask_free>>;
using Page = std::unique_ptr<folio_page, HandleDeleter<folio_page, folio_page_free>>;

Page read_page(const fs::path& path) {
  folio_page* p = nullptr;
  check(folio_page_read_xml(path.c_str(), &p, nullptr));
  return Page(p);
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

// Files in `dir` with one of the extensions, sorted by name.
std::vector<fs::path> list_files(const fs::path& dir, std::initializer_list<const char*> exts) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = e.path().extension().string();
    if (std::any_of(exts.begin(), exts.end(), [&](const char* x) { return ext == x; })) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Runs `work(i)` for i in [0, n) on up to `jobs` threads. Failures are
// collected per item and reported in item order.
std::vector<std::optional<std::string>> run_queue(std::size_t n, int jobs,
                                                  const std::function<void(std::size_t)>& work) {
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        work(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return errors;
}

struct Options {
  std::string config;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string timings = "timings.tsv";
};

Config load_config(const Options& o) {
  folio_config* c = nullptr;
  check(o.config.empty() ? folio_config_default(&c) : folio_config_load(o.config.c_str(), &c));
  return Config(c);
}

int report(const char* stage, const std::vector<std::string>& pages,
           const std::vector<std::optional<std::string>>& errors) {
  int failed = 0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    ++failed;
    std::fprintf(stderr, "folio %s: %s: %s\n", stage, pages[i].c_str(), errors[i]->c_str());
  }
  return failed == 0 ? 0 : 1;
}

class Timer {
 public:
  Timer(const Options& o, std::string stage) : options_(o), stage_(std::move(stage)) {}
  void finish(std::size_t pages) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const bool fresh = !fs::exists(options_.timings);
    std::ofstream f(options_.timings, std::ios::app);
    if (fresh) f << "stage\tpages\twall_seconds\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", secs);
    f << stage_ << '\t' << pages << '\t' << buf << '\n';
  }

 private:
  const Options& options_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::string> stems(const std::vector<fs::path>& files) {
  std::vector<std::string> out;
  for (const auto& f : files) out.push_back(f.stem().string());
  return out;
}

int cmd_gen(const Options& o, int pages, double ocr_noise) {
  Timer timer(o, "gen");
  std::vector<std::string> names;
  for (int i = 1; i <= pages; ++i) {
    char* name = nullptr;
    check(folio_page_name(i, &name));
    names.push_back(take(name));
  }
  const auto errors = run_queue(static_cast<std::size_t>(pages), o.jobs, [&](std::size_t i) {
    check(folio_generate_page(o.out.c_str(), o.seed, static_cast<int>(i) + 1, ocr_noise));
  });
  timer.finish(static_cast<std::size_t>(pages));
  return report("gen", names, errors);
}

int cmd_preprocess(const Options& o, const std::string& scans) {
  Timer timer(o, "preprocess");
  const Config cfg = load_config(o);
  const auto files = list_files(scans, {".png", ".pgm", ".pbm", ".pnm"});
  const auto names = stems(files);
  fs::create_directories(o.out);
  const auto errors = run_queue(files.size(), o.jobs, [&](std::size_t i) {
    folio_image* img = nullptr;
    check(folio_image_load(files[i].c_str(), &img));
    const Image scan(img);
    folio_mask* m = nullptr;
    check(folio_preprocess(scan.get(), cfg.get(), &m, nullptr));
    const Mask mask(m);
    check(folio_mask_save_png(mask.get(), (fs::path(o.out) / (names[i] + ".png")).c_str()));
  });
  timer.finish(files.size());
  return report("preprocess", names, errors);
}

int cmd_segment(const Options& o, const std::string& binary) {
  Timer timer(o, "segment");
  const Config cfg = load_config(o);
  const auto files = list_files(binary, {".png", ".pbm"});
  const auto names = stems(files);
  fs::create_directories(o.out);
  const auto errors = run_queue(files.size(), o.jobs, [&](std::size_t i) {
    folio_mask* m = nullptr;
    check(folio_mask_load(files[i].c_str(), &m));
    const Mask mask(m);
    folio_page* p = nullptr;
    check(folio_segment(mask.get(), cfg.get(), names[i].c_str(), &p));
    const Page page(p);
    check(folio_page_write_xml(page.get(), (names[i] + ".png").c_str(),
                               (fs::path(o.out) / (names[i] + ".xml")).c_str()));
  });
  timer.finish(files.size());
  return report("segment", names, errors);
}

int cmd_extract(const Options& o, const std::string& pagexml, const std::string& images) {
  Timer timer(o, "extract");
  const Config cfg = load_config(o);
  const auto files = list_files(pagexml, {".xml"});
  const auto names = stems(files);
  std::vector<std::string> manifests(files.size());
  fs::create_directories(o.out);
  const auto errors = run_queue(files.size(), o.jobs, [&](std::size_t i) {
    const Page page = read_page(files[i]);
    folio_image* img = nullptr;
    check(folio_image_load((fs::path(images) / (names[i] + ".png")).c_str(), &img));
    const Image original(img);
    char* tsv = nullptr;
    check(folio_extract_page(original.get(), page.get(), cfg.get(), o.out.c_str(), &tsv));
    manifests[i] = take(tsv);
  });
  std::string manifest = "page\tregion\tindex\tpath\n";
  for (const auto& m : manifests) manifest += m;
  write_text(fs::path(o.out) / "manifest.tsv", manifest);
  timer.finish(files.size());
  return report("extract", names, errors);
}

int cmd_assemble(const Options& o, const std::string& pagexml, const std::string& lines,
                 const std::string& suffix) {
  Timer timer(o, "assemble");
  const auto files = list_files(pagexml, {".xml"});
  const auto names = stems(files);
  fs::create_directories(o.out);
  std::vector<std::string> warnings(files.size());
  const auto errors = run_queue(files.size(), o.jobs, [&](std::size_t i) {
    const Page page = read_page(files[i]);
    char* text = nullptr;
    char* warn = nullptr;
    check(folio_assemble_page(page.get(), lines.c_str(), suffix.c_str(), &text, &warn));
    warnings[i] = take(warn);
    write_text(fs::path(o.out) / (names[i] + ".txt"), take(text));
  });
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    if (!warnings[i].empty() && warnings[i] != "[]") {
      std::fprintf(stderr, "folio assemble: %s: warnings %s\n", names[i].c_str(),
                   warnings[i].c_str());
    }
  }
  timer.finish(files.size());
  return report("assemble", names, errors);
}

int cmd_evaluate(const Options& o, const std::string& manifest, const std::string& gt_dir,
                 const std::string& ocr_dir, double level) {
  Timer timer(o, "evaluate");
  struct Pair {
    std::string id;
    fs::path gt;
    fs::path ocr;
  };
  std::vector<Pair> pairs;
  if (!manifest.empty()) {
    std::istringstream in(read_text(manifest));
    const fs::path base = fs::path(manifest).parent_path();
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw std::runtime_error("manifest line without tab: " + line);
      fs::path gt = line.substr(0, tab);
      fs::path ocr = line.substr(tab + 1);
      if (gt.is_relative()) gt = base / gt;
      if (ocr.is_relative()) ocr = base / ocr;
      pairs.push_back({gt.stem().string(), gt, ocr});
    }
  } else {
    for (const auto& gt : list_files(gt_dir, {".txt"})) {
      pairs.push_back({gt.stem().string(), gt, fs::path(ocr_dir) / gt.filename()});
    }
  }
  std::vector<std::string> names;
  for (const auto& p : pairs) names.push_back(p.id);
  std::vector<std::string> gts(pairs.size());
  std::vector<std::string> ocrs(pairs.size());
  const auto errors = run_queue(pairs.size(), o.jobs, [&](std::size_t i) {
    gts[i] = read_text(pairs[i].gt);
    ocrs[i] = read_text(pairs[i].ocr);
  });
  int status = report("evaluate", names, errors);
  std::vector<const char*> ids;
  std::vector<const char*> g;
  std::vector<const char*> r;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (errors[i]) continue;
    ids.push_back(names[i].c_str());
    g.push_back(gts[i].c_str());
    r.push_back(ocrs[i].c_str());
  }
  char* json = nullptr;
  char* table = nullptr;
  check(folio_evaluate(ids.data(), g.data(), r.data(), ids.size(), level, o.seed, &json, &table));
  fs::create_directories(o.out);
  write_text(fs::path(o.out) / "report.json", take(json) + "\n");
  std::fputs(take(table).c_str(), stdout);
  timer.finish(ids.size());
  return status;
}

int cmd_diff(const Options& o, const std::string& dir_a, const std::string& dir_b, double iou) {
  Timer timer(o, "diff");
  const auto files = list_files(dir_a, {".xml"});
  const auto names = stems(files);
  folio_diff_summary* s = nullptr;
  check(folio_diff_summary_new(&s));
  std::unique_ptr<folio_diff_summary, HandleDeleter<folio_diff_summary, folio_diff_summary_free>>
      summary(s);
  std::vector<std::string> per_page(files.size());
  const auto errors = run_queue(files.size(), o.jobs, [&](std::size_t i) {
    const fs::path other = fs::path(dir_b) / files[i].filename();
    if (!fs::exists(other)) throw std::runtime_error("missing in " + dir_b);
    const Page a = read_page(files[i]);
    const Page b = read_page(other);
    char* json = nullptr;
    check(folio_diff(a.get(), b.get(), iou, summary.get(), &json));
    per_page[i] = take(json);
  });
  char* js = nullptr;
  check(folio_diff_summary_to_json(summary.get(), &js));
  const std::string summary_json = take(js);
  fs::create_directories(o.out);
  std::string pages_jsonl;
  for (const auto& p : per_page)
    if (!p.empty()) pages_jsonl += p + "\n";
  write_text(fs::path(o.out) / "diff_pages.jsonl", pages_jsonl);
  write_text(fs::path(o.out) / "diff_summary.json", summary_json + "\n");
  std::fputs((summary_json + "\n").c_str(), stdout);
  timer.finish(files.size());
  return report("diff", names, errors);
}

}  // namespace

int main(int argc, char** argv) {
  folio_init_logging();
  CLI::App app{"Layout analysis and OCR evaluation workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "JSON configuration file");
  app.add_option("--jobs", o.jobs, "Pages processed in parallel")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--timings", o.timings, "Timing table to append to");

  int pages = 10;
  double ocr_noise = -1.0;
  auto* gen = app.add_subcommand("gen", "Write a synthetic book");
  gen->add_option("--pages", pages, "Number of pages")->check(CLI::PositiveNumber);
  gen->add_option("--ocr-noise", ocr_noise, "Substitution rate of the simulated OCR text")
      ->check(CLI::Range(0.0, 1.0));

  std::string in_a;
  std::string in_b;
  auto* pre = app.add_subcommand("preprocess", "Scans to cleaned, deskewed binary pages");
  pre->add_option("scans", in_a, "Directory of scans")->required();

  auto* segment = app.add_subcommand("segment", "Binary pages to PageXML");
  segment->add_option("binary", in_a, "Directory of binary pages")->required();

  auto* extract = app.add_subcommand("extract", "Region and line images for OCR");
  extract->add_option("pagexml", in_a, "Directory of PageXML files")->required();
  extract->add_option("images", in_b, "Directory of original scans")->required();

  std::string suffix = ".txt";
  auto* assemble = app.add_subcommand("assemble", "Line transcriptions to page text");
  assemble->add_option("pagexml", in_a, "Directory of PageXML files")->required();
  assemble->add_option("lines", in_b, "Root of <page>/<region>/<index><suffix> files")->required();
  assemble->add_option("--suffix", suffix, "Line file suffix");

  std::string manifest;
  std::string gt_dir;
  std::string ocr_dir;
  double level = 0.95;
  auto* evaluate = app.add_subcommand("evaluate", "Character and word accuracy");
  auto* m_opt = evaluate->add_option("--manifest", manifest, "TSV of gt<TAB>ocr paths");
  auto* gt_opt = evaluate->add_option("--gt", gt_dir, "Ground-truth text directory");
  auto* ocr_opt = evaluate->add_option("--ocr", ocr_dir, "OCR text directory");
  gt_opt->needs(ocr_opt)->excludes(m_opt);
  ocr_opt->needs(gt_opt);
  evaluate->add_option("--level", level, "Confidence level")->check(CLI::Range(0.5, 0.999));

  double iou = 0.5;
  auto* diff = app.add_subcommand("diff", "Compare two PageXML directories");
  diff->add_option("reference", in_a, "Reference PageXML directory")->required();
  diff->add_option("candidate", in_b, "Candidate PageXML directory")->required();
  diff->add_option("--iou", iou, "Minimum IoU for a match")->check(CLI::Range(0.0, 1.0));

  std::string images;
  std::string pagexml;
  std::string state = "review-state";
  std::string ui;
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the review service");
  serve->add_option("--images", images, "Page image directory")->required();
  serve->add_option("--pagexml", pagexml, "Initial PageXML directory")->required();
  serve->add_option("--state", state, "Journal and approved PageXML directory");
  serve->add_option("--ui", ui, "Static UI assets served under /ui/");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port")->check(CLI::Range(0, 65535));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(o, pages, ocr_noise);
    if (*pre) return cmd_preprocess(o, in_a);
    if (*segment) return cmd_segment(o, in_a);
    if (*extract) return cmd_extract(o, in_a, in_b);
    if (*assemble) return cmd_assemble(o, in_a, in_b, suffix);
    if (*evaluate) {
      if (manifest.empty() && gt_dir.empty()) {
        std::fprintf(stderr, "folio evaluate: give --manifest or --gt/--ocr\n");
        return 2;
      }
      return cmd_evaluate(o, manifest, gt_dir, ocr_dir, level);
    }
    if (*diff) return cmd_diff(o, in_a, in_b, iou);
    if (*serve) {
      check(folio_serve(images.c_str(), pagexml.c_str(), state.c_str(),
                        ui.empty() ? nullptr : ui.c_str(), host.c_str(), port));
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "folio: %s\n", e.what());
    return 1;
  }
  return 2;
}
