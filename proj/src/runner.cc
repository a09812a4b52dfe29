// Copyright 2026 The QForge Authors.
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

#include "runner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <thread>

#include "corpus.h"
#include "json.hpp"

namespace qforge {
namespace {

using nlohmann::ordered_json;

struct Slot {
  enum class State { kPending, kSkipped, kInvalid, kDone, kFailed } state = State::kPending;
  std::vector<QAPair> pairs;
  bool coref_fallback = false;
  ArticleFailure failure;
};

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool PairOrder(const QAPair& a, const QAPair& b) {
  return std::tie(a.article_id, a.keyphrase_rank, a.sentence_index) <
         std::tie(b.article_id, b.keyphrase_rank, b.sentence_index);
}

}  // namespace

std::string ResumePath(const std::string& output_path) {
  return output_path + ".resume.json";
}

CorpusRun RunCorpus(const std::vector<Article>& articles,
                    const PipelineConfig& config, Client& client,
                    Strategy strategy, int workers,
                    const std::set<std::string>& skip, std::vector<QAPair> carried) {
  config.Validate();
  std::vector<Slot> slots(articles.size());
  std::atomic<size_t> next{0};

  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < articles.size(); i = next.fetch_add(1)) {
      const Article& a = articles[i];
      Slot& slot = slots[i];
      if (skip.count(a.id)) {
        slot.state = Slot::State::kSkipped;
        continue;
      }
      if (!ValidateArticle(a, config.min_words).valid) {
        slot.state = Slot::State::kInvalid;
        continue;
      }
      try {
        ArticleRun run = strategy == Strategy::kMaximal
                             ? RunArticle(a, config, client)
                             : RunBaselineSummarization(a, config, client);
        slot.pairs = std::move(run.pairs);
        slot.coref_fallback = run.document.coref_fallback;
        slot.state = Slot::State::kDone;
      } catch (const Error& e) {
        slot.pairs.clear();
        slot.failure = ArticleFailure{a.id, e.code(), e.what()};
        slot.state = Slot::State::kFailed;
      } catch (const std::exception& e) {
        slot.pairs.clear();
        slot.failure = ArticleFailure{a.id, ErrorCode::kInternal, e.what()};
        slot.state = Slot::State::kFailed;
      }
    }
  };

  size_t threads = workers > 0 ? static_cast<size_t>(workers)
                               : std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<size_t>(1, std::min(threads, articles.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  CorpusRun result;
  std::set<std::string> carried_ids;
  for (const QAPair& p : carried) carried_ids.insert(p.article_id);
  for (size_t i = 0; i < articles.size(); ++i) {
    Slot& slot = slots[i];
    switch (slot.state) {
      case Slot::State::kSkipped:
        result.completed.push_back(articles[i].id);
        break;
      case Slot::State::kInvalid:
        result.skipped_invalid.push_back(articles[i].id);
        break;
      case Slot::State::kDone:
        result.completed.push_back(articles[i].id);
        if (slot.coref_fallback) ++result.coref_fallbacks;
        for (QAPair& p : slot.pairs) result.pairs.push_back(std::move(p));
        break;
      case Slot::State::kFailed:
        result.failures.push_back(std::move(slot.failure));
        break;
      case Slot::State::kPending:
        break;
    }
  }
  for (QAPair& p : carried) {
    if (skip.count(p.article_id)) result.pairs.push_back(std::move(p));
  }
  std::sort(result.completed.begin(), result.completed.end());
  std::sort(result.skipped_invalid.begin(), result.skipped_invalid.end());
  std::sort(result.failures.begin(), result.failures.end(),
            [](const auto& a, const auto& b) { return a.article_id < b.article_id; });
  std::stable_sort(result.pairs.begin(), result.pairs.end(), PairOrder);

  for (QAPair& p : result.pairs) {
    p.related_ids.clear();
    if (p.verdict == Verdict::kKept) p.related_ids = result.graph.Link(p);
  }
  result.report = BuildRunReport(result.pairs, result.completed.size());
  return result;
}

RunOutcome ExecuteRun(const RunRequest& request, const Settings& settings,
                      Client& client) {
  const std::string started = UtcNow();
  if (request.input_path.empty() || request.output_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "run: input and output paths are required");
  }
  if (!std::filesystem::exists(request.input_path)) {
    throw Error(ErrorCode::kIo, "input not found: " + request.input_path);
  }
  std::vector<Article> articles = LoadArticles(request.input_path);

  RunOutcome out;
  out.resume_path = ResumePath(request.output_path);
  out.manifest_path = request.output_path + ".manifest.json";
  out.report_path = request.output_path + ".report.json";
  out.graph_path = request.graph_path.empty() ? request.output_path + ".graph.json"
                                              : request.graph_path;

  std::set<std::string> skip;
  std::vector<QAPair> carried;
  if (request.resume && std::filesystem::exists(out.resume_path)) {
    try {
      auto j = nlohmann::json::parse(ReadFile(out.resume_path));
      for (const auto& id : j.at("completed")) skip.insert(id.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "resume file: " + std::string(e.what()));
    }
    if (std::filesystem::exists(request.output_path)) {
      for (QAPair& p : ParsePairs(ReadFile(request.output_path))) {
        if (skip.count(p.article_id)) carried.push_back(std::move(p));
      }
    }
  }

  out.run = RunCorpus(articles, settings.pipeline, client, Strategy::kMaximal,
                      request.workers, skip, std::move(carried));
  const CorpusRun& run = out.run;

  WriteFileAtomic(request.output_path, SerializePairs(run.pairs));
  run.graph.Save(out.graph_path);
  WriteFileAtomic(out.report_path, ReportToJson(run.report));

  const bool partial = !run.failures.empty();
  if (partial) {
    ordered_json resume;
    resume["completed"] = run.completed;
    ordered_json failed = ordered_json::array();
    for (const auto& f : run.failures) {
      failed.push_back({{"article_id", f.article_id},
                        {"error", ErrorCodeName(f.code)},
                        {"message", f.message}});
    }
    resume["failed"] = failed;
    WriteFileAtomic(out.resume_path, resume.dump(2) + "\n");
    out.exit_code = 2;
  } else {
    std::error_code ec;
    std::filesystem::remove(out.resume_path, ec);
    out.exit_code = 0;
  }

  ordered_json manifest;
  manifest["engine_version"] = kEngineVersion;
  manifest["status"] = partial ? "partial" : "complete";
  manifest["input"] = request.input_path;
  manifest["output"] = request.output_path;
  manifest["graph"] = out.graph_path;
  manifest["backend"] = client.Identity();
  manifest["config"] = settings.Snapshot();
  manifest["workers"] = request.workers;
  manifest["resumed"] = !skip.empty();
  manifest["articles"] = {{"total", articles.size()},
                          {"completed", run.completed.size()},
                          {"invalid", run.skipped_invalid.size()},
                          {"failed", run.failures.size()},
                          {"coref_fallbacks", run.coref_fallbacks}};
  manifest["started_at"] = started;
  manifest["finished_at"] = UtcNow();
  WriteFileAtomic(out.manifest_path, manifest.dump(2) + "\n");
  return out;
}

Comparison CompareStrategies(const std::vector<Article>& articles,
                             const PipelineConfig& config, Client& client,
                             int workers) {
  if (articles.empty()) throw Error(ErrorCode::kEmpty, "empty corpus");
  Comparison c;
  c.articles = articles.size();
  for (const Article& a : articles) {
    if (ValidateArticle(a, config.min_words).valid) ++c.valid_articles;
  }
  CorpusRun maximal = RunCorpus(articles, config, client, Strategy::kMaximal, workers);
  CorpusRun baseline = RunCorpus(articles, config, client, Strategy::kBaseline, workers);
  for (const CorpusRun* run : {&maximal, &baseline}) {
    if (!run->failures.empty()) {
      const auto& f = run->failures.front();
      throw Error(f.code, "compare: article '" + f.article_id + "' failed: " + f.message);
    }
  }
  c.maximal = maximal.report;
  c.baseline = baseline.report;
  if (c.baseline.kept > 0) {
    c.kept_ratio = static_cast<double>(c.maximal.kept) / static_cast<double>(c.baseline.kept);
  }
  return c;
}

std::string ComparisonToJson(const Comparison& c) {
  ordered_json j;
  j["articles"] = c.articles;
  j["valid_articles"] = c.valid_articles;
  auto side = [](const RunReport& r) {
    ordered_json s;
    s["generated"] = r.generated;
    s["kept"] = r.kept;
    s["dropout"] = r.dropout;
    s["articles_used"] = r.articles_used;
    s["articles_per_100"] = r.articles_per_100 ? ordered_json(*r.articles_per_100)
                                               : ordered_json(nullptr);
    return s;
  };
  j["maximal"] = side(c.maximal);
  j["baseline"] = side(c.baseline);
  j["kept_ratio"] = c.kept_ratio ? ordered_json(*c.kept_ratio) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

std::string ComparisonToTable(const Comparison& c) {
  auto fmt = [](const std::optional<double>& v, int digits) {
    if (!v) return std::string("N/A");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, *v);
    return std::string(buf);
  };
  auto row = [&](const char* name, const RunReport& r) {
    return std::string("| ") + name + " | " + std::to_string(r.articles_used) + " | " +
           std::to_string(r.generated) + " | " + std::to_string(r.kept) + " | " +
           fmt(r.articles_per_100, 2) + " |\n";
  };
  std::string out = "articles=" + std::to_string(c.articles) +
                    " valid=" + std::to_string(c.valid_articles) + "\n\n";
  out += "| Strategy | Articles | Generated | Kept | Articles Needed (per 100 questions) |\n";
  out += "|---|---|---|---|---|\n";
  out += row("Abstractive Summarization", c.baseline);
  out += row("Maximal Generation", c.maximal);
  out += "\nkept-question ratio (maximal/baseline): " + fmt(c.kept_ratio, 2) + "\n";
  return out;
}

}  // namespace qforge
