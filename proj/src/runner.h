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

#ifndef QFORGE_SRC_RUNNER_H_
#define QFORGE_SRC_RUNNER_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "config.h"
#include "error.h"
#include "metrics.h"
#include "pipeline.h"
#include "question_graph.h"

namespace qforge {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class Strategy { kMaximal, kBaseline };

struct ArticleFailure {
  std::string article_id;
  ErrorCode code = ErrorCode::kInternal;
  std::string message;
};

struct CorpusRun {
  // Sorted by (article_id, keyphrase_rank, sentence_index) and linked.
  std::vector<QAPair> pairs;
  std::vector<std::string> completed;        // sorted article ids
  std::vector<std::string> skipped_invalid;  // below min_words
  std::vector<ArticleFailure> failures;
  size_t coref_fallbacks = 0;
  QuestionGraph graph;
  RunReport report;
};

// Processes `articles` on up to `workers` threads (<= 0 means one per
// hardware thread). Articles whose ids are in `skip` are not processed;
// `carried` holds their previously produced pairs, which are merged
// before sorting and linking so the result matches an uninterrupted run.
CorpusRun RunCorpus(const std::vector<Article>& articles,
                    const PipelineConfig& config, Client& client,
                    Strategy strategy, int workers,
                    const std::set<std::string>& skip = {},
                    std::vector<QAPair> carried = {});

struct RunRequest {
  std::string input_path;
  std::string output_path;
  std::string graph_path;  // default: <output>.graph.json
  int workers = 0;
  bool resume = false;
};

struct RunOutcome {
  int exit_code = 0;  // 0 complete, 2 partial (resume file written)
  CorpusRun run;
  std::string manifest_path;
  std::string report_path;
  std::string graph_path;
  std::string resume_path;
};

// Loads the corpus, runs maximal generation and writes the QAPair JSONL,
// question graph, RunReport JSON and run manifest next to the output.
// Articles that fail leave a resume file listing completed article ids; a
// later call with `resume` set reuses their output records.
RunOutcome ExecuteRun(const RunRequest& request, const Settings& settings,
                      Client& client);

struct Comparison {
  size_t articles = 0;
  size_t valid_articles = 0;
  RunReport maximal;
  RunReport baseline;
  std::optional<double> kept_ratio;  // maximal kept / baseline kept
};

Comparison CompareStrategies(const std::vector<Article>& articles,
                             const PipelineConfig& config, Client& client,
                             int workers);
std::string ComparisonToJson(const Comparison& c);
std::string ComparisonToTable(const Comparison& c);

std::string ResumePath(const std::string& output_path);

}  // namespace qforge

#endif  // QFORGE_SRC_RUNNER_H_
