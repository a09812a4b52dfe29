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

#ifndef QFORGE_SRC_PIPELINE_H_
#define QFORGE_SRC_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "backend.h"
#include "config.h"
#include "corpus.h"
#include "keyphrase.h"
#include "textproc.h"

namespace qforge {

enum class Verdict { kKept, kUnanswerable, kToxic, kDuplicate, kLowScore };

const char* VerdictName(Verdict v);
Verdict ParseVerdict(std::string_view name);

struct QAPair {
  std::string article_id;
  std::string keyphrase;
  size_t keyphrase_rank = 0;
  size_t sentence_index = 0;
  std::string context;
  std::string question;
  std::string answer;
  std::optional<size_t> answer_start;  // byte offsets into `context`
  std::optional<size_t> answer_end;
  double qa_score = 0.0;
  std::optional<double> toxicity;  // absent when the gate did not run
  Verdict verdict = Verdict::kUnanswerable;
  bool baseline = false;
  std::vector<std::string> related_ids;

  // "<article_id>#<rank>.<sentence>", with a "b" before the rank for
  // baseline pairs. Unique within a run.
  std::string Id() const;

  bool operator==(const QAPair&) const = default;
};

// One JSON object per line, fields in the normative order.
std::string ToJsonLine(const QAPair& pair);
std::string SerializePairs(const std::vector<QAPair>& pairs);
std::vector<QAPair> ParsePairs(std::string_view jsonl);

struct FilterResult {
  Verdict verdict = Verdict::kUnanswerable;
  AnswerResponse answer;
};

// Uses the QA model as an adversary of the generator: no_answer gives
// Unanswerable, a span scored below `null_threshold` gives LowScore,
// anything else is Kept with the extracted span as the answer.
FilterResult AdversarialFilter(const std::string& question,
                               const std::string& context, Client& qa,
                               double null_threshold);

struct ToxicityResult {
  bool toxic = false;
  double score = 0.0;  // max over question and answer
};

ToxicityResult ToxicityGate(const std::string& question,
                            const std::string& answer, Client& tox,
                            double threshold);

// Question text lowercased, whitespace-collapsed, trailing punctuation
// stripped.
std::string DedupeKey(std::string_view question);

// Among Kept pairs (in the given order) the first per DedupeKey survives;
// later ones become Duplicate. Rejected pairs are left untouched.
std::vector<QAPair> Dedupe(std::vector<QAPair> pairs);

// Generates, filters and gates a single keyword-context pair. The
// returned pair always carries a verdict.
QAPair ProcessPair(const ContextKeyphrasePair& pair, const std::string& question,
                   const PipelineConfig& config, Client& client);

struct ArticleRun {
  ResolvedDocument document;          // the text contexts are drawn from
  std::vector<ContextKeyphrasePair> contexts;
  std::vector<QAPair> pairs;          // one per context, same order
};

// Keyphrase -> context pairing -> generation -> filtering over `doc`.
ArticleRun GenerateFromDocument(ResolvedDocument doc, const PipelineConfig& config,
                                Client& client, bool baseline);

// Maximal generation for one article. Throws Error(kInvalidArticle) when the
// article is below min_words and propagates backend errors; in either case
// nothing is emitted for the article.
ArticleRun RunArticle(const Article& article, const PipelineConfig& config,
                      Client& client);

// Summarization baseline: chunk the resolved article at sentence boundaries,
// summarize every chunk, and generate only from the summary text.
ArticleRun RunBaselineSummarization(const Article& article,
                                    const PipelineConfig& config, Client& client);

}  // namespace qforge

#endif  // QFORGE_SRC_PIPELINE_H_
