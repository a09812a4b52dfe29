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

#include "pipeline.h"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "error.h"
#include "json.hpp"
#include "text_util.h"

namespace qforge {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool IsTrailingPunct(char c) {
  return c == '?' || c == '!' || c == '.' || c == ',' || c == ';' || c == ':' ||
         c == '"' || c == '\'' || c == ')';
}

}  // namespace

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kKept: return "Kept";
    case Verdict::kUnanswerable: return "Unanswerable";
    case Verdict::kToxic: return "Toxic";
    case Verdict::kDuplicate: return "Duplicate";
    case Verdict::kLowScore: return "LowScore";
  }
  return "?";
}

Verdict ParseVerdict(std::string_view name) {
  for (Verdict v : {Verdict::kKept, Verdict::kUnanswerable, Verdict::kToxic,
                    Verdict::kDuplicate, Verdict::kLowScore}) {
    if (name == VerdictName(v)) return v;
  }
  throw Error(ErrorCode::kParse, "unknown verdict '" + std::string(name) + "'");
}

std::string QAPair::Id() const {
  return article_id + (baseline ? "#b" : "#") + std::to_string(keyphrase_rank) +
         "." + std::to_string(sentence_index);
}

std::string ToJsonLine(const QAPair& p) {
  ordered_json j;
  j["article_id"] = p.article_id;
  j["keyphrase"] = p.keyphrase;
  j["keyphrase_rank"] = p.keyphrase_rank;
  j["sentence_index"] = p.sentence_index;
  j["context"] = p.context;
  j["question"] = p.question;
  j["answer"] = p.answer;
  j["answer_start"] = p.answer_start ? json(*p.answer_start) : json(nullptr);
  j["answer_end"] = p.answer_end ? json(*p.answer_end) : json(nullptr);
  j["qa_score"] = p.qa_score;
  j["toxicity"] = p.toxicity ? json(*p.toxicity) : json(nullptr);
  j["verdict"] = VerdictName(p.verdict);
  j["baseline"] = p.baseline;
  j["related_ids"] = p.related_ids;
  return j.dump();
}

std::string SerializePairs(const std::vector<QAPair>& pairs) {
  std::string out;
  for (const QAPair& p : pairs) {
    out += ToJsonLine(p);
    out += '\n';
  }
  return out;
}

std::vector<QAPair> ParsePairs(std::string_view jsonl) {
  std::vector<QAPair> out;
  int line = 0;
  size_t pos = 0;
  while (pos < jsonl.size()) {
    size_t nl = jsonl.find('\n', pos);
    if (nl == std::string_view::npos) nl = jsonl.size();
    std::string_view raw = jsonl.substr(pos, nl - pos);
    pos = nl + 1;
    ++line;
    if (text::Trim(raw).empty()) continue;
    try {
      json j = json::parse(raw);
      QAPair p;
      p.article_id = j.at("article_id").get<std::string>();
      p.keyphrase = j.at("keyphrase").get<std::string>();
      p.keyphrase_rank = j.at("keyphrase_rank").get<size_t>();
      p.sentence_index = j.at("sentence_index").get<size_t>();
      p.context = j.at("context").get<std::string>();
      p.question = j.at("question").get<std::string>();
      p.answer = j.at("answer").get<std::string>();
      if (!j.at("answer_start").is_null()) p.answer_start = j["answer_start"].get<size_t>();
      if (!j.at("answer_end").is_null()) p.answer_end = j["answer_end"].get<size_t>();
      p.qa_score = j.at("qa_score").get<double>();
      if (!j.at("toxicity").is_null()) p.toxicity = j["toxicity"].get<double>();
      p.verdict = ParseVerdict(j.at("verdict").get<std::string>());
      p.baseline = j.at("baseline").get<bool>();
      p.related_ids = j.at("related_ids").get<std::vector<std::string>>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

FilterResult AdversarialFilter(const std::string& question,
                               const std::string& context, Client& qa,
                               double null_threshold) {
  if (text::Trim(question).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "adversarial filter: empty question");
  }
  FilterResult r;
  r.answer = qa.Answer(question, context);
  if (r.answer.no_answer) {
    r.verdict = Verdict::kUnanswerable;
  } else if (r.answer.score < null_threshold) {
    r.verdict = Verdict::kLowScore;
  } else {
    r.verdict = Verdict::kKept;
  }
  return r;
}

ToxicityResult ToxicityGate(const std::string& question,
                            const std::string& answer, Client& tox,
                            double threshold) {
  ToxicityResult r;
  r.score = tox.Toxicity(question);
  if (!answer.empty()) r.score = std::max(r.score, tox.Toxicity(answer));
  r.toxic = r.score >= threshold;
  return r;
}

std::string DedupeKey(std::string_view question) {
  std::string key = text::NormalizeSpace(question);
  for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  while (!key.empty() && IsTrailingPunct(key.back())) key.pop_back();
  while (!key.empty() && key.back() == ' ') key.pop_back();
  return key;
}

std::vector<QAPair> Dedupe(std::vector<QAPair> pairs) {
  std::unordered_set<std::string> seen;
  for (QAPair& p : pairs) {
    if (p.verdict != Verdict::kKept) continue;
    if (!seen.insert(DedupeKey(p.question)).second) p.verdict = Verdict::kDuplicate;
  }
  return pairs;
}

QAPair ProcessPair(const ContextKeyphrasePair& pair, const std::string& question,
                   const PipelineConfig& config, Client& client) {
  QAPair out;
  out.article_id = pair.article_id;
  out.keyphrase = pair.keyphrase;
  out.keyphrase_rank = pair.keyphrase_rank;
  out.sentence_index = pair.sentence_index;
  out.context = pair.context;
  out.question = question;

  FilterResult filtered =
      AdversarialFilter(question, pair.context, client, config.null_threshold);
  out.verdict = filtered.verdict;
  out.qa_score = filtered.answer.score;
  out.answer = filtered.answer.answer_text;
  out.answer_start = filtered.answer.start;
  out.answer_end = filtered.answer.end;

  if (out.verdict == Verdict::kKept) {
    ToxicityResult tox =
        ToxicityGate(question, out.answer, client, config.toxicity_threshold);
    out.toxicity = tox.score;
    if (tox.toxic) out.verdict = Verdict::kToxic;
  }
  return out;
}

ArticleRun GenerateFromDocument(ResolvedDocument doc, const PipelineConfig& config,
                                Client& client, bool baseline) {
  ArticleRun run;
  run.document = std::move(doc);
  std::vector<Candidate> candidates = ExtractCandidates(run.document);
  if (candidates.empty()) return run;

  const Embedding doc_embedding = client.Embed({run.document.resolved}).front();
  EmbedCandidates(candidates, client);
  const std::vector<ScoredKeyphrase> ranked =
      RankMmr(doc_embedding, candidates, config.mmr_lambda, config.top_k_keyphrases);
  run.contexts = PairContexts(ranked, run.document, config.window);

  run.pairs.reserve(run.contexts.size());
  for (const ContextKeyphrasePair& ctx : run.contexts) {
    const std::string question = client.Generate(ctx.context, ctx.keyphrase).question;
    QAPair p = ProcessPair(ctx, question, config, client);
    p.baseline = baseline;
    run.pairs.push_back(std::move(p));
  }
  if (config.dedupe) run.pairs = Dedupe(std::move(run.pairs));
  return run;
}

namespace {

void RequireValid(const Article& article, const PipelineConfig& config) {
  const ArticleVerdict v = ValidateArticle(article, config.min_words);
  if (!v.valid) {
    throw Error(ErrorCode::kInvalidArticle,
                "article invalid: '" + article.id + "' has " +
                    std::to_string(v.word_count) + " words, need " +
                    std::to_string(config.min_words));
  }
}

}  // namespace

ArticleRun RunArticle(const Article& article, const PipelineConfig& config,
                      Client& client) {
  config.Validate();
  RequireValid(article, config);
  ResolvedDocument doc = ResolveCoreferences(article, client, config.coref_policy);
  return GenerateFromDocument(std::move(doc), config, client, /*baseline=*/false);
}

ArticleRun RunBaselineSummarization(const Article& article,
                                    const PipelineConfig& config, Client& client) {
  config.Validate();
  RequireValid(article, config);
  ResolvedDocument doc = ResolveCoreferences(article, client, config.coref_policy);
  std::vector<std::string> summaries;
  for (const Chunk& chunk : ChunkDocument(doc, config.max_input_tokens, client)) {
    summaries.push_back(std::string(text::Trim(client.Summarize(chunk.text))));
  }
  ResolvedDocument summary = MakeDocument(article.id, text::Join(summaries, " "));
  return GenerateFromDocument(std::move(summary), config, client, /*baseline=*/true);
}

}  // namespace qforge
