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

#include "keyphrase.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "error.h"
#include "text_util.h"

namespace qforge {
namespace {

struct Token {
  size_t start;
  size_t end;
  std::string lower;
};

std::vector<Token> WordTokens(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    if (!text::IsWordByte(s[i])) {
      ++i;
      continue;
    }
    size_t b = i;
    while (i < s.size() && text::IsWordByte(s[i])) ++i;
    out.push_back(Token{b, i, text::ToLower(s.substr(b, i - b))});
  }
  return out;
}

}  // namespace

const Stoplist& DefaultStoplist() {
  static const Stoplist kWords = {
      "a", "about", "above", "after", "again", "against", "all", "also", "am",
      "an", "and", "any", "are", "as", "at", "be", "because", "been", "before",
      "being", "below", "between", "both", "but", "by", "can", "could", "did",
      "do", "does", "doing", "down", "during", "each", "few", "for", "from",
      "further", "had", "has", "have", "having", "he", "her", "here", "hers",
      "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is",
      "it", "its", "itself", "just", "me", "more", "most", "my", "myself", "no",
      "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other",
      "our", "ours", "ourselves", "out", "over", "own", "same", "she", "should",
      "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
      "themselves", "then", "there", "these", "they", "this", "those",
      "through", "to", "too", "under", "until", "up", "very", "was", "we",
      "were", "what", "when", "where", "which", "while", "who", "whom", "why",
      "will", "with", "would", "you", "your", "yours", "yourself",
      "yourselves", "said", "says", "s", "t", "whether", "next",
      "near", "without", "according"};
  return kWords;
}

std::vector<Candidate> ExtractCandidates(const ResolvedDocument& doc,
                                         const Stoplist& stoplist, int min_n,
                                         int max_n) {
  if (min_n < 1 || max_n < min_n) {
    throw Error(ErrorCode::kInvalidArgument, "bad n-gram range");
  }
  std::vector<Candidate> out;
  std::unordered_map<std::string, size_t> seen;
  for (const SentenceSpan& sentence : doc.sentences) {
    const std::string_view s = sentence.text;
    const std::vector<Token> tokens = WordTokens(s);
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (stoplist.count(tokens[i].lower)) continue;
      std::string phrase;
      for (int n = 1; n <= max_n && i + n <= tokens.size(); ++n) {
        const Token& last = tokens[i + n - 1];
        if (n > 1) {
          const Token& prev = tokens[i + n - 2];
          if (last.start != prev.end + 1 || s[prev.end] != ' ') break;
          phrase += ' ';
        }
        phrase += last.lower;
        if (n < min_n || stoplist.count(last.lower)) continue;
        if (seen.emplace(phrase, out.size()).second) {
          out.push_back(Candidate{phrase, n, sentence.index, {}});
        }
      }
    }
  }
  return out;
}

void EmbedCandidates(std::vector<Candidate>& candidates, Client& client) {
  if (candidates.empty()) return;
  std::vector<std::string> phrases;
  phrases.reserve(candidates.size());
  for (const auto& c : candidates) phrases.push_back(c.phrase);
  std::vector<Embedding> vectors = client.Embed(phrases);
  for (size_t i = 0; i < candidates.size(); ++i) {
    candidates[i].embedding = std::move(vectors[i]);
  }
}

std::vector<ScoredKeyphrase> RankMmr(const Embedding& doc_embedding,
                                     const std::vector<Candidate>& candidates,
                                     double lambda, size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "mmr: k must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mmr: lambda must be in [0,1]");
  }
  for (const auto& c : candidates) {
    if (c.embedding.size() != doc_embedding.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mmr: dimension mismatch for '" + c.phrase + "'");
    }
  }

  const size_t n = candidates.size();
  std::vector<double> relevance(n);
  for (size_t i = 0; i < n; ++i) {
    relevance[i] = Dot(candidates[i].embedding, doc_embedding);
  }
  std::vector<double> max_sim(n, -std::numeric_limits<double>::infinity());
  std::vector<bool> taken(n, false);
  std::vector<ScoredKeyphrase> out;
  const size_t picks = std::min(k, n);
  out.reserve(picks);

  for (size_t step = 0; step < picks; ++step) {
    size_t best = n;
    double best_score = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double score =
          step == 0 ? relevance[i]
                    : lambda * relevance[i] - (1.0 - lambda) * max_sim[i];
      if (best == n || score > best_score ||
          (score == best_score && candidates[i].phrase < candidates[best].phrase)) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    out.push_back(ScoredKeyphrase{candidates[best].phrase, relevance[best], step});
    for (size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      max_sim[i] = std::max(max_sim[i],
                            Dot(candidates[i].embedding, candidates[best].embedding));
    }
  }
  return out;
}

std::vector<ContextKeyphrasePair> PairContexts(
    const std::vector<ScoredKeyphrase>& keyphrases, const ResolvedDocument& doc,
    size_t window) {
  std::vector<std::string> lowered;
  lowered.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) lowered.push_back(text::ToLower(s.text));

  std::vector<ScoredKeyphrase> ordered = keyphrases;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.rank < b.rank; });

  std::vector<ContextKeyphrasePair> out;
  for (const ScoredKeyphrase& kp : ordered) {
    const std::string needle = text::ToLower(kp.phrase);
    if (needle.empty()) continue;
    for (size_t i = 0; i < doc.sentences.size(); ++i) {
      if (lowered[i].find(needle) == std::string::npos) continue;
      const size_t lo = i >= window ? i - window : 0;
      const size_t hi = std::min(doc.sentences.size() - 1, i + window);
      ContextKeyphrasePair p;
      p.article_id = doc.article_id;
      p.keyphrase = kp.phrase;
      p.keyphrase_rank = kp.rank;
      p.sentence_index = i;
      p.context_start = doc.sentences[lo].start;
      p.context_end = doc.sentences[hi].end;
      p.context = doc.resolved.substr(p.context_start,
                                      p.context_end - p.context_start);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace qforge
