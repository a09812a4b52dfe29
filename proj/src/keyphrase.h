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

#ifndef QFORGE_SRC_KEYPHRASE_H_
#define QFORGE_SRC_KEYPHRASE_H_

#include <string>
#include <unordered_set>
#include <vector>

#include "backend.h"
#include "textproc.h"

namespace qforge {

using Stoplist = std::unordered_set<std::string>;

// English stopwords used for n-gram boundary filtering.
const Stoplist& DefaultStoplist();

struct Candidate {
  std::string phrase;  // lowercased
  int ngram_len = 1;
  size_t first_sentence_index = 0;
  Embedding embedding;  // filled by EmbedCandidates
};

struct ScoredKeyphrase {
  std::string phrase;
  double relevance = 0.0;  // cosine similarity to the document
  size_t rank = 0;
};

struct ContextKeyphrasePair {
  std::string article_id;
  std::string keyphrase;
  size_t keyphrase_rank = 0;
  size_t sentence_index = 0;
  std::string context;
  // Byte range of `context` inside the document's resolved text.
  size_t context_start = 0;
  size_t context_end = 0;
};

// All 1..max_n grams of word tokens inside each sentence, lowercased, with
// no stopword at either end, deduplicated keeping the earliest sentence.
// Adjacent tokens only form a phrase when a single space separates them in
// the source, so every phrase is findable in its sentence.
std::vector<Candidate> ExtractCandidates(const ResolvedDocument& doc,
                                         const Stoplist& stoplist = DefaultStoplist(),
                                         int min_n = 1, int max_n = 3);

void EmbedCandidates(std::vector<Candidate>& candidates, Client& client);

// Maximal marginal relevance. The first pick is the most document-similar
// candidate; each following pick maximizes
//   lambda * cos(c, doc) - (1 - lambda) * max_{s in selected} cos(c, s).
// Ties go to the lexicographically smaller phrase.
std::vector<ScoredKeyphrase> RankMmr(const Embedding& doc_embedding,
                                     const std::vector<Candidate>& candidates,
                                     double lambda, size_t k);

std::vector<ContextKeyphrasePair> PairContexts(
    const std::vector<ScoredKeyphrase>& keyphrases, const ResolvedDocument& doc,
    size_t window);

}  // namespace qforge

#endif  // QFORGE_SRC_KEYPHRASE_H_
