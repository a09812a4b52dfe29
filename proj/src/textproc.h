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

#ifndef QFORGE_SRC_TEXTPROC_H_
#define QFORGE_SRC_TEXTPROC_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "backend.h"
#include "corpus.h"

namespace qforge {

struct SentenceSpan {
  size_t index = 0;
  size_t start = 0;  // byte offset, inclusive
  size_t end = 0;    // byte offset, exclusive
  std::string text;

  bool operator==(const SentenceSpan&) const = default;
};

struct ResolvedDocument {
  std::string article_id;
  std::string original;
  std::string resolved;
  std::vector<SentenceSpan> sentences;  // over `resolved`
  bool coref_applied = false;
  // Set when the coref backend failed and the identity fallback was used.
  bool coref_fallback = false;
  std::string coref_error;
};

struct Chunk {
  size_t first_sentence = 0;
  size_t end_sentence = 0;  // exclusive
  std::string text;
  int64_t token_count = 0;
  bool oversized = false;
};

enum class CorefPolicy { kFallback, kFail };

const std::vector<std::string>& DefaultAbbreviations();

// Rule-based segmentation: a sentence ends at a run of '.', '!' or '?'
// (plus closing quotes/brackets) that is followed by end of text, or by
// whitespace and then an uppercase letter. A lone '.' that closes a listed
// abbreviation never ends a sentence. Offsets are byte offsets into `text`.
std::vector<SentenceSpan> SplitSentences(
    std::string_view text,
    const std::vector<std::string>& abbreviations = DefaultAbbreviations());

// Builds a document over `text` without coreference resolution.
ResolvedDocument MakeDocument(std::string article_id, std::string text);

ResolvedDocument ResolveCoreferences(const Article& article, Client& client,
                                     CorefPolicy policy);

// Greedy packing: sentences are appended while the chunk's running token
// count stays below `max_input_tokens`. A sentence that alone reaches the
// budget becomes its own chunk, flagged oversized.
std::vector<Chunk> ChunkDocument(const ResolvedDocument& doc,
                                 int64_t max_input_tokens, Client& counter);

}  // namespace qforge

#endif  // QFORGE_SRC_TEXTPROC_H_
