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

#include "textproc.h"

#include <algorithm>

#include "error.h"
#include "text_util.h"

namespace qforge {
namespace {

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsCloser(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool IsOpener(char c) { return c == '"' || c == '\'' || c == '('; }

// The whitespace-delimited token ending at `dot` (inclusive), minus any
// leading opening punctuation.
std::string_view TokenEndingAt(std::string_view text, size_t dot) {
  size_t b = dot;
  while (b > 0 && !text::IsSpace(text[b - 1])) --b;
  while (b < dot && IsOpener(text[b])) ++b;
  return text.substr(b, dot + 1 - b);
}

}  // namespace

const std::vector<std::string>& DefaultAbbreviations() {
  static const std::vector<std::string> kAbbrev = {
      "Mr.", "Mrs.", "Dr.", "U.S.", "St.", "vs.", "etc.", "e.g.", "i.e."};
  return kAbbrev;
}

std::vector<SentenceSpan> SplitSentences(
    std::string_view text, const std::vector<std::string>& abbreviations) {
  std::vector<SentenceSpan> spans;
  const size_t n = text.size();
  auto skip_space = [&](size_t p) {
    while (p < n && text::IsSpace(text[p])) ++p;
    return p;
  };
  auto emit = [&](size_t b, size_t e) {
    while (e > b && text::IsSpace(text[e - 1])) --e;
    if (e <= b) return;
    spans.push_back(SentenceSpan{spans.size(), b, e,
                                 std::string(text.substr(b, e - b))});
  };

  size_t sentence_start = skip_space(0);
  size_t i = sentence_start;
  while (i < n) {
    if (!IsTerminator(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && IsTerminator(text[j])) ++j;
    const size_t run_end = j;
    while (j < n && IsCloser(text[j])) ++j;

    bool boundary = false;
    if (j == n) {
      boundary = true;
    } else if (text::IsSpace(text[j])) {
      size_t k = skip_space(j);
      boundary = k == n || text::IsUpper(text[k]) ||
                 (IsOpener(text[k]) && k + 1 < n && text::IsUpper(text[k + 1]));
    }
    if (boundary && run_end == i + 1 && text[i] == '.') {
      std::string_view token = TokenEndingAt(text, i);
      if (std::find(abbreviations.begin(), abbreviations.end(), token) !=
          abbreviations.end()) {
        boundary = false;
      }
    }
    if (boundary) {
      emit(sentence_start, j);
      sentence_start = skip_space(j);
      i = sentence_start;
    } else {
      i = j;
    }
  }
  if (sentence_start < n) emit(sentence_start, n);
  return spans;
}

ResolvedDocument MakeDocument(std::string article_id, std::string text) {
  ResolvedDocument doc;
  doc.article_id = std::move(article_id);
  doc.original = text;
  doc.resolved = std::move(text);
  doc.sentences = SplitSentences(doc.resolved);
  return doc;
}

ResolvedDocument ResolveCoreferences(const Article& article, Client& client,
                                     CorefPolicy policy) {
  ResolvedDocument doc;
  doc.article_id = article.id;
  doc.original = article.body;
  try {
    doc.resolved = client.ResolveCoref(article.body);
  } catch (const Error& e) {
    if (policy == CorefPolicy::kFail) throw;
    doc.resolved = article.body;
    doc.coref_fallback = true;
    doc.coref_error = e.what();
  }
  doc.coref_applied = doc.resolved != doc.original;
  doc.sentences = SplitSentences(doc.resolved);
  return doc;
}

std::vector<Chunk> ChunkDocument(const ResolvedDocument& doc,
                                 int64_t max_input_tokens, Client& counter) {
  if (max_input_tokens < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_input_tokens must be >= 1");
  }
  std::vector<Chunk> chunks;
  Chunk current;
  bool open = false;
  auto close = [&]() {
    if (!open) return;
    const auto& first = doc.sentences[current.first_sentence];
    const auto& last = doc.sentences[current.end_sentence - 1];
    current.text = doc.resolved.substr(first.start, last.end - first.start);
    chunks.push_back(std::move(current));
    current = Chunk{};
    open = false;
  };

  for (const SentenceSpan& s : doc.sentences) {
    const int64_t count = counter.CountTokens(s.text);
    if (count >= max_input_tokens) {
      close();
      current = Chunk{s.index, s.index + 1, {}, count, true};
      open = true;
      close();
      continue;
    }
    if (open && current.token_count + count < max_input_tokens) {
      current.end_sentence = s.index + 1;
      current.token_count += count;
      continue;
    }
    close();
    current = Chunk{s.index, s.index + 1, {}, count, false};
    open = true;
  }
  close();
  return chunks;
}

}  // namespace qforge
