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

#include "stub_backend.h"

#include <unordered_map>

#include "error.h"
#include "text_util.h"
#include "textproc.h"

namespace qforge {
namespace {

constexpr std::string_view kAboutPrefix = "What does the article say about ";
constexpr std::string_view kIsPrefix = "What is ";

std::vector<std::string_view> Lines(std::string_view contents) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos <= contents.size()) {
    size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::Trim(line);
    if (!line.empty()) out.push_back(line);
    pos = nl + 1;
  }
  return out;
}

bool IsAsciiPunct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::unordered_set<std::string> ParseBlocklist(std::string_view contents) {
  std::unordered_set<std::string> out;
  for (std::string_view line : Lines(contents)) out.insert(text::ToLower(line));
  return out;
}

std::vector<std::pair<std::string, std::string>> ParseCorefTable(
    std::string_view contents) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::string_view line : Lines(contents)) {
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "coref table: expected mention=antecedent, got '" +
                      std::string(line) + "'");
    }
    out.emplace_back(std::string(text::Trim(line.substr(0, eq))),
                     std::string(text::Trim(line.substr(eq + 1))));
  }
  return out;
}

uint64_t Fnv1a64(std::string_view bytes, uint64_t hash) {
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ull;
  }
  return hash;
}

Embedding StubEmbedding(std::string_view text) {
  Embedding v(kStubEmbeddingDim, 0.0);
  size_t i = 0;
  while (i < text.size()) {
    if (!text::IsWordByte(text[i])) {
      ++i;
      continue;
    }
    size_t b = i;
    while (i < text.size() && text::IsWordByte(text[i])) ++i;
    const std::string token = text::ToLower(text.substr(b, i - b));
    const uint64_t prefix = Fnv1a64(token);
    for (size_t d = 0; d < kStubEmbeddingDim; ++d) {
      const char byte = static_cast<char>(d);
      const uint64_t h = Fnv1a64(std::string_view(&byte, 1), prefix);
      v[d] += static_cast<double>(h % 2000001ull) / 1000000.0 - 1.0;
    }
  }
  NormalizeL2(v);
  return v;
}

StubBackend::StubBackend(StubOptions options) : options_(std::move(options)) {}

std::string StubBackend::Identity() const { return "stub/v1"; }

void StubBackend::MaybeFail(std::string_view input) const {
  if (!options_.fail_marker.empty() &&
      input.find(options_.fail_marker) != std::string_view::npos) {
    throw Error(ErrorCode::kBackendUnavailable, "stub: injected failure");
  }
}

HealthResponse StubBackend::Health() {
  return HealthResponse{true,
                        {"embed", "coref", "generate", "answer", "toxicity",
                         "summarize", "count_tokens"}};
}

std::vector<Embedding> StubBackend::Embed(const std::vector<std::string>& texts) {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    MaybeFail(t);
    out.push_back(StubEmbedding(t));
  }
  return out;
}

std::string StubBackend::ResolveCoref(const std::string& text) {
  MaybeFail(text);
  if (options_.coref_table.empty()) return text;
  std::unordered_map<std::string_view, std::string_view> table;
  for (const auto& [mention, antecedent] : options_.coref_table) {
    table.emplace(mention, antecedent);
  }
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (!text::IsWordByte(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    size_t b = i;
    while (i < text.size() && text::IsWordByte(text[i])) ++i;
    std::string_view word(text.data() + b, i - b);
    auto it = table.find(word);
    out += it == table.end() ? word : it->second;
  }
  return out;
}

GenerationResponse StubBackend::Generate(const std::string& context,
                                         const std::string& keyphrase) {
  MaybeFail(context);
  if (text::ContainsIgnoreCase(context, keyphrase)) {
    return {std::string(kAboutPrefix) + keyphrase + "?", std::nullopt};
  }
  return {std::string(kIsPrefix) + keyphrase + "?", std::nullopt};
}

AnswerResponse StubBackend::Answer(const std::string& question,
                                   const std::string& context) {
  MaybeFail(context);
  std::string_view q = text::Trim(question);
  if (!q.empty() && q.back() == '?') q.remove_suffix(1);
  std::string_view key;
  if (StartsWith(q, kAboutPrefix)) {
    key = q.substr(kAboutPrefix.size());
  } else if (StartsWith(q, kIsPrefix)) {
    key = q.substr(kIsPrefix.size());
  }
  AnswerResponse r;
  if (key.empty()) return r;
  const std::string needle = text::ToLower(key);
  for (const SentenceSpan& s : SplitSentences(context)) {
    if (text::ToLower(s.text).find(needle) != std::string::npos) {
      r.no_answer = false;
      r.answer_text = s.text;
      r.score = kStubAnswerScore;
      r.start = s.start;
      r.end = s.end;
      return r;
    }
  }
  return r;
}

double StubBackend::Toxicity(const std::string& text) {
  MaybeFail(text);
  for (std::string_view token : text::SplitWhitespace(text)) {
    std::string cleaned;
    for (char c : token) {
      if (!IsAsciiPunct(c)) cleaned.push_back(text::ToLower(c));
    }
    if (!cleaned.empty() && options_.blocklist.count(cleaned)) return 1.0;
  }
  return 0.0;
}

std::string StubBackend::Summarize(const std::string& text) {
  MaybeFail(text);
  std::vector<SentenceSpan> sentences = SplitSentences(text);
  if (sentences.empty()) throw Error(ErrorCode::kProtocol, "summarize: empty input");
  return sentences.front().text;
}

int64_t StubBackend::CountTokens(const std::string& text) {
  MaybeFail(text);
  return static_cast<int64_t>(text::CountWords(text));
}

}  // namespace qforge
