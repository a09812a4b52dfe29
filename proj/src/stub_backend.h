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

#ifndef QFORGE_SRC_STUB_BACKEND_H_
#define QFORGE_SRC_STUB_BACKEND_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "backend.h"

namespace qforge {

inline constexpr size_t kStubEmbeddingDim = 64;

struct StubOptions {
  // Lowercased words that make Toxicity() return 1.0.
  std::unordered_set<std::string> blocklist;
  // Whole-word replacements applied by ResolveCoref, e.g. {"He", "Dr. Smith"}.
  // Empty means identity.
  std::vector<std::pair<std::string, std::string>> coref_table;
  // When non-empty, any request whose input contains this string fails with
  // Error(kBackendUnavailable). Used to inject aborts in tests.
  std::string fail_marker;
};

// Parses a blocklist file: one word per line, '#' starts a comment.
std::unordered_set<std::string> ParseBlocklist(std::string_view contents);
// Parses a coref table: "mention=antecedent" per line, '#' comments.
std::vector<std::pair<std::string, std::string>> ParseCorefTable(
    std::string_view contents);

uint64_t Fnv1a64(std::string_view bytes, uint64_t hash = 14695981039346656037ull);

// Hash embedding: dimension 64; for each token t and component i,
// h = FNV-1a-64(bytes(t) + byte(i)) contributes (h mod 2000001)/1e6 - 1.
// Contributions are summed over tokens and the result L2-normalized.
// Tokens are maximal runs of word bytes, ASCII-lowercased.
Embedding StubEmbedding(std::string_view text);

// Deterministic, model-free implementation of every endpoint.
//   generate:  "What does the article say about <k>?" when <k> occurs in the
//              context (case-insensitive), otherwise "What is <k>?".
//   answer:    recovers <k> from either template; answers with the first
//              context sentence containing it (score 0.9) or no_answer (0.0).
//   toxicity:  1.0 iff a whitespace token, lowercased with ASCII punctuation
//              removed, is blocklisted.
//   summarize: the first sentence.
//   count_tokens: whitespace token count.
class StubBackend : public Backend {
 public:
  explicit StubBackend(StubOptions options = {});

  std::string Identity() const override;
  HealthResponse Health() override;
  std::vector<Embedding> Embed(const std::vector<std::string>& texts) override;
  std::string ResolveCoref(const std::string& text) override;
  GenerationResponse Generate(const std::string& context,
                              const std::string& keyphrase) override;
  AnswerResponse Answer(const std::string& question,
                        const std::string& context) override;
  double Toxicity(const std::string& text) override;
  std::string Summarize(const std::string& text) override;
  int64_t CountTokens(const std::string& text) override;

 private:
  void MaybeFail(std::string_view input) const;

  StubOptions options_;
};

inline constexpr double kStubAnswerScore = 0.9;

}  // namespace qforge

#endif  // QFORGE_SRC_STUB_BACKEND_H_
