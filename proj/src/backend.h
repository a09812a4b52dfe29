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

#ifndef QFORGE_SRC_BACKEND_H_
#define QFORGE_SRC_BACKEND_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

namespace qforge {

using Embedding = std::vector<double>;

struct AnswerResponse {
  std::string answer_text;
  bool no_answer = true;
  double score = 0.0;
  // Byte offsets into the context passed to Answer(); absent on no_answer.
  std::optional<size_t> start;
  std::optional<size_t> end;
};

struct GenerationResponse {
  std::string question;
  std::optional<double> gen_score;
};

struct HealthResponse {
  bool ok = false;
  std::vector<std::string> capabilities;
};

// Raw model endpoints (wire protocol v1). Implementations report transport
// problems as Error(kBackendUnavailable) and malformed replies as
// Error(kProtocol); they do not have to enforce response invariants, Client
// does that. Implementations must be safe for concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;

  // Short human-readable identity recorded in run manifests.
  virtual std::string Identity() const = 0;

  virtual HealthResponse Health() = 0;
  virtual std::vector<Embedding> Embed(const std::vector<std::string>& texts) = 0;
  virtual std::string ResolveCoref(const std::string& text) = 0;
  virtual GenerationResponse Generate(const std::string& context,
                                      const std::string& keyphrase) = 0;
  virtual AnswerResponse Answer(const std::string& question,
                                const std::string& context) = 0;
  virtual double Toxicity(const std::string& text) = 0;
  virtual std::string Summarize(const std::string& text) = 0;
  virtual int64_t CountTokens(const std::string& text) = 0;
};

struct ClientOptions {
  size_t max_batch = 32;
  // Upper bound on concurrently outstanding backend calls.
  int max_in_flight = 8;
};

// Validating facade over a Backend. Every server-side invariant is checked
// here and violations become Error(kProtocol), so callers never see a vector
// that is not unit-norm, a score outside [0,1], or an answer that is not a
// verbatim slice of its context.
class Client {
 public:
  explicit Client(std::shared_ptr<Backend> backend, ClientOptions options = {});

  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;

  const Backend& backend() const { return *backend_; }
  std::string Identity() const { return backend_->Identity(); }

  HealthResponse Health();
  std::vector<Embedding> Embed(const std::vector<std::string>& texts);
  std::string ResolveCoref(const std::string& text);
  GenerationResponse Generate(const std::string& context,
                              const std::string& keyphrase);
  AnswerResponse Answer(const std::string& question, const std::string& context);
  double Toxicity(const std::string& text);
  std::string Summarize(const std::string& text);
  int64_t CountTokens(const std::string& text);

 private:
  class Slot;

  std::shared_ptr<Backend> backend_;
  ClientOptions options_;
  std::counting_semaphore<1024> in_flight_;
};

// Normalizes `v` to unit L2 norm in place. Throws Error(kProtocol) on a zero
// or non-finite vector.
void NormalizeL2(Embedding& v);
double Dot(const Embedding& a, const Embedding& b);

// True for the delimiter-only outputs extractive QA heads emit when they
// decline to answer.
bool IsNoAnswerSentinel(std::string_view answer);

}  // namespace qforge

#endif  // QFORGE_SRC_BACKEND_H_
