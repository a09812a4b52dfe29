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

#include "backend.h"

#include <algorithm>
#include <cmath>

#include "error.h"
#include "text_util.h"

namespace qforge {
namespace {

[[noreturn]] void Violation(const std::string& what) {
  throw Error(ErrorCode::kProtocol, what);
}

}  // namespace

// RAII permit on the in-flight semaphore.
class Client::Slot {
 public:
  explicit Slot(std::counting_semaphore<1024>& sem) : sem_(sem) { sem_.acquire(); }
  ~Slot() { sem_.release(); }
  Slot(const Slot&) = delete;
  Slot& operator=(const Slot&) = delete;

 private:
  std::counting_semaphore<1024>& sem_;
};

void NormalizeL2(Embedding& v) {
  double sq = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) Violation("embedding has a non-finite component");
    sq += x * x;
  }
  if (sq <= 0.0) Violation("embedding is the zero vector");
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
}

double Dot(const Embedding& a, const Embedding& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool IsNoAnswerSentinel(std::string_view answer) {
  std::string_view t = text::Trim(answer);
  return t.empty() || t == "<s>" || t == "</s>" || t == "[CLS]";
}

Client::Client(std::shared_ptr<Backend> backend, ClientOptions options)
    : backend_(std::move(backend)),
      options_(options),
      in_flight_(std::clamp(options.max_in_flight, 1, 1024)) {
  if (!backend_) throw Error(ErrorCode::kInvalidArgument, "null backend");
  if (options_.max_batch == 0) options_.max_batch = 1;
}

HealthResponse Client::Health() {
  Slot slot(in_flight_);
  return backend_->Health();
}

std::vector<Embedding> Client::Embed(const std::vector<std::string>& texts) {
  if (texts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "embed: empty batch");
  }
  for (const auto& t : texts) {
    if (t.empty()) throw Error(ErrorCode::kInvalidArgument, "embed: empty text");
  }
  std::vector<Embedding> out;
  out.reserve(texts.size());
  size_t dim = 0;
  for (size_t begin = 0; begin < texts.size(); begin += options_.max_batch) {
    const size_t end = std::min(texts.size(), begin + options_.max_batch);
    std::vector<std::string> batch(texts.begin() + begin, texts.begin() + end);
    std::vector<Embedding> vectors;
    {
      Slot slot(in_flight_);
      vectors = backend_->Embed(batch);
    }
    if (vectors.size() != batch.size()) {
      Violation("embed: expected " + std::to_string(batch.size()) +
                " vectors, got " + std::to_string(vectors.size()));
    }
    for (Embedding& v : vectors) {
      if (v.empty()) Violation("embed: empty vector");
      if (dim == 0) dim = v.size();
      if (v.size() != dim) Violation("embed: inconsistent vector dimension");
      NormalizeL2(v);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::string Client::ResolveCoref(const std::string& text) {
  std::string resolved;
  {
    Slot slot(in_flight_);
    resolved = backend_->ResolveCoref(text);
  }
  if (!text::Trim(text).empty() && text::Trim(resolved).empty()) {
    Violation("coref: empty resolution for non-empty text");
  }
  return resolved;
}

GenerationResponse Client::Generate(const std::string& context,
                                    const std::string& keyphrase) {
  if (context.empty() || keyphrase.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "generate: empty context or keyphrase");
  }
  GenerationResponse r;
  {
    Slot slot(in_flight_);
    r = backend_->Generate(context, keyphrase);
  }
  r.question = std::string(text::Trim(r.question));
  if (r.question.empty()) Violation("generate: empty question");
  if (r.question.back() != '?') r.question.push_back('?');
  if (r.gen_score && !std::isfinite(*r.gen_score)) {
    Violation("generate: non-finite score");
  }
  return r;
}

AnswerResponse Client::Answer(const std::string& question,
                              const std::string& context) {
  if (question.empty() || context.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "answer: empty question or context");
  }
  AnswerResponse r;
  {
    Slot slot(in_flight_);
    r = backend_->Answer(question, context);
  }
  if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
    Violation("answer: score outside [0,1]");
  }
  if (!r.no_answer && IsNoAnswerSentinel(r.answer_text)) r.no_answer = true;
  if (r.no_answer) {
    r.answer_text.clear();
    r.start.reset();
    r.end.reset();
    return r;
  }
  if (r.start.has_value() != r.end.has_value()) {
    Violation("answer: only one of start/end present");
  }
  if (!r.start) {
    size_t pos = context.find(r.answer_text);
    if (pos == std::string::npos) Violation("answer: span not in context");
    r.start = pos;
    r.end = pos + r.answer_text.size();
  }
  if (*r.start > *r.end || *r.end > context.size() ||
      context.compare(*r.start, *r.end - *r.start, r.answer_text) != 0) {
    Violation("answer: offsets do not slice context to the answer text");
  }
  return r;
}

double Client::Toxicity(const std::string& text) {
  if (text.empty()) throw Error(ErrorCode::kInvalidArgument, "toxicity: empty text");
  double score;
  {
    Slot slot(in_flight_);
    score = backend_->Toxicity(text);
  }
  if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
    Violation("toxicity: score outside [0,1]");
  }
  return score;
}

std::string Client::Summarize(const std::string& text) {
  if (text::Trim(text).empty()) Violation("summarize: empty input");
  std::string summary;
  {
    Slot slot(in_flight_);
    summary = backend_->Summarize(text);
  }
  if (text::Trim(summary).empty()) Violation("summarize: empty summary");
  return summary;
}

int64_t Client::CountTokens(const std::string& text) {
  int64_t n;
  {
    Slot slot(in_flight_);
    n = backend_->CountTokens(text);
  }
  if (n < 0) Violation("count_tokens: negative count");
  return n;
}

}  // namespace qforge
