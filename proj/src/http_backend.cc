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

#include "http_backend.h"

#include <chrono>
#include <thread>

#include "error.h"
#include "httplib.h"
#include "json.hpp"

namespace qforge {
namespace {

using nlohmann::json;

bool Retryable(int status) {
  return status == 429 || status == 502 || status == 503 || status == 504;
}

json ParseBody(const std::string& endpoint, const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::kProtocol, endpoint + ": reply is not an object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProtocol, endpoint + ": malformed reply: " + e.what());
  }
}

template <typename T>
T Field(const json& j, const char* key, const std::string& endpoint) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kProtocol, endpoint + ": reply lacks \"" + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kProtocol, endpoint + ": bad type for \"" + key + "\"");
  }
}

}  // namespace

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  const std::string& url = options_.base_url;
  size_t scheme_end = url.find("://");
  size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  size_t path_start = url.find('/', host_start);
  if (path_start == std::string::npos) {
    scheme_host_port_ = url;
  } else {
    scheme_host_port_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
  if (scheme_host_port_.size() == host_start) {
    throw Error(ErrorCode::kInvalidArgument, "backend url has no host: " + url);
  }
  if (options_.timeout_ms <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "timeout_ms must be > 0");
  }
  if (options_.max_retries < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_retries must be >= 0");
  }
}

std::string HttpBackend::Identity() const { return "http:" + options_.base_url; }

std::string HttpBackend::Call(const std::string& method,
                              const std::string& endpoint,
                              const std::string& body) {
  const std::string path = path_prefix_ + endpoint;
  const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
    }
    // One client per call keeps HttpBackend safe for concurrent use.
    httplib::Client cli(scheme_host_port_);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    httplib::Result res = method == "GET"
                              ? cli.Get(path)
                              : cli.Post(path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return res->body;
    std::string message = "HTTP " + std::to_string(res->status);
    try {
      json j = json::parse(res->body);
      if (j.is_object() && j.contains("error") && j["error"].is_string()) {
        message += ": " + j["error"].get<std::string>();
      }
    } catch (const json::exception&) {
    }
    if (Retryable(res->status)) {
      last_error = message;
      continue;
    }
    throw Error(ErrorCode::kProtocol, endpoint + ": " + message);
  }
  throw Error(ErrorCode::kBackendUnavailable,
              endpoint + ": " + last_error + " after " +
                  std::to_string(options_.max_retries + 1) + " attempt(s)");
}

HealthResponse HttpBackend::Health() {
  const std::string ep = "/v1/health";
  json j = ParseBody(ep, Call("GET", ep, ""));
  HealthResponse r;
  r.ok = Field<bool>(j, "ok", ep);
  if (j.contains("capabilities")) {
    r.capabilities = Field<std::vector<std::string>>(j, "capabilities", ep);
  }
  return r;
}

std::vector<Embedding> HttpBackend::Embed(const std::vector<std::string>& texts) {
  const std::string ep = "/v1/embed";
  json j = ParseBody(ep, Call("POST", ep, json{{"texts", texts}}.dump()));
  auto vectors = Field<std::vector<Embedding>>(j, "vectors", ep);
  if (j.contains("dim")) {
    const auto dim = Field<size_t>(j, "dim", ep);
    for (const auto& v : vectors) {
      if (v.size() != dim) throw Error(ErrorCode::kProtocol, ep + ": vector size != dim");
    }
  }
  return vectors;
}

std::string HttpBackend::ResolveCoref(const std::string& text) {
  const std::string ep = "/v1/coref";
  json j = ParseBody(ep, Call("POST", ep, json{{"text", text}}.dump()));
  return Field<std::string>(j, "resolved", ep);
}

GenerationResponse HttpBackend::Generate(const std::string& context,
                                         const std::string& keyphrase) {
  const std::string ep = "/v1/generate";
  json j = ParseBody(
      ep, Call("POST", ep, json{{"context", context}, {"keyphrase", keyphrase}}.dump()));
  GenerationResponse r;
  r.question = Field<std::string>(j, "question", ep);
  if (j.contains("score") && !j["score"].is_null()) {
    r.gen_score = Field<double>(j, "score", ep);
  }
  return r;
}

AnswerResponse HttpBackend::Answer(const std::string& question,
                                   const std::string& context) {
  const std::string ep = "/v1/answer";
  json j = ParseBody(
      ep, Call("POST", ep, json{{"question", question}, {"context", context}}.dump()));
  AnswerResponse r;
  r.answer_text = Field<std::string>(j, "answer", ep);
  r.no_answer = Field<bool>(j, "no_answer", ep);
  r.score = Field<double>(j, "score", ep);
  if (j.contains("start") && !j["start"].is_null()) r.start = Field<size_t>(j, "start", ep);
  if (j.contains("end") && !j["end"].is_null()) r.end = Field<size_t>(j, "end", ep);
  return r;
}

double HttpBackend::Toxicity(const std::string& text) {
  const std::string ep = "/v1/toxicity";
  json j = ParseBody(ep, Call("POST", ep, json{{"text", text}}.dump()));
  return Field<double>(j, "toxicity", ep);
}

std::string HttpBackend::Summarize(const std::string& text) {
  const std::string ep = "/v1/summarize";
  json j = ParseBody(ep, Call("POST", ep, json{{"text", text}}.dump()));
  return Field<std::string>(j, "summary", ep);
}

int64_t HttpBackend::CountTokens(const std::string& text) {
  const std::string ep = "/v1/count_tokens";
  json j = ParseBody(ep, Call("POST", ep, json{{"text", text}}.dump()));
  return Field<int64_t>(j, "count", ep);
}

}  // namespace qforge
