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

#include "config.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "corpus.h"
#include "error.h"
#include "http_backend.h"
#include "stub_backend.h"
#include "text_util.h"

namespace qforge {
namespace {

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kInvalidArgument, "invalid value for " +
                                               std::string(key) + ": '" +
                                               std::string(value) + "'");
}

template <typename T>
T ParseInt(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) BadValue(key, value);
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  std::string s(value);
  size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    BadValue(key, value);
  }
  if (used != s.size() || !std::isfinite(out)) BadValue(key, value);
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  BadValue(key, value);
}

std::string FormatDouble(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

void PipelineConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (top_k_keyphrases < 1) fail("top_k_keyphrases must be >= 1");
  if (!(mmr_lambda >= 0.0 && mmr_lambda <= 1.0)) fail("mmr_lambda must be in [0,1]");
  if (max_input_tokens < 16) fail("max_input_tokens must be >= 16");
  if (!(null_threshold >= 0.0 && null_threshold <= 1.0)) {
    fail("null_threshold must be in [0,1]");
  }
  if (!(toxicity_threshold >= 0.0 && toxicity_threshold <= 1.0)) {
    fail("toxicity_threshold must be in [0,1]");
  }
  if (min_words < 1) fail("min_words must be >= 1");
}

void Settings::Set(std::string_view key, std::string_view raw) {
  const std::string_view value = text::Trim(raw);
  PipelineConfig& p = pipeline;
  BackendSettings& b = backend;
  if (key == "top_k_keyphrases") {
    p.top_k_keyphrases = ParseInt<size_t>(key, value);
  } else if (key == "mmr_lambda") {
    p.mmr_lambda = ParseDouble(key, value);
  } else if (key == "window") {
    p.window = ParseInt<size_t>(key, value);
  } else if (key == "max_input_tokens") {
    p.max_input_tokens = ParseInt<int64_t>(key, value);
  } else if (key == "null_threshold") {
    p.null_threshold = ParseDouble(key, value);
  } else if (key == "toxicity_threshold") {
    p.toxicity_threshold = ParseDouble(key, value);
  } else if (key == "dedupe") {
    p.dedupe = ParseBool(key, value);
  } else if (key == "coref_policy") {
    if (value == "fallback") {
      p.coref_policy = CorefPolicy::kFallback;
    } else if (value == "fail") {
      p.coref_policy = CorefPolicy::kFail;
    } else {
      BadValue(key, value);
    }
  } else if (key == "min_words") {
    p.min_words = ParseInt<int>(key, value);
  } else if (key == "backend") {
    if (value.empty()) BadValue(key, value);
    b.backend = std::string(value);
  } else if (key == "timeout_ms") {
    b.timeout_ms = ParseInt<int>(key, value);
    if (b.timeout_ms <= 0) BadValue(key, value);
  } else if (key == "max_retries") {
    b.max_retries = ParseInt<int>(key, value);
    if (b.max_retries < 0) BadValue(key, value);
  } else if (key == "max_batch") {
    b.max_batch = ParseInt<size_t>(key, value);
    if (b.max_batch == 0) BadValue(key, value);
  } else if (key == "max_in_flight") {
    b.max_in_flight = ParseInt<int>(key, value);
    if (b.max_in_flight <= 0) BadValue(key, value);
  } else if (key == "stub_blocklist") {
    b.stub_blocklist = std::string(value);
  } else if (key == "stub_coref_table") {
    b.stub_coref_table = std::string(value);
  } else if (key == "stub_fail_marker") {
    b.stub_fail_marker = std::string(value);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown config key: " + std::string(key));
  }
}

void Settings::Parse(std::string_view contents) {
  size_t pos = 0;
  int line_no = 0;
  while (pos < contents.size()) {
    size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    line = text::Trim(line);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key=value");
    }
    Set(text::Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void Settings::LoadFile(const std::string& path) { Parse(ReadFile(path)); }

std::map<std::string, std::string> Settings::Snapshot() const {
  const PipelineConfig& p = pipeline;
  const BackendSettings& b = backend;
  return {
      {"top_k_keyphrases", std::to_string(p.top_k_keyphrases)},
      {"mmr_lambda", FormatDouble(p.mmr_lambda)},
      {"window", std::to_string(p.window)},
      {"max_input_tokens", std::to_string(p.max_input_tokens)},
      {"null_threshold", FormatDouble(p.null_threshold)},
      {"toxicity_threshold", FormatDouble(p.toxicity_threshold)},
      {"dedupe", p.dedupe ? "true" : "false"},
      {"coref_policy", p.coref_policy == CorefPolicy::kFail ? "fail" : "fallback"},
      {"min_words", std::to_string(p.min_words)},
      {"backend", b.backend},
      {"timeout_ms", std::to_string(b.timeout_ms)},
      {"max_retries", std::to_string(b.max_retries)},
      {"max_batch", std::to_string(b.max_batch)},
      {"max_in_flight", std::to_string(b.max_in_flight)},
      {"stub_blocklist", b.stub_blocklist},
      {"stub_coref_table", b.stub_coref_table},
      {"stub_fail_marker", b.stub_fail_marker},
  };
}

std::string Settings::Dump() const {
  std::string out;
  for (const auto& [k, v] : Snapshot()) out += k + "=" + v + "\n";
  return out;
}

std::unique_ptr<Client> MakeClient(const BackendSettings& settings) {
  std::shared_ptr<Backend> backend;
  if (settings.backend == "stub") {
    StubOptions opts;
    if (!settings.stub_blocklist.empty()) {
      opts.blocklist = ParseBlocklist(ReadFile(settings.stub_blocklist));
    }
    if (!settings.stub_coref_table.empty()) {
      opts.coref_table = ParseCorefTable(ReadFile(settings.stub_coref_table));
    }
    opts.fail_marker = settings.stub_fail_marker;
    backend = std::make_shared<StubBackend>(std::move(opts));
  } else {
    backend = std::make_shared<HttpBackend>(HttpBackendOptions{
        settings.backend, settings.timeout_ms, settings.max_retries});
  }
  return std::make_unique<Client>(
      std::move(backend), ClientOptions{settings.max_batch, settings.max_in_flight});
}

}  // namespace qforge
