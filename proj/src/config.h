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

#ifndef QFORGE_SRC_CONFIG_H_
#define QFORGE_SRC_CONFIG_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "backend.h"
#include "textproc.h"

namespace qforge {

struct PipelineConfig {
  size_t top_k_keyphrases = 15;
  double mmr_lambda = 0.5;
  size_t window = 0;
  int64_t max_input_tokens = 512;
  double null_threshold = 0.5;
  double toxicity_threshold = 0.5;
  bool dedupe = true;
  CorefPolicy coref_policy = CorefPolicy::kFallback;
  int min_words = 500;

  // Throws Error(kInvalidArgument) on out-of-range values.
  void Validate() const;
};

struct BackendSettings {
  std::string backend = "stub";  // "stub" or an http(s) base URL
  int timeout_ms = 30000;
  int max_retries = 2;
  size_t max_batch = 32;
  int max_in_flight = 8;
  // Stub fixtures.
  std::string stub_blocklist;   // path
  std::string stub_coref_table; // path
  std::string stub_fail_marker;
};

// Everything a run is configured by. Serialized as flat key=value lines
// whose keys match the field names above.
struct Settings {
  PipelineConfig pipeline;
  BackendSettings backend;

  // Throws Error(kInvalidArgument) for an unknown key or unparsable value.
  void Set(std::string_view key, std::string_view value);
  // key=value lines; '#' comments and blank lines are ignored.
  void Parse(std::string_view contents);
  void LoadFile(const std::string& path);

  // Sorted key=value snapshot, suitable for Parse().
  std::map<std::string, std::string> Snapshot() const;
  std::string Dump() const;
};

std::unique_ptr<Client> MakeClient(const BackendSettings& settings);

}  // namespace qforge

#endif  // QFORGE_SRC_CONFIG_H_
