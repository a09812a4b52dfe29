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

#ifndef QFORGE_SRC_QUESTION_GRAPH_H_
#define QFORGE_SRC_QUESTION_GRAPH_H_

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "pipeline.h"

namespace qforge {

// Keyphrase-keyed index of kept questions across articles. Nodes are keyed
// by the normalized keyphrase; each node lists pair ids in insertion order
// with set semantics. Safe for concurrent Link/Query calls.
class QuestionGraph {
 public:
  QuestionGraph() = default;
  QuestionGraph(const QuestionGraph& other);
  QuestionGraph& operator=(const QuestionGraph& other);

  static std::string NormalizeKey(std::string_view keyphrase);

  // Adds a Kept pair under its keyphrase and returns the ids that were
  // already there. Linking the same id twice is a no-op. Throws
  // Error(kInvalidArgument) for a pair that is not Kept.
  std::vector<std::string> Link(const QAPair& pair);

  std::vector<std::string> Query(std::string_view keyphrase) const;
  size_t NodeCount() const;

  // {"normalized keyphrase": ["id", ...], ...}
  std::string ToJson() const;
  static QuestionGraph FromJson(std::string_view json_text);
  void Save(const std::string& path) const;
  static QuestionGraph Load(const std::string& path);

  bool operator==(const QuestionGraph& other) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::vector<std::string>> nodes_;
};

}  // namespace qforge

#endif  // QFORGE_SRC_QUESTION_GRAPH_H_
