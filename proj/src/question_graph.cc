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

#include "question_graph.h"

#include <algorithm>

#include "corpus.h"
#include "error.h"
#include "json.hpp"
#include "text_util.h"

namespace qforge {

QuestionGraph::QuestionGraph(const QuestionGraph& other) {
  std::lock_guard<std::mutex> lock(other.mu_);
  nodes_ = other.nodes_;
}

QuestionGraph& QuestionGraph::operator=(const QuestionGraph& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  nodes_ = other.nodes_;
  return *this;
}

std::string QuestionGraph::NormalizeKey(std::string_view keyphrase) {
  return text::NormalizeSpace(keyphrase);
}

std::vector<std::string> QuestionGraph::Link(const QAPair& pair) {
  if (pair.verdict != Verdict::kKept) {
    throw Error(ErrorCode::kInvalidArgument,
                "only Kept pairs are linked (got " +
                    std::string(VerdictName(pair.verdict)) + ")");
  }
  const std::string id = pair.Id();
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string>& ids = nodes_[NormalizeKey(pair.keyphrase)];
  std::vector<std::string> related;
  related.reserve(ids.size());
  for (const auto& existing : ids) {
    if (existing != id) related.push_back(existing);
  }
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  return related;
}

std::vector<std::string> QuestionGraph::Query(std::string_view keyphrase) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = nodes_.find(NormalizeKey(keyphrase));
  if (it == nodes_.end()) return {};
  return it->second;
}

size_t QuestionGraph::NodeCount() const {
  std::lock_guard<std::mutex> lock(mu_);
  return nodes_.size();
}

std::string QuestionGraph::ToJson() const {
  std::lock_guard<std::mutex> lock(mu_);
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, ids] : nodes_) j[key] = ids;
  return j.dump(2) + "\n";
}

QuestionGraph QuestionGraph::FromJson(std::string_view json_text) {
  QuestionGraph g;
  try {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw Error(ErrorCode::kParse, "question graph: expected an object");
    for (const auto& [key, ids] : j.items()) {
      if (!ids.is_array()) {
        throw Error(ErrorCode::kParse, "question graph: node '" + key + "' is not an array");
      }
      auto& node = g.nodes_[key];
      for (const auto& id : ids) {
        if (!id.is_string()) {
          throw Error(ErrorCode::kParse, "question graph: non-string id under '" + key + "'");
        }
        node.push_back(id.get<std::string>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("question graph: ") + e.what());
  }
  return g;
}

void QuestionGraph::Save(const std::string& path) const {
  WriteFileAtomic(path, ToJson());
}

QuestionGraph QuestionGraph::Load(const std::string& path) {
  return FromJson(ReadFile(path));
}

bool QuestionGraph::operator==(const QuestionGraph& other) const {
  if (this == &other) return true;
  std::scoped_lock lock(mu_, other.mu_);
  return nodes_ == other.nodes_;
}

}  // namespace qforge
