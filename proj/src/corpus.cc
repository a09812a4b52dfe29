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

#include "corpus.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "error.h"
#include "json.hpp"
#include "text_util.h"

namespace qforge {
namespace {

using nlohmann::json;

[[noreturn]] void LineError(int line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

std::string RequireString(const json& obj, const char* key, int line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    LineError(line, std::string("missing ") + key);
  }
  if (!it->is_string()) LineError(line, std::string(key) + " must be a string");
  return it->get<std::string>();
}

std::string OptionalString(const json& obj, const char* key, int line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) LineError(line, std::string(key) + " must be a string");
  return it->get<std::string>();
}

Article ParseLine(std::string_view raw, int line) {
  json obj;
  try {
    obj = json::parse(raw);
  } catch (const json::parse_error& e) {
    LineError(line, std::string("malformed JSON (") + e.what() + ")");
  }
  if (!obj.is_object()) LineError(line, "expected a JSON object");

  Article a;
  a.line = line;
  a.id = RequireString(obj, "id", line);
  if (a.id.empty()) LineError(line, "empty id");
  a.body = RequireString(obj, "body", line);
  if (text::Trim(a.body).empty()) LineError(line, "empty body");
  a.title = OptionalString(obj, "title", line);
  a.source = OptionalString(obj, "source", line);

  if (auto it = obj.find("hashtags"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) LineError(line, "hashtags must be an array");
    for (const auto& tag : *it) {
      if (!tag.is_string()) LineError(line, "hashtags must hold strings");
      a.hashtags.push_back(tag.get<std::string>());
    }
  }
  if (auto it = obj.find("evergreen"); it != obj.end() && !it->is_null()) {
    if (!it->is_boolean()) LineError(line, "evergreen must be a boolean");
    a.evergreen = it->get<bool>();
  }
  return a;
}

}  // namespace

std::vector<Article> ParseArticles(std::string_view jsonl) {
  std::vector<Article> out;
  std::unordered_map<std::string, int> seen;
  int line = 0;
  size_t pos = 0;
  while (pos < jsonl.size()) {
    size_t nl = jsonl.find('\n', pos);
    if (nl == std::string_view::npos) nl = jsonl.size();
    std::string_view raw = jsonl.substr(pos, nl - pos);
    pos = nl + 1;
    ++line;
    if (text::Trim(raw).empty()) continue;
    Article a = ParseLine(raw, line);
    auto [it, inserted] = seen.emplace(a.id, line);
    if (!inserted) {
      throw Error(ErrorCode::kParse,
                  "duplicate id '" + a.id + "' on lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(line));
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Article> LoadArticles(const std::string& path) {
  return ParseArticles(ReadFile(path));
}

std::string SerializeArticles(const std::vector<Article>& articles) {
  std::string out;
  for (const Article& a : articles) {
    nlohmann::ordered_json obj;
    obj["id"] = a.id;
    obj["title"] = a.title;
    obj["body"] = a.body;
    obj["hashtags"] = a.hashtags;
    obj["evergreen"] = a.evergreen;
    if (!a.source.empty()) obj["source"] = a.source;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

void WriteArticles(const std::string& path,
                   const std::vector<Article>& articles) {
  WriteFileAtomic(path, SerializeArticles(articles));
}

ArticleVerdict ValidateArticle(const Article& article, int min_words) {
  ArticleVerdict v;
  v.word_count = text::CountWords(article.body);
  v.valid = v.word_count >= static_cast<size_t>(min_words < 1 ? 1 : min_words);
  return v;
}

CorpusStats ComputeCorpusStats(const std::vector<Article>& articles) {
  if (articles.empty()) throw Error(ErrorCode::kEmpty, "empty corpus");
  CorpusStats s;
  s.article_count = articles.size();
  for (const Article& a : articles) {
    if (!a.hashtags.empty()) ++s.with_hashtags;
    if (a.evergreen) ++s.evergreen_count;
  }
  s.evergreen_fraction = static_cast<double>(s.evergreen_count) /
                         static_cast<double>(s.article_count);
  return s;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename " + tmp + ": " + ec.message());
}

}  // namespace qforge
