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

#ifndef QFORGE_SRC_CORPUS_H_
#define QFORGE_SRC_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qforge {

inline constexpr int kDefaultMinWords = 500;

struct Article {
  std::string id;
  std::string title;
  std::string body;
  std::vector<std::string> hashtags;
  bool evergreen = false;
  std::string source;
  // 1-based line in the file the article was read from; 0 if not loaded.
  int line = 0;

  bool operator==(const Article& o) const {
    return id == o.id && title == o.title && body == o.body &&
           hashtags == o.hashtags && evergreen == o.evergreen &&
           source == o.source;
  }
};

struct CorpusStats {
  size_t article_count = 0;
  size_t with_hashtags = 0;
  size_t evergreen_count = 0;
  double evergreen_fraction = 0.0;
};

struct ArticleVerdict {
  bool valid = false;
  size_t word_count = 0;
};

// Parses Article JSONL. Throws Error(kParse) naming the offending line.
std::vector<Article> ParseArticles(std::string_view jsonl);
std::vector<Article> LoadArticles(const std::string& path);

std::string SerializeArticles(const std::vector<Article>& articles);
void WriteArticles(const std::string& path,
                   const std::vector<Article>& articles);

// Valid iff the body has at least `min_words` whitespace-delimited words.
ArticleVerdict ValidateArticle(const Article& article, int min_words);

CorpusStats ComputeCorpusStats(const std::vector<Article>& articles);

// Small file helpers shared by the run and eval paths.
std::string ReadFile(const std::string& path);
// Writes via a temp file and rename so readers never see a torn file.
void WriteFileAtomic(const std::string& path, std::string_view contents);

}  // namespace qforge

#endif  // QFORGE_SRC_CORPUS_H_
