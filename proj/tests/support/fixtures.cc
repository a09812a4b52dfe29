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

#include "fixtures.h"

#include <atomic>
#include <filesystem>

#include <unistd.h>

#include "corpus.h"

namespace qforge::testing {

ErrorCode CodeOf(const std::function<void()>& fn, std::string* message) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode::kOk;
}

std::string DataPath(const std::string& name) {
  return std::string(QFORGE_TEST_DATA_DIR) + "/" + name;
}

std::string FuzzText(std::mt19937_64& rng, int min_words, int max_words) {
  static const std::vector<std::string> kWords = {
      "harbor", "ferry", "council", "budget", "storm", "the", "a", "of", "and",
      "mayor", "bridge", "river", "school", "tax", "he", "she", "it", "they",
      "Dr.", "Mr.", "U.S.", "etc.", "e.g.", "café", "naïve", "Zürich", "2024",
      "3.5", "darn", "criticism", "well-known", "don't", "(quoted)", "\"Hello\"",
      "market", "stock", "fox", "red", "jumps", "over", "wolves", "endangered"};
  static const std::vector<std::string> kEnds = {".", ".", ".", "!", "?", "?!", "...", ".\"", ")"};
  static const std::vector<std::string> kGaps = {" ", " ", " ", " ", "  ", "\n", "\t", " \n "};
  std::uniform_int_distribution<int> nwords(min_words, max_words);
  std::uniform_int_distribution<size_t> word(0, kWords.size() - 1);
  std::uniform_int_distribution<size_t> end(0, kEnds.size() - 1);
  std::uniform_int_distribution<size_t> gap(0, kGaps.size() - 1);
  std::uniform_int_distribution<int> sentence_len(1, 14);
  std::bernoulli_distribution capitalize(0.8);

  const int total = nwords(rng);
  std::string out;
  int written = 0;
  while (written < total) {
    const int len = std::min(sentence_len(rng), total - written);
    for (int i = 0; i < len; ++i) {
      std::string w = kWords[word(rng)];
      if (i == 0 && capitalize(rng) && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 32);
      if (!out.empty()) out += i == 0 ? kGaps[gap(rng)] : (gap(rng) == 0 ? "  " : " ");
      out += w;
      if (i + 1 < len && word(rng) % 9 == 0) out += ",";
    }
    out += kEnds[end(rng)];
    written += len;
  }
  return out;
}

Article FuzzArticle(std::mt19937_64& rng, const std::string& id) {
  Article a;
  a.id = id;
  a.title = "fuzz " + id;
  a.body = FuzzText(rng, 20, 120);
  return a;
}

std::unique_ptr<Client> MakeStubClient(StubOptions options) {
  return std::make_unique<Client>(std::make_shared<StubBackend>(std::move(options)));
}

StubOptions FixtureStubOptions() {
  StubOptions o;
  o.blocklist = ParseBlocklist(ReadFile(DataPath("blocklist.txt")));
  return o;
}

AdversarialFixture MakeAdversarialFixture(Client& client) {
  static const char* kTopics[] = {
      "harbor", "ferry", "council", "budget", "storm", "mayor", "bridge",
      "river", "school", "tax", "market", "fox", "wolves", "glacier", "senate",
      "vote", "museum", "railway", "orchard", "vaccine", "stadium", "library",
      "airport", "festival", "reservoir"};
  AdversarialFixture f;
  for (size_t i = 0; i < 25; ++i) {
    const std::string kw = kTopics[i];
    ContextKeyphrasePair p;
    p.article_id = "adv";
    p.keyphrase = kw;
    p.keyphrase_rank = i;
    p.sentence_index = i;
    p.context = "Officials said the " + kw + " report was published on day " +
                std::to_string(i + 1) + ". Reactions were mixed.";
    p.context_start = 0;
    p.context_end = p.context.size();
    f.questions.push_back(client.Generate(p.context, kw).question);
    const bool sabotage = i % 5 == 4;
    if (sabotage) {
      p.context = "Nothing of note happened on day " + std::to_string(i + 1) + ".";
      p.context_end = p.context.size();
    }
    f.sabotaged.push_back(sabotage);
    f.pairs.push_back(std::move(p));
  }
  return f;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  root_ = (std::filesystem::temp_directory_path() /
           ("qforge_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter.fetch_add(1))))
              .string();
  std::filesystem::create_directories(root_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(root_, ec);
}

}  // namespace qforge::testing
