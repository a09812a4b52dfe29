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

#ifndef QFORGE_TESTS_SUPPORT_FIXTURES_H_
#define QFORGE_TESTS_SUPPORT_FIXTURES_H_

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "backend.h"
#include "corpus.h"
#include "error.h"
#include "keyphrase.h"
#include "stub_backend.h"

namespace qforge::testing {

// Runs `fn` and returns the qforge error code it threw, or kOk.
ErrorCode CodeOf(const std::function<void()>& fn, std::string* message = nullptr);

std::string DataPath(const std::string& name);

// Random article text built to stress segmentation and extraction: mixed
// whitespace, abbreviations, quotes, digits, UTF-8 words, pronouns and the
// occasional blocklisted word.
std::string FuzzText(std::mt19937_64& rng, int min_words, int max_words);
Article FuzzArticle(std::mt19937_64& rng, const std::string& id);

std::unique_ptr<Client> MakeStubClient(StubOptions options = {});

// Fixed blocklist used across tests: {"darn", "criticism"}.
StubOptions FixtureStubOptions();

// 25 context/keyphrase pairs with questions generated by `client`. Every
// fifth pair (indices 4, 9, ...) has its context swapped after generation
// for one that no longer mentions the keyphrase.
struct AdversarialFixture {
  std::vector<ContextKeyphrasePair> pairs;
  std::vector<std::string> questions;
  std::vector<bool> sabotaged;
};
AdversarialFixture MakeAdversarialFixture(Client& client);

// A scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string path(const std::string& name) const { return root_ + "/" + name; }

 private:
  std::string root_;
};

}  // namespace qforge::testing

#endif  // QFORGE_TESTS_SUPPORT_FIXTURES_H_
