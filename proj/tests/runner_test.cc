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

#include "runner.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "corpus.h"
#include "fixtures.h"
#include "json.hpp"
#include "question_graph.h"
#include "stub_backend.h"

namespace qforge {
namespace {

using testing::CodeOf;

Settings FixtureSettings() {
  Settings s;
  s.backend.stub_blocklist = testing::DataPath("blocklist.txt");
  return s;
}

RunOutcome RunFixture(const Settings& s, const std::string& out, int workers = 1,
               bool resume = false) {
  auto client = MakeClient(s.backend);
  RunRequest req;
  req.input_path = testing::DataPath("corpus12.jsonl");
  req.output_path = out;
  req.workers = workers;
  req.resume = resume;
  return ExecuteRun(req, s, *client);
}

TEST(ExecuteRunTest, ByteIdenticalAcrossRuns) {
  testing::TempDir dir;
  auto a = RunFixture(FixtureSettings(), dir.path("a.jsonl"));
  auto b = RunFixture(FixtureSettings(), dir.path("b.jsonl"));
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(ReadFile(dir.path("a.jsonl")), ReadFile(dir.path("b.jsonl")));
  EXPECT_EQ(ReadFile(a.graph_path), ReadFile(b.graph_path));
  EXPECT_EQ(ReadFile(a.report_path), ReadFile(b.report_path));
  EXPECT_FALSE(std::filesystem::exists(a.resume_path));
}

TEST(ExecuteRunTest, WorkerCountDoesNotChangeOutput) {
  testing::TempDir dir;
  RunFixture(FixtureSettings(), dir.path("one.jsonl"), 1);
  RunFixture(FixtureSettings(), dir.path("four.jsonl"), 4);
  EXPECT_EQ(ReadFile(dir.path("one.jsonl")), ReadFile(dir.path("four.jsonl")));
}

TEST(ExecuteRunTest, MatchesGoldenFile) {
  testing::TempDir dir;
  RunFixture(FixtureSettings(), dir.path("run.jsonl"));
  EXPECT_EQ(ReadFile(dir.path("run.jsonl")), ReadFile(testing::DataPath("golden_run.jsonl")));
}

TEST(ExecuteRunTest, OutputIsSortedLinkedAndConsistent) {
  testing::TempDir dir;
  auto out = RunFixture(FixtureSettings(), dir.path("run.jsonl"));
  auto pairs = ParsePairs(ReadFile(dir.path("run.jsonl")));
  ASSERT_FALSE(pairs.empty());
  EXPECT_EQ(out.run.completed.size(), 12u);
  for (size_t i = 1; i < pairs.size(); ++i) {
    EXPECT_LE(pairs[i - 1].article_id, pairs[i].article_id);
  }
  size_t toxic = 0;
  QuestionGraph graph = QuestionGraph::Load(out.graph_path);
  for (const QAPair& p : pairs) {
    toxic += p.verdict == Verdict::kToxic;
    if (p.verdict != Verdict::kKept) {
      EXPECT_TRUE(p.related_ids.empty());
      continue;
    }
    auto node = graph.Query(p.keyphrase);
    auto self = std::find(node.begin(), node.end(), p.Id());
    ASSERT_NE(self, node.end());
    EXPECT_EQ(p.related_ids, std::vector<std::string>(node.begin(), self));
  }
  EXPECT_GT(toxic, 0u);  // the blocklist fixture hits the corpus

  auto report = nlohmann::json::parse(ReadFile(out.report_path));
  EXPECT_EQ(report["generated"], pairs.size());
  auto manifest = nlohmann::json::parse(ReadFile(out.manifest_path));
  EXPECT_EQ(manifest["status"], "complete");
  EXPECT_EQ(manifest["backend"], "stub/v1");
  EXPECT_EQ(manifest["engine_version"], kEngineVersion);
  EXPECT_EQ(manifest["config"]["top_k_keyphrases"], "15");
  EXPECT_EQ(manifest["articles"]["completed"], 12);
}

TEST(ExecuteRunTest, ResumeAfterAbortMatchesUninterruptedRun) {
  testing::TempDir dir;
  RunFixture(FixtureSettings(), dir.path("clean.jsonl"));

  Settings failing = FixtureSettings();
  failing.backend.stub_fail_marker = "glacier";
  auto partial = RunFixture(failing, dir.path("resumed.jsonl"), 2);
  EXPECT_EQ(partial.exit_code, 2);
  ASSERT_EQ(partial.run.failures.size(), 1u);
  EXPECT_EQ(partial.run.failures[0].article_id, "a10");
  EXPECT_EQ(partial.run.failures[0].code, ErrorCode::kBackendUnavailable);
  ASSERT_TRUE(std::filesystem::exists(partial.resume_path));
  auto resume = nlohmann::json::parse(ReadFile(partial.resume_path));
  EXPECT_EQ(resume["completed"].size(), 11u);
  for (const QAPair& p : partial.run.pairs) EXPECT_NE(p.article_id, "a10");
  EXPECT_EQ(nlohmann::json::parse(ReadFile(partial.manifest_path))["status"], "partial");

  auto finished = RunFixture(FixtureSettings(), dir.path("resumed.jsonl"), 3, /*resume=*/true);
  EXPECT_EQ(finished.exit_code, 0);
  EXPECT_FALSE(std::filesystem::exists(finished.resume_path));
  EXPECT_EQ(ReadFile(dir.path("resumed.jsonl")), ReadFile(dir.path("clean.jsonl")));
  EXPECT_EQ(ReadFile(finished.graph_path), ReadFile(dir.path("clean.jsonl.graph.json")));
  EXPECT_EQ(nlohmann::json::parse(ReadFile(finished.manifest_path))["resumed"], true);
}

TEST(ExecuteRunTest, InvalidArticlesAreSkippedNotFailed) {
  testing::TempDir dir;
  Settings s = FixtureSettings();
  s.pipeline.min_words = 505;
  auto out = RunFixture(s, dir.path("run.jsonl"));
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_FALSE(out.run.skipped_invalid.empty());
  EXPECT_EQ(out.run.completed.size() + out.run.skipped_invalid.size(), 12u);
}

TEST(ExecuteRunTest, MissingInput) {
  testing::TempDir dir;
  Settings s;
  auto client = MakeClient(s.backend);
  RunRequest req{"/nonexistent/in.jsonl", dir.path("out.jsonl"), "", 1, false};
  EXPECT_EQ(CodeOf([&] { ExecuteRun(req, s, *client); }), ErrorCode::kIo);
  req.output_path.clear();
  EXPECT_EQ(CodeOf([&] { ExecuteRun(req, s, *client); }), ErrorCode::kInvalidArgument);
}

TEST(CompareTest, MaximalYieldsMoreThanSixTimesBaseline) {
  auto articles = LoadArticles(testing::DataPath("corpus12.jsonl"));
  auto client = MakeClient(FixtureSettings().backend);
  Comparison c = CompareStrategies(articles, PipelineConfig{}, *client, 2);
  EXPECT_EQ(c.articles, 12u);
  EXPECT_EQ(c.valid_articles, 12u);
  ASSERT_TRUE(c.kept_ratio);
  EXPECT_GT(*c.kept_ratio, 6.0);
  EXPECT_LE(c.baseline.generated, c.maximal.generated);
  auto j = nlohmann::json::parse(ComparisonToJson(c));
  EXPECT_DOUBLE_EQ(j["kept_ratio"].get<double>(), *c.kept_ratio);
  EXPECT_NE(ComparisonToTable(c).find("Maximal Generation"), std::string::npos);
}

TEST(CompareTest, EmptyCorpus) {
  auto client = testing::MakeStubClient();
  std::string msg;
  EXPECT_EQ(CodeOf([&] { CompareStrategies({}, PipelineConfig{}, *client, 1); }, &msg),
            ErrorCode::kEmpty);
  EXPECT_NE(msg.find("empty corpus"), std::string::npos);
}

TEST(RunCorpusTest, CarriedPairsAreMergedForSkippedArticles) {
  auto articles = LoadArticles(testing::DataPath("corpus12.jsonl"));
  articles.resize(3);
  auto client = MakeClient(FixtureSettings().backend);
  CorpusRun full = RunCorpus(articles, PipelineConfig{}, *client, Strategy::kMaximal, 1);
  std::vector<QAPair> carried;
  for (const QAPair& p : full.pairs) {
    if (p.article_id == "a02") carried.push_back(p);
  }
  CorpusRun resumed = RunCorpus(articles, PipelineConfig{}, *client, Strategy::kMaximal, 2,
                                {"a02"}, carried);
  EXPECT_EQ(SerializePairs(resumed.pairs), SerializePairs(full.pairs));
  EXPECT_EQ(resumed.completed, full.completed);
}

}  // namespace
}  // namespace qforge
