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

#include "backend.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.h"
#include "http_backend.h"
#include "json.hpp"
#include "stub_backend.h"
#include "wire_server.h"

namespace qforge {
namespace {

using testing::CodeOf;

// ---------------------------------------------------------------------------
// Stub rules.

TEST(StubTest, Fnv1aReferenceVectors) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(StubTest, EmbeddingMatchesReferenceValues) {
  // Reference values from an independent implementation of the hash rule.
  struct Case {
    const char* text;
    double v0, v1, v2;
  } cases[] = {
      {"harbor", -0.150239344590825, 0.0488357042402694, -0.184135752240084},
      {"Harbor, ferry!", -0.042946892906204, -0.0733422810003709, -0.103737669094538},
      {"café naïve", 0.161928219504959, 0.134877690062281, 0.161928219504959},
  };
  for (const Case& c : cases) {
    Embedding e = StubEmbedding(c.text);
    ASSERT_EQ(e.size(), kStubEmbeddingDim);
    EXPECT_NEAR(e[0], c.v0, 1e-12) << c.text;
    EXPECT_NEAR(e[1], c.v1, 1e-12) << c.text;
    EXPECT_NEAR(e[2], c.v2, 1e-12) << c.text;
  }
  EXPECT_NEAR(Dot(StubEmbedding("harbor"), StubEmbedding("ferry")), -0.378424196396387, 1e-12);
}

TEST(StubTest, EmbeddingIsCaseAndPunctuationInsensitive) {
  EXPECT_EQ(StubEmbedding("Harbor, ferry!"), StubEmbedding("harbor ferry"));
  EXPECT_EQ(CodeOf([] { StubEmbedding("!!!"); }), ErrorCode::kProtocol);
}

TEST(StubTest, GenerateTemplates) {
  auto client = testing::MakeStubClient();
  EXPECT_EQ(client->Generate("The mayor opened the bridge.", "bridge").question,
            "What does the article say about bridge?");
  EXPECT_EQ(client->Generate("The mayor opened the road.", "bridge").question,
            "What is bridge?");
}

TEST(StubTest, AnswerRules) {
  auto client = testing::MakeStubClient();
  const std::string ctx = "Rain fell. The mayor opened the bridge. Crowds cheered.";
  auto a = client->Answer("What does the article say about bridge?", ctx);
  EXPECT_FALSE(a.no_answer);
  EXPECT_EQ(a.answer_text, "The mayor opened the bridge.");
  EXPECT_DOUBLE_EQ(a.score, 0.9);
  EXPECT_EQ(ctx.substr(*a.start, *a.end - *a.start), a.answer_text);

  auto none = client->Answer("What does the article say about bridge?", "Rain fell.");
  EXPECT_TRUE(none.no_answer);
  EXPECT_DOUBLE_EQ(none.score, 0.0);
  EXPECT_TRUE(none.answer_text.empty());
  EXPECT_TRUE(client->Answer("Who cares?", ctx).no_answer);
}

TEST(StubTest, ToxicityBlocklist) {
  StubOptions o;
  o.blocklist = {"darn"};
  auto client = testing::MakeStubClient(o);
  EXPECT_DOUBLE_EQ(client->Toxicity("darn question"), 1.0);
  EXPECT_DOUBLE_EQ(client->Toxicity("Darn! question"), 1.0);
  EXPECT_DOUBLE_EQ(client->Toxicity("clean question"), 0.0);
  EXPECT_DOUBLE_EQ(client->Toxicity("darned question"), 0.0);
}

TEST(StubTest, SummarizeAndCount) {
  auto client = testing::MakeStubClient();
  EXPECT_EQ(client->Summarize("A. B. C."), "A.");
  EXPECT_EQ(CodeOf([&] { client->Summarize(""); }), ErrorCode::kProtocol);
  EXPECT_EQ(client->CountTokens(""), 0);
  EXPECT_EQ(client->CountTokens("a b c"), 3);
}

TEST(StubTest, CorefTable) {
  StubOptions o;
  o.coref_table = ParseCorefTable("# fixture\nHe=Dr. Smith\n\n");
  auto client = testing::MakeStubClient(o);
  EXPECT_EQ(client->ResolveCoref("He left."), "Dr. Smith left.");
  EXPECT_EQ(client->ResolveCoref("Hello there."), "Hello there.");
  EXPECT_EQ(testing::MakeStubClient()->ResolveCoref("He left."), "He left.");
  EXPECT_EQ(CodeOf([] { ParseCorefTable("broken line"); }), ErrorCode::kParse);
}

TEST(StubTest, FailMarker) {
  StubOptions o;
  o.fail_marker = "glacier";
  auto client = testing::MakeStubClient(o);
  EXPECT_EQ(CodeOf([&] { client->Embed({"a glacier"}); }), ErrorCode::kBackendUnavailable);
  EXPECT_NO_THROW(client->Embed({"a river"}));
}

// ---------------------------------------------------------------------------
// Client validation against a misbehaving backend.

class ScriptedBackend : public StubBackend {
 public:
  std::vector<Embedding> embed_reply;
  std::optional<AnswerResponse> answer_reply;
  std::optional<double> toxicity_reply;
  std::optional<std::string> question_reply;
  std::optional<std::string> summary_reply;
  std::atomic<int> embed_calls{0};
  std::atomic<int> concurrent{0};
  std::atomic<int> peak{0};

  std::vector<Embedding> Embed(const std::vector<std::string>& texts) override {
    ++embed_calls;
    const int now = ++concurrent;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    --concurrent;
    if (!embed_reply.empty()) return embed_reply;
    return StubBackend::Embed(texts);
  }
  AnswerResponse Answer(const std::string& q, const std::string& c) override {
    return answer_reply ? *answer_reply : StubBackend::Answer(q, c);
  }
  double Toxicity(const std::string& t) override {
    return toxicity_reply ? *toxicity_reply : StubBackend::Toxicity(t);
  }
  GenerationResponse Generate(const std::string& c, const std::string& k) override {
    if (question_reply) return {*question_reply, std::nullopt};
    return StubBackend::Generate(c, k);
  }
  std::string Summarize(const std::string& t) override {
    return summary_reply ? *summary_reply : StubBackend::Summarize(t);
  }
};

TEST(ClientTest, RejectsBadEmbeddings) {
  auto backend = std::make_shared<ScriptedBackend>();
  Client client(backend);
  backend->embed_reply = {{0.0, 0.0}};
  EXPECT_EQ(CodeOf([&] { client.Embed({"x"}); }), ErrorCode::kProtocol);
  backend->embed_reply = {{1.0, 0.0}, {1.0}};
  EXPECT_EQ(CodeOf([&] { client.Embed({"x", "y"}); }), ErrorCode::kProtocol);
  backend->embed_reply = {{1.0, 0.0}};
  EXPECT_EQ(CodeOf([&] { client.Embed({"x", "y"}); }), ErrorCode::kProtocol);
  backend->embed_reply = {{3.0, 4.0}};
  auto v = client.Embed({"x"});
  EXPECT_DOUBLE_EQ(v[0][0], 0.6);
  EXPECT_DOUBLE_EQ(v[0][1], 0.8);
  EXPECT_EQ(CodeOf([&] { client.Embed({}); }), ErrorCode::kInvalidArgument);
}

TEST(ClientTest, BatchesEmbeddings) {
  auto backend = std::make_shared<ScriptedBackend>();
  Client client(backend, ClientOptions{4, 8});
  std::vector<std::string> texts;
  for (int i = 0; i < 10; ++i) texts.push_back("word" + std::to_string(i));
  auto vectors = client.Embed(texts);
  ASSERT_EQ(vectors.size(), 10u);
  EXPECT_EQ(backend->embed_calls.load(), 3);
  for (size_t i = 0; i < texts.size(); ++i) {
    const auto expected = StubEmbedding(texts[i]);
    ASSERT_EQ(vectors[i].size(), expected.size());
    for (size_t d = 0; d < expected.size(); ++d) EXPECT_NEAR(vectors[i][d], expected[d], 1e-12);
  }
}

TEST(ClientTest, BoundsInFlightCalls) {
  auto backend = std::make_shared<ScriptedBackend>();
  Client client(backend, ClientOptions{32, 2});
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 5; ++i) client.Embed({"x"});
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_LE(backend->peak.load(), 2);
  EXPECT_GE(backend->peak.load(), 1);
}

TEST(ClientTest, AnswerInvariants) {
  auto backend = std::make_shared<ScriptedBackend>();
  Client client(backend);
  const std::string ctx = "Rain fell on the bridge.";

  backend->answer_reply = AnswerResponse{"snow", false, 0.8, std::nullopt, std::nullopt};
  EXPECT_EQ(CodeOf([&] { client.Answer("q?", ctx); }), ErrorCode::kProtocol);

  backend->answer_reply = AnswerResponse{"Rain", false, 1.2, 0, 4};
  EXPECT_EQ(CodeOf([&] { client.Answer("q?", ctx); }), ErrorCode::kProtocol);

  backend->answer_reply = AnswerResponse{"Rain", false, 0.7, 1, 5};
  EXPECT_EQ(CodeOf([&] { client.Answer("q?", ctx); }), ErrorCode::kProtocol);

  backend->answer_reply = AnswerResponse{"bridge", false, 0.7, std::nullopt, std::nullopt};
  auto located = client.Answer("q?", ctx);
  EXPECT_EQ(*located.start, ctx.find("bridge"));
  EXPECT_EQ(*located.end, ctx.find("bridge") + 6);

  backend->answer_reply = AnswerResponse{"<s>", false, 0.6, std::nullopt, std::nullopt};
  auto sentinel = client.Answer("q?", ctx);
  EXPECT_TRUE(sentinel.no_answer);
  EXPECT_TRUE(sentinel.answer_text.empty());
}

TEST(ClientTest, OtherInvariants) {
  auto backend = std::make_shared<ScriptedBackend>();
  Client client(backend);
  backend->toxicity_reply = -0.1;
  EXPECT_EQ(CodeOf([&] { client.Toxicity("x"); }), ErrorCode::kProtocol);
  backend->toxicity_reply = std::nan("");
  EXPECT_EQ(CodeOf([&] { client.Toxicity("x"); }), ErrorCode::kProtocol);
  backend->question_reply = "   ";
  EXPECT_EQ(CodeOf([&] { client.Generate("ctx", "k"); }), ErrorCode::kProtocol);
  backend->question_reply = " Who won ";
  EXPECT_EQ(client.Generate("ctx", "k").question, "Who won?");
  backend->summary_reply = "";
  EXPECT_EQ(CodeOf([&] { client.Summarize("A. B."); }), ErrorCode::kProtocol);
  EXPECT_TRUE(IsNoAnswerSentinel(" </s> "));
  EXPECT_FALSE(IsNoAnswerSentinel("Paris"));
}

// ---------------------------------------------------------------------------
// Contract suite shared by every transport.

enum class Transport { kInProcess, kHttp };

class ContractTest : public ::testing::TestWithParam<Transport> {
 protected:
  void SetUp() override {
    StubOptions o;
    o.blocklist = {"darn"};
    o.coref_table = {{"He", "Dr. Smith"}};
    auto stub = std::make_shared<StubBackend>(o);
    if (GetParam() == Transport::kInProcess) {
      client_ = std::make_unique<Client>(stub);
    } else {
      server_ = std::make_unique<testing::WireServer>(stub);
      client_ = std::make_unique<Client>(
          std::make_shared<HttpBackend>(HttpBackendOptions{server_->url(), 5000, 0}));
    }
  }
  std::unique_ptr<testing::WireServer> server_;
  std::unique_ptr<Client> client_;
};

TEST_P(ContractTest, Health) {
  auto h = client_->Health();
  EXPECT_TRUE(h.ok);
  EXPECT_NE(std::find(h.capabilities.begin(), h.capabilities.end(), "answer"),
            h.capabilities.end());
}

TEST_P(ContractTest, EmbedUnitNormAndDeterministic) {
  auto a = client_->Embed({"a", "harbor ferry"});
  auto b = client_->Embed({"a", "harbor ferry"});
  ASSERT_EQ(a.size(), 2u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(Dot(a[i], a[i]), 1.0, 1e-12);
    EXPECT_EQ(a[i], b[i]);
    ASSERT_EQ(a[i].size(), kStubEmbeddingDim);
    const Embedding ref = StubEmbedding(i == 0 ? "a" : "harbor ferry");
    for (size_t d = 0; d < ref.size(); ++d) EXPECT_NEAR(a[i][d], ref[d], 1e-12);
  }
}

TEST_P(ContractTest, AnswerSpanInContext) {
  const std::string ctx = "Dr. Smith spoke. The mayor opened the bridge.";
  for (const char* key : {"bridge", "mayor", "smith", "spoke"}) {
    auto q = client_->Generate(ctx, key);
    auto a = client_->Answer(q.question, ctx);
    ASSERT_FALSE(a.no_answer) << key;
    EXPECT_GE(a.score, 0.0);
    EXPECT_LE(a.score, 1.0);
    EXPECT_EQ(ctx.substr(*a.start, *a.end - *a.start), a.answer_text);
  }
  auto miss = client_->Answer("What is glacier?", ctx);
  EXPECT_TRUE(miss.no_answer);
  EXPECT_EQ(miss.score, 0.0);
}

TEST_P(ContractTest, ScalarEndpoints) {
  EXPECT_EQ(client_->Toxicity("darn question"), 1.0);
  EXPECT_EQ(client_->Toxicity("clean question"), 0.0);
  EXPECT_EQ(client_->Summarize("A. B. C."), "A.");
  EXPECT_EQ(client_->CountTokens("a b c"), 3);
  EXPECT_EQ(client_->CountTokens(""), 0);
  EXPECT_EQ(client_->ResolveCoref("He left."), "Dr. Smith left.");
  EXPECT_EQ(client_->Generate("The mayor opened the bridge.", "bridge").question,
            "What does the article say about bridge?");
}

TEST_P(ContractTest, EmptySummarizeIsProtocolError) {
  EXPECT_EQ(CodeOf([&] { client_->Summarize(" "); }), ErrorCode::kProtocol);
}

INSTANTIATE_TEST_SUITE_P(Transports, ContractTest,
                         ::testing::Values(Transport::kInProcess, Transport::kHttp),
                         [](const auto& info) {
                           return info.param == Transport::kHttp ? "Http" : "InProcess";
                         });

// ---------------------------------------------------------------------------
// HTTP transport behavior.

TEST(HttpBackendTest, RetriesTransientStatus) {
  std::atomic<int> failures{2};
  testing::WireServer server(std::make_shared<StubBackend>(),
                             [&](const httplib::Request&, httplib::Response& res) {
                               if (failures.fetch_sub(1) > 0) {
                                 res.status = 503;
                                 res.set_content(R"({"error":"warming up"})", "application/json");
                                 return true;
                               }
                               return false;
                             });
  HttpBackend backend({server.url(), 5000, 2});
  EXPECT_EQ(backend.CountTokens("a b"), 2);
  EXPECT_EQ(server.requests(), 3);
}

TEST(HttpBackendTest, GivesUpAfterRetries) {
  testing::WireServer server(std::make_shared<StubBackend>(),
                             [](const httplib::Request&, httplib::Response& res) {
                               res.status = 503;
                               return true;
                             });
  HttpBackend backend({server.url(), 5000, 1});
  std::string msg;
  EXPECT_EQ(CodeOf([&] { backend.CountTokens("a"); }, &msg), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(server.requests(), 2);
}

TEST(HttpBackendTest, UnreachableServer) {
  int port;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpBackend backend({"http://127.0.0.1:" + std::to_string(port), 500, 1});
  EXPECT_EQ(CodeOf([&] { backend.Health(); }), ErrorCode::kBackendUnavailable);
}

TEST(HttpBackendTest, NonRetryableStatusCarriesServerMessage) {
  testing::WireServer server(std::make_shared<StubBackend>(),
                             [](const httplib::Request&, httplib::Response& res) {
                               res.status = 501;
                               res.set_content(R"({"error":"capability not loaded"})",
                                               "application/json");
                               return true;
                             });
  HttpBackend backend({server.url(), 5000, 3});
  std::string msg;
  EXPECT_EQ(CodeOf([&] { backend.Toxicity("x"); }, &msg), ErrorCode::kProtocol);
  EXPECT_NE(msg.find("capability not loaded"), std::string::npos) << msg;
  EXPECT_EQ(server.requests(), 1);
}

TEST(HttpBackendTest, MalformedReplies) {
  std::string body;
  testing::WireServer server(std::make_shared<StubBackend>(),
                             [&](const httplib::Request&, httplib::Response& res) {
                               res.set_content(body, "application/json");
                               return true;
                             });
  HttpBackend backend({server.url(), 5000, 0});
  body = "not json";
  EXPECT_EQ(CodeOf([&] { backend.Toxicity("x"); }), ErrorCode::kProtocol);
  body = R"({"tox":0.1})";
  EXPECT_EQ(CodeOf([&] { backend.Toxicity("x"); }), ErrorCode::kProtocol);
  body = R"({"toxicity":"high"})";
  EXPECT_EQ(CodeOf([&] { backend.Toxicity("x"); }), ErrorCode::kProtocol);
}

TEST(HttpBackendTest, PathPrefixAndWireFields) {
  std::string seen_path, seen_body;
  testing::WireServer server(std::make_shared<StubBackend>(),
                             [&](const httplib::Request& req, httplib::Response& res) {
                               seen_path = req.path;
                               seen_body = req.body;
                               res.set_content(R"({"answer":"<s>","no_answer":false,"score":0.3})",
                                               "application/json");
                               return true;
                             });
  Client client(std::make_shared<HttpBackend>(HttpBackendOptions{server.url() + "/api/", 5000, 0}));
  auto a = client.Answer("Who?", "Nobody here.");
  EXPECT_EQ(seen_path, "/api/v1/answer");
  auto sent = nlohmann::json::parse(seen_body);
  EXPECT_EQ(sent["question"], "Who?");
  EXPECT_EQ(sent["context"], "Nobody here.");
  EXPECT_TRUE(a.no_answer);
}

TEST(HttpBackendTest, BadOptions) {
  EXPECT_EQ(CodeOf([] { HttpBackend({"http://", 100, 0}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { HttpBackend({"http://x", 0, 0}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { HttpBackend({"http://x", 10, -1}); }), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace qforge
