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

#include <cstdlib>
#include <cstring>
#include <memory>
#include <set>
#include <string>

#include "config.h"
#include "corpus.h"
#include "error.h"
#include "json.hpp"
#include "metrics.h"
#include "pipeline.h"
#include "qforge/qforge.h"
#include "question_graph.h"
#include "runner.h"

struct qf_config {
  qforge::Settings settings;
};

struct qf_engine {
  qforge::Settings settings;
  std::unique_ptr<qforge::Client> client;
};

struct qf_graph {
  qforge::QuestionGraph graph;
};

namespace {

thread_local std::string g_last_error;

qf_status Fail(qf_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

char* Dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void Put(char** out, const std::string& s) {
  if (out != nullptr) *out = Dup(s);
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
qf_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const qforge::Error& e) {
    return Fail(static_cast<qf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(QF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(QF_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* qf_version(void) { return qforge::kEngineVersion; }

const char* qf_status_name(qf_status status) {
  return qforge::ErrorCodeName(static_cast<qforge::ErrorCode>(status));
}

const char* qf_last_error(void) { return g_last_error.c_str(); }

void qf_string_free(char* s) { std::free(s); }

qf_status qf_config_create(qf_config** out) {
  if (out == nullptr) return Fail(QF_ERR_INVALID_ARGUMENT, "null out pointer");
  return Guard([&] {
    *out = new qf_config();
    return QF_OK;
  });
}

void qf_config_destroy(qf_config* config) { delete config; }

qf_status qf_config_load_file(qf_config* config, const char* path) {
  if (config == nullptr || path == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    qforge::Settings copy = config->settings;
    copy.LoadFile(path);
    config->settings = copy;
    return QF_OK;
  });
}

qf_status qf_config_set(qf_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    config->settings.Set(key, value);
    return QF_OK;
  });
}

qf_status qf_config_dump(const qf_config* config, char** out) {
  if (config == nullptr || out == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    Put(out, config->settings.Dump());
    return QF_OK;
  });
}

qf_status qf_engine_create(const qf_config* config, qf_engine** out) {
  if (config == nullptr || out == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    config->settings.pipeline.Validate();
    auto engine = std::make_unique<qf_engine>();
    engine->settings = config->settings;
    engine->client = qforge::MakeClient(engine->settings.backend);
    *out = engine.release();
    return QF_OK;
  });
}

void qf_engine_destroy(qf_engine* engine) { delete engine; }

qf_status qf_engine_health(qf_engine* engine, char** out) {
  if (engine == nullptr || out == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    qforge::HealthResponse h = engine->client->Health();
    nlohmann::ordered_json j;
    j["ok"] = h.ok;
    j["capabilities"] = h.capabilities;
    j["backend"] = engine->client->Identity();
    Put(out, j.dump());
    return QF_OK;
  });
}

qf_status qf_engine_run(qf_engine* engine, const char* input_path,
                        const char* output_path, const char* graph_path,
                        int workers, int resume, char** report_json,
                        char** report_text) {
  if (engine == nullptr || input_path == nullptr || output_path == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    qforge::RunRequest req;
    req.input_path = input_path;
    req.output_path = output_path;
    if (graph_path != nullptr) req.graph_path = graph_path;
    req.workers = workers;
    req.resume = resume != 0;
    qforge::RunOutcome outcome = qforge::ExecuteRun(req, engine->settings, *engine->client);
    Put(report_json, qforge::ReportToJson(outcome.run.report));
    if (report_text != nullptr) {
      std::string text = qforge::ReportToTable(outcome.run.report, "Maximal Generation");
      if (!outcome.run.skipped_invalid.empty()) {
        text += "skipped (below min_words): " +
                std::to_string(outcome.run.skipped_invalid.size()) + "\n";
      }
      *report_text = Dup(text);
    }
    if (outcome.exit_code == 2) {
      std::string msg = std::to_string(outcome.run.failures.size()) +
                        " article(s) failed; resume file: " + outcome.resume_path;
      for (const auto& f : outcome.run.failures) {
        msg += "\n  " + f.article_id + ": " + f.message;
      }
      return Fail(QF_ERR_PARTIAL, msg);
    }
    return QF_OK;
  });
}

qf_status qf_engine_process_article(qf_engine* engine, const char* article_json,
                                    char** out) {
  if (engine == nullptr || article_json == nullptr || out == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::string line(article_json);
    for (char& c : line) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    std::vector<qforge::Article> articles = qforge::ParseArticles(line);
    if (articles.size() != 1) {
      throw qforge::Error(qforge::ErrorCode::kInvalidArgument, "expected one article");
    }
    qforge::ArticleRun run =
        qforge::RunArticle(articles.front(), engine->settings.pipeline, *engine->client);
    Put(out, qforge::SerializePairs(run.pairs));
    return QF_OK;
  });
}

qf_status qf_engine_compare(qf_engine* engine, const char* input_path, int workers,
                            char** report_json, char** report_text) {
  if (engine == nullptr || input_path == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::vector<qforge::Article> articles = qforge::LoadArticles(input_path);
    qforge::Comparison c = qforge::CompareStrategies(
        articles, engine->settings.pipeline, *engine->client, workers);
    Put(report_json, qforge::ComparisonToJson(c));
    Put(report_text, qforge::ComparisonToTable(c));
    return QF_OK;
  });
}

qf_status qf_eval(const char* pairs_path, const char* annotations_path,
                  const char* baseline_annotations_path, char** report_json,
                  char** report_text) {
  if (pairs_path == nullptr || annotations_path == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::vector<qforge::QAPair> pairs = qforge::ParsePairs(qforge::ReadFile(pairs_path));
    std::vector<qforge::AnnotationRecord> annotations =
        qforge::LoadAnnotations(annotations_path);
    std::vector<qforge::AnnotationRecord> baseline;
    if (baseline_annotations_path != nullptr) {
      baseline = qforge::LoadAnnotations(baseline_annotations_path);
    }
    std::set<std::string> articles;
    for (const auto& p : pairs) articles.insert(p.article_id);
    qforge::RunReport report = qforge::BuildRunReport(pairs, articles.size());
    qforge::AttachAnnotations(report, pairs, annotations,
                              baseline_annotations_path ? &baseline : nullptr);
    Put(report_json, qforge::ReportToJson(report));
    Put(report_text, qforge::ReportToTable(report, "Evaluated run"));
    return QF_OK;
  });
}

qf_status qf_corpus_stats(const char* input_path, int min_words, char** stats_json) {
  if (input_path == nullptr || stats_json == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    if (min_words < 1) {
      throw qforge::Error(qforge::ErrorCode::kInvalidArgument, "min_words must be >= 1");
    }
    std::vector<qforge::Article> articles = qforge::LoadArticles(input_path);
    qforge::CorpusStats s = qforge::ComputeCorpusStats(articles);
    size_t valid = 0;
    for (const auto& a : articles) {
      if (qforge::ValidateArticle(a, min_words).valid) ++valid;
    }
    nlohmann::ordered_json j;
    j["article_count"] = s.article_count;
    j["with_hashtags"] = s.with_hashtags;
    j["evergreen_count"] = s.evergreen_count;
    j["evergreen_fraction"] = s.evergreen_fraction;
    j["min_words"] = min_words;
    j["valid"] = valid;
    j["too_short"] = articles.size() - valid;
    Put(stats_json, j.dump(2) + "\n");
    return QF_OK;
  });
}

qf_status qf_graph_open(const char* path, qf_graph** out) {
  if (path == nullptr || out == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    auto g = std::make_unique<qf_graph>();
    g->graph = qforge::QuestionGraph::Load(path);
    *out = g.release();
    return QF_OK;
  });
}

void qf_graph_destroy(qf_graph* graph) { delete graph; }

qf_status qf_graph_query(const qf_graph* graph, const char* keyphrase, char** out) {
  if (graph == nullptr || keyphrase == nullptr || out == nullptr) {
    return Fail(QF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    Put(out, nlohmann::json(graph->graph.Query(keyphrase)).dump());
    return QF_OK;
  });
}

}  // extern "C"
