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

// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qforge/qforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { qf_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct ConfigDeleter {
  void operator()(qf_config* c) const { qf_config_destroy(c); }
};
struct EngineDeleter {
  void operator()(qf_engine* e) const { qf_engine_destroy(e); }
};
struct GraphDeleter {
  void operator()(qf_graph* g) const { qf_graph_destroy(g); }
};

int Report(qf_status status, const char* what) {
  std::cerr << "qforge " << what << ": " << qf_status_name(status) << ": "
            << qf_last_error() << "\n";
  return status == QF_ERR_PARTIAL ? kExitPartial : kExitUsage;
}

std::string Num(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

bool WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

// Options shared by the commands that need an engine.
struct EngineOptions {
  std::string config_path;
  std::string backend;
  std::vector<std::string> overrides;
  std::optional<int> top_k;
  std::optional<double> lambda;
  std::optional<int> window;
  std::optional<double> null_threshold;
  std::optional<double> toxicity_threshold;
  std::optional<int> min_words;
  std::optional<int> max_input_tokens;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file");
    cmd->add_option("--backend", backend, "'stub' or a backend base URL");
    cmd->add_option("--set", overrides, "config override key=value (repeatable)");
    cmd->add_option("--top-k", top_k, "keyphrases per article");
    cmd->add_option("--lambda", lambda, "MMR diversity trade-off in [0,1]");
    cmd->add_option("--window", window, "context sentences on each side");
    cmd->add_option("--null-threshold", null_threshold, "minimum QA score to keep");
    cmd->add_option("--toxicity-threshold", toxicity_threshold, "toxicity cut-off");
    cmd->add_option("--min-words", min_words, "minimum article length");
    cmd->add_option("--max-input-tokens", max_input_tokens, "chunk budget");
  }

  // Precedence: config file < QFORGE_BACKEND_URL < flags.
  std::unique_ptr<qf_config, ConfigDeleter> BuildConfig(int* exit_code) const {
    qf_config* raw = nullptr;
    qf_status st = qf_config_create(&raw);
    std::unique_ptr<qf_config, ConfigDeleter> config(raw);
    auto set = [&](const std::string& k, const std::string& v) {
      if (st != QF_OK) return;
      st = qf_config_set(config.get(), k.c_str(), v.c_str());
    };
    if (st == QF_OK && !config_path.empty()) {
      st = qf_config_load_file(config.get(), config_path.c_str());
    }
    if (const char* env = std::getenv("QFORGE_BACKEND_URL"); env && *env) {
      set("backend", env);
    }
    if (!backend.empty()) set("backend", backend);
    if (top_k) set("top_k_keyphrases", std::to_string(*top_k));
    if (lambda) set("mmr_lambda", Num(*lambda));
    if (window) set("window", std::to_string(*window));
    if (null_threshold) set("null_threshold", Num(*null_threshold));
    if (toxicity_threshold) set("toxicity_threshold", Num(*toxicity_threshold));
    if (min_words) set("min_words", std::to_string(*min_words));
    if (max_input_tokens) set("max_input_tokens", std::to_string(*max_input_tokens));
    for (const std::string& kv : overrides) {
      const size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "qforge: --set expects key=value, got '" << kv << "'\n";
        *exit_code = kExitUsage;
        return nullptr;
      }
      set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (st != QF_OK) {
      *exit_code = Report(st, "config");
      return nullptr;
    }
    return config;
  }

  std::unique_ptr<qf_engine, EngineDeleter> BuildEngine(int* exit_code) const {
    auto config = BuildConfig(exit_code);
    if (!config) return nullptr;
    qf_engine* raw = nullptr;
    qf_status st = qf_engine_create(config.get(), &raw);
    if (st != QF_OK) {
      *exit_code = Report(st, "engine");
      return nullptr;
    }
    return std::unique_ptr<qf_engine, EngineDeleter>(raw);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qforge: adversarial question generation over article corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qf_version()));

  // run
  EngineOptions run_engine;
  std::string run_input, run_out, run_graph;
  int run_workers = 0;
  bool run_resume = false;
  CLI::App* run = app.add_subcommand("run", "maximal generation over a corpus");
  run->add_option("--input", run_input, "article JSONL")->required();
  run->add_option("--out", run_out, "QAPair JSONL output")->required();
  run->add_option("--graph", run_graph, "question graph output (default <out>.graph.json)");
  run->add_option("--workers", run_workers, "concurrent articles (default: all cores)");
  run->add_flag("--resume", run_resume, "continue from <out>.resume.json");
  run_engine.Attach(run);

  // compare
  EngineOptions cmp_engine;
  std::string cmp_input, cmp_out;
  int cmp_workers = 0;
  CLI::App* compare =
      app.add_subcommand("compare", "maximal generation vs. summarization baseline");
  compare->add_option("--input", cmp_input, "article JSONL")->required();
  compare->add_option("--out", cmp_out, "write the comparison JSON here");
  compare->add_option("--workers", cmp_workers, "concurrent articles");
  cmp_engine.Attach(compare);

  // eval
  std::string eval_pairs, eval_annotations, eval_baseline, eval_out;
  CLI::App* eval = app.add_subcommand("eval", "join run output with human annotations");
  eval->add_option("--pairs", eval_pairs, "QAPair JSONL")->required();
  eval->add_option("--annotations", eval_annotations, "annotation CSV")->required();
  eval->add_option("--baseline-annotations", eval_baseline,
                   "annotation CSV of the reference system (quality uplift)");
  eval->add_option("--out", eval_out, "write the RunReport JSON here");

  // graph
  std::string graph_path, graph_key;
  CLI::App* graph = app.add_subcommand("graph", "query related questions by keyphrase");
  graph->add_option("--graph", graph_path, "question graph JSON")->required();
  graph->add_option("--keyphrase", graph_key, "keyphrase to look up")->required();

  // stats
  std::string stats_input;
  int stats_min_words = 500;
  CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--input", stats_input, "article JSONL")->required();
  stats->add_option("--min-words", stats_min_words, "validity threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  int exit_code = kExitOk;

  if (*run) {
    auto engine = run_engine.BuildEngine(&exit_code);
    if (!engine) return exit_code;
    OwnedString json, text;
    qf_status st = qf_engine_run(engine.get(), run_input.c_str(), run_out.c_str(),
                                 run_graph.empty() ? nullptr : run_graph.c_str(),
                                 run_workers, run_resume ? 1 : 0, &json.p, &text.p);
    if (text.p) std::cout << text.str();
    if (st != QF_OK) return Report(st, "run");
    return kExitOk;
  }

  if (*compare) {
    auto engine = cmp_engine.BuildEngine(&exit_code);
    if (!engine) return exit_code;
    OwnedString json, text;
    qf_status st =
        qf_engine_compare(engine.get(), cmp_input.c_str(), cmp_workers, &json.p, &text.p);
    if (st != QF_OK) return Report(st, "compare");
    std::cout << text.str();
    if (!cmp_out.empty() && !WriteText(cmp_out, json.str())) {
      std::cerr << "qforge compare: cannot write " << cmp_out << "\n";
      return kExitUsage;
    }
    return kExitOk;
  }

  if (*eval) {
    OwnedString json, text;
    qf_status st = qf_eval(eval_pairs.c_str(), eval_annotations.c_str(),
                           eval_baseline.empty() ? nullptr : eval_baseline.c_str(),
                           &json.p, &text.p);
    if (st != QF_OK) return Report(st, "eval");
    std::cout << text.str();
    if (!eval_out.empty() && !WriteText(eval_out, json.str())) {
      std::cerr << "qforge eval: cannot write " << eval_out << "\n";
      return kExitUsage;
    }
    return kExitOk;
  }

  if (*graph) {
    qf_graph* raw = nullptr;
    qf_status st = qf_graph_open(graph_path.c_str(), &raw);
    if (st != QF_OK) return Report(st, "graph");
    std::unique_ptr<qf_graph, GraphDeleter> g(raw);
    OwnedString ids;
    st = qf_graph_query(g.get(), graph_key.c_str(), &ids.p);
    if (st != QF_OK) return Report(st, "graph");
    std::cout << ids.str() << "\n";
    return kExitOk;
  }

  if (*stats) {
    OwnedString json;
    qf_status st = qf_corpus_stats(stats_input.c_str(), stats_min_words, &json.p);
    if (st != QF_OK) return Report(st, "stats");
    std::cout << json.str();
    return kExitOk;
  }
  return exit_code;
}
