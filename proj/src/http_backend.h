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

#ifndef QFORGE_SRC_HTTP_BACKEND_H_
#define QFORGE_SRC_HTTP_BACKEND_H_

#include <string>

#include "backend.h"

namespace qforge {

struct HttpBackendOptions {
  std::string base_url;  // e.g. "http://127.0.0.1:8700" or with a path prefix
  int timeout_ms = 30000;
  int max_retries = 2;
};

// Wire protocol v1 over JSON/HTTP. Transport failures and 429/502/503/504
// are retried with linear backoff; after the last attempt they surface as
// Error(kBackendUnavailable). Any other non-200 reply is Error(kProtocol)
// carrying the server's "error" field.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendOptions options);

  std::string Identity() const override;
  HealthResponse Health() override;
  std::vector<Embedding> Embed(const std::vector<std::string>& texts) override;
  std::string ResolveCoref(const std::string& text) override;
  GenerationResponse Generate(const std::string& context,
                              const std::string& keyphrase) override;
  AnswerResponse Answer(const std::string& question,
                        const std::string& context) override;
  double Toxicity(const std::string& text) override;
  std::string Summarize(const std::string& text) override;
  int64_t CountTokens(const std::string& text) override;

 private:
  std::string Call(const std::string& method, const std::string& endpoint,
                   const std::string& body);

  HttpBackendOptions options_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

}  // namespace qforge

#endif  // QFORGE_SRC_HTTP_BACKEND_H_
