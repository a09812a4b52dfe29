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

#ifndef QFORGE_SRC_METRICS_H_
#define QFORGE_SRC_METRICS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pipeline.h"

namespace qforge {

enum class Dimension { kQuality, kCoherence, kRelevance };

const char* DimensionName(Dimension d);

struct AnnotationRecord {
  std::string pair_id;
  std::string rater_id;
  Dimension dimension = Dimension::kQuality;
  int score = 0;  // 1..5, or 0/1 for relevance
};

// CSV with header pair_id,rater_id,dimension,score. Throws Error(kParse)
// naming the line for malformed rows, out-of-range scores and repeated
// (pair_id, rater_id, dimension) triples.
std::vector<AnnotationRecord> ParseAnnotations(std::string_view csv);
std::vector<AnnotationRecord> LoadAnnotations(const std::string& path);

// Fraction of generated pairs rejected by the QA filter
// (Unanswerable + LowScore). Toxic and Duplicate pairs count as generated
// but not as dropped.
double Dropout(const std::vector<QAPair>& pairs);

double ArticlesPer100(size_t articles_used, size_t kept_questions);

// Share of Kept pairs that a strict majority of raters marked relevant.
double RelevanceFraction(const std::vector<AnnotationRecord>& annotations,
                         const std::vector<QAPair>& pairs);

struct LikertResult {
  double mean = 0.0;  // macro-average of per-question means
  std::map<std::string, double> per_question;
};

// Requires at least two raters for every question scored in `dimension`;
// otherwise Error(kInsufficientRaters) listing the shortfalls.
LikertResult LikertAggregate(const std::vector<AnnotationRecord>& annotations,
                             Dimension dimension);

// 100 * (mean_a / mean_b - 1).
double QualityUplift(double mean_a, double mean_b);

// Per-question mean quality rounded half-up, counted in buckets 1..5.
std::array<size_t, 5> QualityHistogram(
    const std::vector<AnnotationRecord>& annotations);

struct RunReport {
  size_t generated = 0;
  size_t kept = 0;
  size_t unanswerable = 0;
  size_t low_score = 0;
  size_t toxic = 0;
  size_t duplicate = 0;
  double dropout = 0.0;
  size_t articles_used = 0;
  std::optional<double> articles_per_100;
  std::optional<double> keyword_subset_fraction;
  std::optional<double> relevance_fraction;
  std::optional<double> mean_quality;
  std::optional<double> mean_coherence;
  std::optional<std::array<size_t, 5>> quality_histogram;
  std::optional<double> baseline_quality;
  std::optional<double> quality_uplift;
};

// Counts, dropout, articles-per-100 and the keyword-subset statistic.
// An empty `pairs` yields a zero report with dropout 0.
RunReport BuildRunReport(const std::vector<QAPair>& pairs, size_t articles_used);

// Joins human annotations onto a report built from `pairs`. Annotation
// pair ids must exist in `pairs`. `baseline` annotations, when given, are
// aggregated on their own and used as the uplift reference.
void AttachAnnotations(RunReport& report, const std::vector<QAPair>& pairs,
                       const std::vector<AnnotationRecord>& annotations,
                       const std::vector<AnnotationRecord>* baseline = nullptr);

std::string ReportToJson(const RunReport& report);
// Plain-text tables in the layout of the adversarial (coherence, dropout,
// quality) and scaling (articles per 100, relevance, quality) comparisons.
std::string ReportToTable(const RunReport& report, std::string_view label);

}  // namespace qforge

#endif  // QFORGE_SRC_METRICS_H_
