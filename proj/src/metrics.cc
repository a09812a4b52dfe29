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

#include "metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "corpus.h"
#include "error.h"
#include "json.hpp"
#include "text_util.h"

namespace qforge {
namespace {

[[noreturn]] void CsvError(int line, const std::string& what) {
  throw Error(ErrorCode::kParse, "annotations line " + std::to_string(line) + ": " + what);
}

// Splits one CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> SplitCsv(std::string_view line, int line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) CsvError(line_no, "unterminated quote");
  return fields;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string OrNa(const std::optional<double>& v, int digits) {
  return v ? Fixed(*v, digits) : "N/A";
}

}  // namespace

const char* DimensionName(Dimension d) {
  switch (d) {
    case Dimension::kQuality: return "quality";
    case Dimension::kCoherence: return "coherence";
    case Dimension::kRelevance: return "relevance";
  }
  return "?";
}

std::vector<AnnotationRecord> ParseAnnotations(std::string_view csv) {
  std::vector<AnnotationRecord> out;
  std::set<std::tuple<std::string, std::string, Dimension>> seen;
  int line_no = 0;
  bool header_seen = false;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = csv.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::Trim(line).empty()) continue;
    std::vector<std::string> f = SplitCsv(line, line_no);
    for (auto& field : f) field = std::string(text::Trim(field));
    if (!header_seen) {
      if (f != std::vector<std::string>{"pair_id", "rater_id", "dimension", "score"}) {
        CsvError(line_no, "expected header pair_id,rater_id,dimension,score");
      }
      header_seen = true;
      continue;
    }
    if (f.size() != 4) CsvError(line_no, "expected 4 fields");
    AnnotationRecord r;
    r.pair_id = f[0];
    r.rater_id = f[1];
    if (r.pair_id.empty() || r.rater_id.empty()) CsvError(line_no, "empty id");
    if (f[2] == "quality") {
      r.dimension = Dimension::kQuality;
    } else if (f[2] == "coherence") {
      r.dimension = Dimension::kCoherence;
    } else if (f[2] == "relevance") {
      r.dimension = Dimension::kRelevance;
    } else {
      CsvError(line_no, "unknown dimension '" + f[2] + "'");
    }
    try {
      size_t used = 0;
      r.score = std::stoi(f[3], &used);
      if (used != f[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      CsvError(line_no, "score is not an integer");
    }
    const bool relevance = r.dimension == Dimension::kRelevance;
    if (relevance ? (r.score != 0 && r.score != 1) : (r.score < 1 || r.score > 5)) {
      CsvError(line_no, "score out of range for " + f[2]);
    }
    if (!seen.emplace(r.pair_id, r.rater_id, r.dimension).second) {
      CsvError(line_no, "duplicate rating for (" + r.pair_id + ", " + r.rater_id +
                            ", " + f[2] + ")");
    }
    out.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorCode::kParse, "annotations: missing header");
  return out;
}

std::vector<AnnotationRecord> LoadAnnotations(const std::string& path) {
  return ParseAnnotations(ReadFile(path));
}

double Dropout(const std::vector<QAPair>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmpty, "dropout: no generated questions");
  size_t rejected = 0;
  for (const QAPair& p : pairs) {
    if (p.verdict == Verdict::kUnanswerable || p.verdict == Verdict::kLowScore) ++rejected;
  }
  return static_cast<double>(rejected) / static_cast<double>(pairs.size());
}

double ArticlesPer100(size_t articles_used, size_t kept_questions) {
  if (kept_questions < 1) {
    throw Error(ErrorCode::kInvalidArgument, "articles_per_100: no kept questions");
  }
  return 100.0 * static_cast<double>(articles_used) /
         static_cast<double>(kept_questions);
}

double RelevanceFraction(const std::vector<AnnotationRecord>& annotations,
                         const std::vector<QAPair>& pairs) {
  std::unordered_map<std::string, std::pair<int, int>> votes;  // yes, no
  for (const AnnotationRecord& a : annotations) {
    if (a.dimension != Dimension::kRelevance) continue;
    auto& v = votes[a.pair_id];
    (a.score == 1 ? v.first : v.second) += 1;
  }
  size_t kept = 0;
  size_t relevant = 0;
  std::vector<std::string> missing;
  for (const QAPair& p : pairs) {
    if (p.verdict != Verdict::kKept) continue;
    ++kept;
    auto it = votes.find(p.Id());
    if (it == votes.end()) {
      missing.push_back(p.Id());
      continue;
    }
    if (it->second.first > it->second.second) ++relevant;
  }
  if (!missing.empty()) {
    std::string msg = "insufficient raters: no relevance annotation for";
    for (const auto& id : missing) msg += " " + id;
    throw Error(ErrorCode::kInsufficientRaters, msg);
  }
  if (kept == 0) throw Error(ErrorCode::kEmpty, "relevance_fraction: no kept questions");
  return static_cast<double>(relevant) / static_cast<double>(kept);
}

LikertResult LikertAggregate(const std::vector<AnnotationRecord>& annotations,
                             Dimension dimension) {
  std::map<std::string, std::pair<long, int>> sums;  // total, raters
  for (const AnnotationRecord& a : annotations) {
    if (a.dimension != dimension) continue;
    auto& s = sums[a.pair_id];
    s.first += a.score;
    s.second += 1;
  }
  if (sums.empty()) {
    throw Error(ErrorCode::kEmpty,
                std::string("no ") + DimensionName(dimension) + " annotations");
  }
  std::string shortfalls;
  for (const auto& [id, s] : sums) {
    if (s.second < 2) shortfalls += " " + id + " (" + std::to_string(s.second) + ")";
  }
  if (!shortfalls.empty()) {
    throw Error(ErrorCode::kInsufficientRaters,
                std::string("insufficient raters for ") + DimensionName(dimension) +
                    ":" + shortfalls);
  }
  LikertResult r;
  double total = 0.0;
  for (const auto& [id, s] : sums) {
    const double mean = static_cast<double>(s.first) / s.second;
    r.per_question.emplace(id, mean);
    total += mean;
  }
  r.mean = total / static_cast<double>(sums.size());
  return r;
}

double QualityUplift(double mean_a, double mean_b) {
  if (!(mean_b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quality_uplift: reference mean must be > 0");
  }
  return 100.0 * (mean_a / mean_b - 1.0);
}

std::array<size_t, 5> QualityHistogram(
    const std::vector<AnnotationRecord>& annotations) {
  std::map<std::string, std::pair<long, int>> sums;
  for (const AnnotationRecord& a : annotations) {
    if (a.dimension != Dimension::kQuality) continue;
    auto& s = sums[a.pair_id];
    s.first += a.score;
    s.second += 1;
  }
  if (sums.empty()) throw Error(ErrorCode::kEmpty, "no quality annotations");
  std::array<size_t, 5> buckets{};
  for (const auto& [id, s] : sums) {
    const double mean = static_cast<double>(s.first) / s.second;
    const int bucket = static_cast<int>(std::floor(mean + 0.5));
    buckets[static_cast<size_t>(std::clamp(bucket, 1, 5) - 1)] += 1;
  }
  return buckets;
}

RunReport BuildRunReport(const std::vector<QAPair>& pairs, size_t articles_used) {
  RunReport r;
  r.generated = pairs.size();
  r.articles_used = articles_used;
  size_t subset = 0;
  for (const QAPair& p : pairs) {
    switch (p.verdict) {
      case Verdict::kKept:
        ++r.kept;
        if (text::ContainsIgnoreCase(p.answer, p.keyphrase)) ++subset;
        break;
      case Verdict::kUnanswerable: ++r.unanswerable; break;
      case Verdict::kLowScore: ++r.low_score; break;
      case Verdict::kToxic: ++r.toxic; break;
      case Verdict::kDuplicate: ++r.duplicate; break;
    }
  }
  r.dropout = pairs.empty() ? 0.0 : Dropout(pairs);
  if (r.kept > 0) {
    r.articles_per_100 = ArticlesPer100(articles_used, r.kept);
    r.keyword_subset_fraction = static_cast<double>(subset) / static_cast<double>(r.kept);
  }
  return r;
}

void AttachAnnotations(RunReport& report, const std::vector<QAPair>& pairs,
                       const std::vector<AnnotationRecord>& annotations,
                       const std::vector<AnnotationRecord>* baseline) {
  std::unordered_set<std::string> ids;
  for (const QAPair& p : pairs) ids.insert(p.Id());
  bool has[3] = {false, false, false};
  for (const AnnotationRecord& a : annotations) {
    if (!ids.count(a.pair_id)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "annotation for unknown pair id '" + a.pair_id + "'");
    }
    has[static_cast<int>(a.dimension)] = true;
  }
  if (has[static_cast<int>(Dimension::kQuality)]) {
    report.mean_quality = LikertAggregate(annotations, Dimension::kQuality).mean;
    report.quality_histogram = QualityHistogram(annotations);
  }
  if (has[static_cast<int>(Dimension::kCoherence)]) {
    report.mean_coherence = LikertAggregate(annotations, Dimension::kCoherence).mean;
  }
  if (has[static_cast<int>(Dimension::kRelevance)]) {
    report.relevance_fraction = RelevanceFraction(annotations, pairs);
  }
  if (baseline != nullptr) {
    report.baseline_quality = LikertAggregate(*baseline, Dimension::kQuality).mean;
    if (report.mean_quality) {
      report.quality_uplift = QualityUplift(*report.mean_quality, *report.baseline_quality);
    }
  }
}

std::string ReportToJson(const RunReport& r) {
  nlohmann::ordered_json j;
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  j["generated"] = r.generated;
  j["kept"] = r.kept;
  j["unanswerable"] = r.unanswerable;
  j["low_score"] = r.low_score;
  j["toxic"] = r.toxic;
  j["duplicate"] = r.duplicate;
  j["dropout"] = r.dropout;
  j["relevance_fraction"] = opt(r.relevance_fraction);
  j["articles_used"] = r.articles_used;
  j["articles_per_100"] = opt(r.articles_per_100);
  j["mean_quality"] = opt(r.mean_quality);
  j["mean_coherence"] = opt(r.mean_coherence);
  j["quality_histogram"] = r.quality_histogram
                               ? nlohmann::ordered_json(*r.quality_histogram)
                               : nlohmann::ordered_json(nullptr);
  j["keyword_subset_fraction"] = opt(r.keyword_subset_fraction);
  j["baseline_quality"] = opt(r.baseline_quality);
  j["quality_uplift"] = opt(r.quality_uplift);
  return j.dump(2) + "\n";
}

std::string ReportToTable(const RunReport& r, std::string_view label) {
  const std::string name(label);
  std::string out;
  out += "generated=" + std::to_string(r.generated) + " kept=" + std::to_string(r.kept) +
         " unanswerable=" + std::to_string(r.unanswerable) +
         " low_score=" + std::to_string(r.low_score) + " toxic=" + std::to_string(r.toxic) +
         " duplicate=" + std::to_string(r.duplicate) + "\n\n";
  out += "| System | Coherence | Dropout | Quality |\n";
  out += "|---|---|---|---|\n";
  out += "| " + name + " | " + OrNa(r.mean_coherence, 3) + " | " +
         (r.generated ? Fixed(100.0 * r.dropout, 1) + "%" : std::string("N/A")) + " | " +
         OrNa(r.mean_quality, 3) + " |\n\n";
  out += "| System | Articles Needed (per 100 questions) | Relevance Fraction | Quality |\n";
  out += "|---|---|---|---|\n";
  out += "| " + name + " | " + OrNa(r.articles_per_100, 2) + " | " +
         OrNa(r.relevance_fraction, 2) + " | " + OrNa(r.mean_quality, 3) + " |\n";
  if (r.quality_histogram) {
    out += "\nquality histogram (per-question mean, rounded):\n";
    for (size_t i = 0; i < 5; ++i) {
      out += "  " + std::to_string(i + 1) + ": " + std::to_string((*r.quality_histogram)[i]) + "\n";
    }
  }
  if (r.keyword_subset_fraction) {
    out += "\nkeyword contained in answer: " + Fixed(*r.keyword_subset_fraction, 3) + "\n";
  }
  if (r.quality_uplift) {
    out += "quality uplift vs baseline (" + Fixed(*r.baseline_quality, 3) +
           "): " + Fixed(*r.quality_uplift, 1) + "%\n";
  }
  return out;
}

}  // namespace qforge
