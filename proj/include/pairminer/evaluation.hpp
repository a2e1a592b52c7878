// Copyright 2026 The pairminer Authors.
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairminer/catalog.hpp"
#include "pairminer/matcher.hpp"

namespace pairminer {

struct GroundTruthEntry {
  PostId answer_id = 0;
  CommentId comment_id = 0;
  /// Empty when the comment caused no edit.
  std::optional<int> edit_version;
};

/// CSV with header answer_id,comment_id,edit_version. Throws ParseError on
/// malformed rows and duplicate (answer_id, comment_id) keys.
std::vector<GroundTruthEntry> read_ground_truth(const std::filesystem::path& path);

using TagMap = std::map<PostId, std::string>;
TagMap tags_of(std::span<const AnswerTimeline> timelines);

inline constexpr const char* kOverallTag = "Overall";

struct EvalRow {
  std::string tag;
  std::size_t existing = 0;
  std::size_t detected = 0;
  std::size_t correct = 0;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvalReport {
  /// One row per tag in tag order, followed by the overall row.
  std::vector<EvalRow> rows;

  const EvalRow& overall() const { return rows.back(); }
  const EvalRow* find(std::string_view tag) const;
};

/// A detected pair is correct iff the ground truth pairs the same comment
/// with the same edit version. Throws Error for an empty ground truth or a
/// pair/entry whose answer has no tag.
EvalReport score(std::span<const CommentEditPair> detected,
                 std::span<const GroundTruthEntry> ground_truth, const TagMap& tag_of);

std::string format_eval_report(const EvalReport& report,
                               const EvalReport* baseline = nullptr);
nlohmann::ordered_json eval_report_to_json(const EvalReport& report);

/// Square contingency table of two raters' labels.
struct AgreementTable {
  std::vector<std::string> categories;
  /// counts[i][j]: items rater A labeled i and rater B labeled j.
  std::vector<std::vector<std::int64_t>> counts;
};

/// CSV matrix: header row of labels (first cell ignored), then one row per
/// label starting with the label. Throws ParseError on shape mismatch.
AgreementTable read_agreement_table(const std::filesystem::path& path);

/// (p_o - p_e) / (1 - p_e). Throws Error for an empty or non-square table,
/// negative counts, or p_e == 1.
double cohen_kappa(const AgreementTable& table);

/// Cochran sample size with finite population correction at p = 0.5.
std::int64_t sample_size(std::int64_t population, double confidence, double interval);

struct SweepPoint {
  double threshold = 0.0;
  std::size_t detected = 0;
  std::size_t correct = 0;
  std::size_t existing = 0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Overall score of a full match run per threshold. `base` supplies the
/// non-threshold match settings. Thresholds must be ascending.
std::vector<SweepPoint> threshold_sweep(std::span<const AnswerTimeline> timelines,
                                        const RegexCatalog& catalog,
                                        std::span<const GroundTruthEntry> ground_truth,
                                        std::span<const double> thresholds,
                                        const MatchConfig& base = {},
                                        const CorpusOptions& options = {});

std::string format_sweep_csv(std::span<const SweepPoint> points);
nlohmann::ordered_json sweep_to_json(std::span<const SweepPoint> points);

}  // namespace pairminer
