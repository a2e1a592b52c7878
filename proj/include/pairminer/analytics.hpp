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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pairminer/evaluation.hpp"
#include "pairminer/ingest.hpp"
#include "pairminer/matcher.hpp"
#include "pairminer/stats.hpp"

namespace pairminer {

/// Comment intent categories used to label confirmed pairs.
enum class Category {
  Correction,
  Extension,
  Flaw,
  Error,
  Obsolete,
  Disagree,
  Question,
  Request,
  Solution,
  Other,
};

inline constexpr std::array<Category, 10> kAllCategories = {
    Category::Correction, Category::Extension, Category::Flaw,     Category::Error,
    Category::Obsolete,   Category::Disagree,  Category::Question, Category::Request,
    Category::Solution,   Category::Other,
};

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view text);

struct PairAnnotation {
  PostId answer_id = 0;
  CommentId comment_id = 0;
  bool confirmed = false;
  std::optional<bool> tangled;
  std::optional<bool> useful;
  std::optional<Category> category;
};

/// CSV with header answer_id,comment_id,confirmed,tangled,useful,category.
/// Empty cells are absent values. Throws ParseError naming the line when a
/// row is malformed or annotates an unconfirmed pair.
std::vector<PairAnnotation> read_annotations(const std::filesystem::path& path);

/// Annotations whose answer carries `tag`.
std::vector<PairAnnotation> filter_by_tag(std::span<const PairAnnotation> annotations,
                                          const TagMap& tag_of, std::string_view tag);

/// Everything derived for one confirmed, categorized pair.
struct PairFacts {
  PostId answer_id = 0;
  CommentId comment_id = 0;
  Category category = Category::Other;
  std::string tag;
  UserId commenter = 0;
  UserId editor = 0;
  UserId answerer = 0;
  UserId questioner = 0;
  std::int64_t score = 0;
  double response_seconds = 0.0;
};

/// Joins confirmed, categorized annotations with their matched pair and
/// timeline. Throws Error naming the pair when the pair, timeline, version
/// or comment cannot be resolved or the questioner is unknown.
std::vector<PairFacts> derive_pair_facts(std::span<const CommentEditPair> pairs,
                                         std::span<const PairAnnotation> annotations,
                                         std::span<const AnswerTimeline> timelines);

struct RelationshipOptions {
  /// Pairs slower than this are left out of the mean response time.
  std::optional<double> response_outlier_seconds;
};

struct CategoryStatsRow {
  /// Empty for the row aggregating every category.
  std::optional<Category> category;
  std::size_t pairs = 0;
  std::size_t commenter_editor_same = 0;
  std::size_t commenter_editor_diff = 0;
  std::size_t answerer_editor_same = 0;
  std::size_t answerer_editor_diff = 0;
  std::size_t questioner_commenter_same = 0;
  std::size_t questioner_commenter_diff = 0;
  double mean_score = 0.0;
  double mean_response_seconds = 0.0;
  /// Pairs dropped from the response-time mean by the outlier cutoff.
  std::size_t response_outliers = 0;
};

/// One row per category present (category order), then the all-categories
/// row.
std::vector<CategoryStatsRow> aggregate_relationships(std::span<const PairFacts> facts,
                                                      const RelationshipOptions& options = {});

std::vector<CategoryStatsRow> aggregate_relationships(std::span<const CommentEditPair> pairs,
                                                      std::span<const PairAnnotation> annotations,
                                                      std::span<const AnswerTimeline> timelines,
                                                      const RelationshipOptions& options = {});

struct CategoryCountRow {
  Category category = Category::Other;
  std::size_t all = 0;
  std::size_t useful = 0;
};

struct CategoryCounts {
  /// Every category, in category order.
  std::vector<CategoryCountRow> rows;
  /// Confirmed annotations, including any without a category.
  std::size_t total_all = 0;
  std::size_t total_useful = 0;
  std::size_t uncategorized = 0;

  const CategoryCountRow& row(Category c) const;
};

CategoryCounts category_counts(std::span<const PairAnnotation> annotations);

struct TangledRow {
  std::string tag;
  std::size_t confirmed = 0;
  std::size_t tangled = 0;
  std::size_t useful = 0;
  std::size_t useful_tangled = 0;
  double tangled_rate = 0.0;
  double useful_rate = 0.0;
};

/// Per tag (tag order) plus the overall row.
std::vector<TangledRow> tangled_rate(std::span<const PairAnnotation> annotations,
                                     const TagMap& tag_of);

/// Category x (questioner is commenter, is not) table over the categories
/// present in `facts`, for the chi-squared test.
struct Contingency {
  std::vector<Category> categories;
  std::vector<std::vector<double>> counts;
};
Contingency questioner_contingency(std::span<const PairFacts> facts);

struct PairwiseTest {
  Category first = Category::Other;
  Category second = Category::Other;
  RankSumResult result;
  double p_adjusted = 1.0;
};

enum class FactMeasure { score, response_time };

/// Rank-sum tests between every pair of categories on one measure, with
/// Benjamini-Hochberg adjusted p-values. Category pairs whose test is
/// undefined (all values tied) are skipped.
std::vector<PairwiseTest> pairwise_rank_sum(std::span<const PairFacts> facts, FactMeasure measure,
                                            const RelationshipOptions& options = {});

// Plain-text and JSON reports.

/// Columns per tag, then Overall; rows ordered by overall count with Other
/// last.
std::string format_category_counts(const std::vector<std::pair<std::string, CategoryCounts>>& by_tag,
                                   const CategoryCounts& overall);
nlohmann::ordered_json category_counts_to_json(const CategoryCounts& counts);

std::string format_tangled(std::span<const TangledRow> rows);
nlohmann::ordered_json tangled_to_json(std::span<const TangledRow> rows);

std::string format_relationships(std::span<const CategoryStatsRow> rows);
nlohmann::ordered_json relationships_to_json(std::span<const CategoryStatsRow> rows);

}  // namespace pairminer
