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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pairminer/catalog.hpp"
#include "pairminer/ingest.hpp"
#include "pairminer/similarity.hpp"

namespace pairminer {

struct MatchConfig {
  double threshold = 90.0;
  SimilarityNorm similarity_norm = SimilarityNorm::max_norm;
  bool require_distinct_authors = true;
};

enum class MatchMethod { code_check, proximity_baseline };

std::string_view to_string(MatchMethod method);
MatchMethod parse_match_method(std::string_view text);

struct CommentEditPair {
  PostId answer_id = 0;
  CommentId comment_id = 0;
  int edit_version = 2;
  std::vector<TermMatch> matches;
  MatchMethod method = MatchMethod::code_check;

  friend bool operator==(const CommentEditPair&, const CommentEditPair&) = default;
};

/// Pairs each comment with the first later edit, by someone else, whose
/// code-term symmetric difference against the previous version fuzzily
/// shares a term with the comment. Output sorted by comment_id.
std::vector<CommentEditPair> match_answer(const AnswerTimeline& timeline,
                                          const RegexCatalog& catalog, const MatchConfig& cfg);

/// Pairs each comment with the nearest later edit, ignoring content.
std::vector<CommentEditPair> baseline_match(const AnswerTimeline& timeline);

struct CorpusOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  std::size_t jobs = 1;
};

/// match_answer over every timeline, ordered by (answer_id, comment_id).
std::vector<CommentEditPair> match_corpus(std::span<const AnswerTimeline> timelines,
                                          const RegexCatalog& catalog, const MatchConfig& cfg,
                                          const CorpusOptions& options = {});

std::vector<CommentEditPair> baseline_corpus(std::span<const AnswerTimeline> timelines,
                                             const CorpusOptions& options = {});

// Pairs file: one JSON object per line, sorted by (answer_id, comment_id).
nlohmann::ordered_json pair_to_json(const CommentEditPair& pair);
CommentEditPair pair_from_json(const nlohmann::json& j);
std::string format_pairs_jsonl(std::span<const CommentEditPair> pairs);
void write_pairs(const std::filesystem::path& path, std::span<const CommentEditPair> pairs);
std::vector<CommentEditPair> read_pairs(const std::filesystem::path& path);

}  // namespace pairminer
