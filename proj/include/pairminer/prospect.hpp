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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pairminer/ingest.hpp"
#include "pairminer/matcher.hpp"
#include "pairminer/repo_host.hpp"
#include "pairminer/timestamp.hpp"

namespace pairminer {

struct RepoCriteria {
  std::string language;
  std::int64_t min_stars = 5;
  std::int64_t max_days_since_push = 90;
  std::int64_t min_closed_prs = 1;
};

/// Host search string, e.g. "language:java pushed:>2026-07-16 stars:>=5".
std::string build_search_query(const RepoCriteria& criteria, Timestamp now);

/// True when `repo` meets every criterion except the pull-request count.
bool meets_metadata_criteria(const RepoInfo& repo, const RepoCriteria& criteria, Timestamp now);

/// Repositories satisfying all criteria, deduplicated and ordered by stars
/// (descending) then name. Results from the host are re-checked locally.
std::vector<RepoInfo> search_repos(const RepoCriteria& criteria, RepoHost& host, Timestamp now);

/// Host language for a question tag ("android" -> "Java").
std::string language_for_tag(std::string_view tag);

struct SourceFile {
  std::string path;
  std::string contents;
};

struct MatchSite {
  std::string repo;
  std::string file_path;
  std::int64_t line_start = 0;  // 1-based
  std::int64_t column = 0;      // 1-based, in bytes of the normalized line
  std::string snippet;

  bool operator==(const MatchSite&) const = default;
};

/// CRLF/CR to LF and trailing whitespace removed from every line.
std::string normalize_code(std::string_view text);

/// normalize_code plus removal of leading and trailing blank lines.
std::string normalize_snippet(std::string_view text);

/// Every occurrence of the normalized snippet in the normalized files.
/// Throws Error if the snippet is empty after normalization.
std::vector<MatchSite> find_code_sites(std::span<const SourceFile> files,
                                       std::string_view before_snippet,
                                       std::string_view repo = {});

enum class BeforeStrategy { containing_block, whole_version };

BeforeStrategy parse_before_strategy(std::string_view name);
std::string_view to_string(BeforeStrategy s);

/// Code of the version preceding the pair's edit. With containing_block,
/// the first block of that version holding a matched diff term is used,
/// falling back to the first block; whole_version joins all blocks.
/// Throws Error if the previous version has no code.
std::string select_before_snippet(const AnswerTimeline& timeline, const CommentEditPair& pair,
                                  BeforeStrategy strategy = BeforeStrategy::containing_block);

struct PrCandidate {
  PostId answer_id = 0;
  CommentId comment_id = 0;
  int edit_version = 2;
  MatchSite site;
  std::string description;

  bool operator==(const PrCandidate&) const = default;
};

/// One candidate per site; the description is the comment text verbatim.
/// Throws Error if the comment text is empty.
std::vector<PrCandidate> emit_candidates(const CommentEditPair& pair, std::string_view comment_text,
                                         std::span<const MatchSite> sites);

struct ProspectOptions {
  RepoCriteria criteria;  // language empty: derived from each answer's tag
  BeforeStrategy before_strategy = BeforeStrategy::containing_block;
  Timestamp now{};
};

/// Searches the host for each pair's pre-edit code and emits candidates.
/// Repository searches and file contents are fetched once per language /
/// repository.
std::vector<PrCandidate> prospect(std::span<const AnswerTimeline> timelines,
                                  std::span<const CommentEditPair> pairs, RepoHost& host,
                                  const ProspectOptions& options);

nlohmann::ordered_json candidate_to_json(const PrCandidate& c);
std::string format_candidates_jsonl(std::span<const PrCandidate> candidates);

}  // namespace pairminer
