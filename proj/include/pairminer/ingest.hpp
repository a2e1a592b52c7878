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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairminer/timestamp.hpp"

namespace pairminer {

using PostId = std::int64_t;
using UserId = std::int64_t;
using CommentId = std::int64_t;

enum class PostKind { question, answer };

struct PostRecord {
  PostId post_id = 0;
  std::optional<PostId> parent_question_id;
  PostKind kind = PostKind::answer;
  UserId author_id = 0;
  Timestamp created{};
  std::int64_t score = 0;
  std::string tag;
};

/// One historical state of an answer's code blocks. Version 1 is the
/// initial body.
struct VersionSnapshot {
  PostId post_id = 0;
  int version_index = 1;
  UserId editor_id = 0;
  Timestamp created{};
  std::vector<std::string> code_blocks;
};

struct CommentRecord {
  CommentId comment_id = 0;
  PostId post_id = 0;
  UserId author_id = 0;
  Timestamp created{};
  std::string text;
};

/// Initial body, subsequent edits and comments of one answer, in
/// chronological order.
struct AnswerTimeline {
  PostRecord answer;
  /// Author of the parent question when the question is part of the dump.
  std::optional<UserId> questioner_id;
  std::vector<VersionSnapshot> versions;
  std::vector<CommentRecord> comments;

  /// Versions after the initial body.
  std::size_t edit_count() const {
    return versions.empty() ? 0 : versions.size() - 1;
  }
  const VersionSnapshot* find_version(int version_index) const;
  const CommentRecord* find_comment(CommentId id) const;
};

struct DumpPaths {
  std::filesystem::path posts;
  std::filesystem::path versions;
  std::filesystem::path comments;
};

struct LoadedDump {
  /// Sorted by answer post_id.
  std::vector<AnswerTimeline> timelines;
  std::size_t comment_lines = 0;
  /// Comments on questions or on answers without any code block.
  std::size_t rejected_comments = 0;
  std::size_t dropped_answers = 0;
};

struct LoadOptions {
  /// Parse the three files concurrently.
  bool parallel = false;
};

/// Builds validated per-answer timelines from line-delimited JSON dumps.
/// Throws InputError for unreadable paths and ParseError for malformed or
/// dangling records.
LoadedDump load_dump(const DumpPaths& paths, const LoadOptions& options = {});

/// Empty iff every timeline invariant holds.
std::vector<std::string> validate_timeline(const AnswerTimeline& timeline);

// Timeline cache. The cache is a JSON document with a format_version field.
inline constexpr int kTimelineCacheVersion = 1;

nlohmann::json timeline_to_json(const AnswerTimeline& timeline);
AnswerTimeline timeline_from_json(const nlohmann::json& j);

void write_timeline_cache(const std::filesystem::path& path,
                          const std::vector<AnswerTimeline>& timelines);
std::vector<AnswerTimeline> read_timeline_cache(const std::filesystem::path& path);

}  // namespace pairminer
