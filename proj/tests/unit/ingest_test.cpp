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

#include "pairminer/ingest.hpp"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "pairminer/error.hpp"
#include "test_support.hpp"

namespace pairminer {
namespace {

using testing::dump_paths;
using testing::fixture;
using testing::spit;
using testing::TempDir;

const char* kPosts =
    R"({"id":1,"kind":"question","parent_id":null,"author_id":10,"created_at":"2020-01-01T00:00:00Z","score":3,"tag":"java"}
{"id":2,"kind":"answer","parent_id":1,"author_id":11,"created_at":"2020-01-01T01:00:00Z","score":5,"tag":"java"}
{"id":3,"kind":"answer","parent_id":1,"author_id":12,"created_at":"2020-01-01T02:00:00Z","score":0,"tag":"java"}
)";
const char* kVersions =
    R"({"post_id":2,"version":2,"editor_id":11,"created_at":"2020-01-01T03:00:00Z","code_blocks":["int b;"]}
{"post_id":2,"version":1,"editor_id":11,"created_at":"2020-01-01T01:00:00Z","code_blocks":["int a;"]}
{"post_id":3,"version":1,"editor_id":12,"created_at":"2020-01-01T02:00:00Z","code_blocks":[]}
)";
const char* kComments =
    R"({"id":7,"post_id":2,"author_id":10,"created_at":"2020-01-01T02:30:00Z","text":"second"}
{"id":5,"post_id":2,"author_id":13,"created_at":"2020-01-01T02:30:00Z","text":"first by id"}
{"id":6,"post_id":1,"author_id":13,"created_at":"2020-01-01T00:10:00Z","text":"on the question"}
{"id":8,"post_id":3,"author_id":13,"created_at":"2020-01-01T02:10:00Z","text":"on a codeless answer"}
)";

DumpPaths write_dump(const TempDir& dir, const std::string& posts = kPosts, const std::string& versions = kVersions,
                     const std::string& comments = kComments) {
  spit(dir / "posts.jsonl", posts);
  spit(dir / "versions.jsonl", versions);
  spit(dir / "comments.jsonl", comments);
  return dump_paths(dir.path());
}

TEST(Ingest, BuildsSortedTimelines) {
  TempDir dir;
  for (bool parallel : {false, true}) {
    const LoadedDump d = load_dump(write_dump(dir), {parallel});
    ASSERT_EQ(d.timelines.size(), 1u);
    const AnswerTimeline& t = d.timelines[0];
    EXPECT_EQ(t.answer.post_id, 2);
    EXPECT_EQ(t.questioner_id, 10);
    ASSERT_EQ(t.versions.size(), 2u);
    EXPECT_EQ(t.versions[0].version_index, 1);
    EXPECT_EQ(t.edit_count(), 1u);
    ASSERT_EQ(t.comments.size(), 2u);
    EXPECT_EQ(t.comments[0].comment_id, 5);  // same time, lower id first
    EXPECT_EQ(d.comment_lines, 4u);
    EXPECT_EQ(d.rejected_comments, 2u);
    EXPECT_EQ(d.dropped_answers, 1u);
    EXPECT_EQ(t.find_comment(7)->text, "second");
    EXPECT_EQ(t.find_version(3), nullptr);
  }
}

TEST(Ingest, MissingFileNamesThePath) {
  TempDir dir;
  auto paths = write_dump(dir);
  paths.comments = dir / "nope.jsonl";
  try {
    load_dump(paths);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("nope.jsonl"), std::string::npos);
  }
}

TEST(Ingest, MalformedRecordsCarryFileAndLine) {
  TempDir dir;
  std::string bad_versions = kVersions;
  bad_versions += R"({"post_id":2,"version":"three","editor_id":11,"created_at":"2020-01-01T03:00:00Z","code_blocks":[]})";
  try {
    load_dump(write_dump(dir, kPosts, bad_versions));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(e.file().find("versions.jsonl"), std::string::npos);
  }
  std::string dangling = kComments;
  dangling += R"({"id":9,"post_id":99,"author_id":13,"created_at":"2020-01-01T02:10:00Z","text":"x"})";
  try {
    load_dump(write_dump(dir, kPosts, kVersions, dangling));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
  EXPECT_THROW(load_dump(write_dump(dir, std::string(kPosts) + R"({"id":2,"kind":"answer","parent_id":1,"author_id":1,"created_at":"2020-01-01T00:00:00Z","score":0,"tag":"x"})")),
               Error);
  EXPECT_THROW(load_dump(write_dump(dir, R"({"id":1,"kind":"wiki","author_id":1,"created_at":"2020-01-01","score":0,"tag":"x"})")),
               ParseError);
}

TEST(Ingest, ValidationNamesTheField) {
  TempDir dir;
  const std::string gap =
      R"({"post_id":2,"version":1,"editor_id":11,"created_at":"2020-01-01T01:00:00Z","code_blocks":["a"]}
{"post_id":2,"version":3,"editor_id":11,"created_at":"2020-01-01T03:00:00Z","code_blocks":["b"]}
)";
  try {
    load_dump(write_dump(dir, kPosts, gap, "{\"id\":5,\"post_id\":2,\"author_id\":13,\"created_at\":\"2020-01-01T02:30:00Z\",\"text\":\"x\"}\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("versions.version_index"), std::string::npos) << e.what();
  }
  const std::string backwards =
      R"({"post_id":2,"version":1,"editor_id":11,"created_at":"2020-01-01T05:00:00Z","code_blocks":["a"]}
{"post_id":2,"version":2,"editor_id":11,"created_at":"2020-01-01T03:00:00Z","code_blocks":["b"]}
)";
  try {
    load_dump(write_dump(dir, kPosts, backwards, ""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("versions.created_ts"), std::string::npos) << e.what();
  }
}

TEST(Ingest, CacheRoundTrips) {
  TempDir dir;
  const LoadedDump d = load_dump(dump_paths(fixture("mini")));
  write_timeline_cache(dir / "sub" / "cache.json", d.timelines);
  const auto back = read_timeline_cache(dir / "sub" / "cache.json");
  ASSERT_EQ(back.size(), d.timelines.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(timeline_to_json(back[i]), timeline_to_json(d.timelines[i]));
  }
  EXPECT_THROW(read_timeline_cache(dir / "absent.json"), InputError);
  spit(dir / "old.json", R"({"format_version":99,"timelines":[]})");
  EXPECT_THROW(read_timeline_cache(dir / "old.json"), Error);
}

// Counts recomputed straight from the JSON lines.
TEST(Ingest, MiniCorpusCountsMatchLineOracle) {
  const auto dir = fixture("mini");
  std::set<PostId> answers;
  std::map<PostId, bool> has_code;
  std::map<PostId, std::size_t> versions, comments;
  auto each = [&](const char* name, auto&& fn) {
    std::istringstream in(testing::slurp(dir / name));
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) fn(nlohmann::json::parse(line));
  };
  each("posts.jsonl", [&](const nlohmann::json& j) {
    if (j["kind"] == "answer") answers.insert(j["id"].get<PostId>());
  });
  each("versions.jsonl", [&](const nlohmann::json& j) {
    const auto id = j["post_id"].get<PostId>();
    versions[id] += 1;
    for (const auto& b : j["code_blocks"])
      if (!b.get<std::string>().empty()) has_code[id] = true;
  });
  each("comments.jsonl", [&](const nlohmann::json& j) { comments[j["post_id"].get<PostId>()] += 1; });

  std::size_t n_answers = 0, n_edits = 0, n_comments = 0;
  for (PostId a : answers) {
    if (!has_code[a]) continue;
    ++n_answers;
    n_edits += versions[a] - 1;
    n_comments += comments[a];
  }

  const LoadedDump d = load_dump(dump_paths(dir));
  std::size_t edits = 0, cs = 0;
  for (const auto& t : d.timelines) {
    edits += t.edit_count();
    cs += t.comments.size();
  }
  EXPECT_EQ(d.timelines.size(), n_answers);
  EXPECT_EQ(edits, n_edits);
  EXPECT_EQ(cs, n_comments);
  EXPECT_GT(n_answers, 30u);
}

}  // namespace
}  // namespace pairminer
