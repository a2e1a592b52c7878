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

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "pairminer/error.hpp"
#include "pairminer/jsonl.hpp"

namespace pairminer {

namespace {

using nlohmann::json;

struct ParsedPosts {
  std::vector<PostRecord> records;
};

const json& require(const json& obj, const char* field, const LineContext& ctx) {
  const auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) {
    ctx.fail(fmt::format("missing field '{}'", field));
  }
  return *it;
}

std::int64_t require_int(const json& obj, const char* field, const LineContext& ctx) {
  const json& v = require(obj, field, ctx);
  if (!v.is_number_integer()) ctx.fail(fmt::format("field '{}' must be an integer", field));
  return v.get<std::int64_t>();
}

std::string require_string(const json& obj, const char* field, const LineContext& ctx) {
  const json& v = require(obj, field, ctx);
  if (!v.is_string()) ctx.fail(fmt::format("field '{}' must be a string", field));
  return v.get<std::string>();
}

Timestamp require_time(const json& obj, const char* field, const LineContext& ctx) {
  const std::string text = require_string(obj, field, ctx);
  try {
    return parse_timestamp(text);
  } catch (const Error& e) {
    ctx.fail(fmt::format("field '{}': {}", field, e.what()));
  }
}

std::vector<PostRecord> parse_posts(const std::filesystem::path& path) {
  std::vector<PostRecord> out;
  for_each_json_line(path, [&](const json& obj, const LineContext& ctx) {
    PostRecord p;
    p.post_id = require_int(obj, "id", ctx);
    const std::string kind = require_string(obj, "kind", ctx);
    if (kind == "question") {
      p.kind = PostKind::question;
    } else if (kind == "answer") {
      p.kind = PostKind::answer;
    } else {
      ctx.fail(fmt::format("unknown post kind '{}'", kind));
    }
    if (const auto it = obj.find("parent_id"); it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer()) ctx.fail("field 'parent_id' must be an integer");
      p.parent_question_id = it->get<PostId>();
    }
    if (p.kind == PostKind::answer && !p.parent_question_id) {
      ctx.fail(fmt::format("answer {} has no parent_id", p.post_id));
    }
    p.author_id = require_int(obj, "author_id", ctx);
    p.created = require_time(obj, "created_at", ctx);
    p.score = require_int(obj, "score", ctx);
    p.tag = require_string(obj, "tag", ctx);
    out.push_back(std::move(p));
  });
  return out;
}

struct VersionLine {
  VersionSnapshot snapshot;
  std::size_t line = 0;
};

std::vector<VersionLine> parse_versions(const std::filesystem::path& path) {
  std::vector<VersionLine> out;
  for_each_json_line(path, [&](const json& obj, const LineContext& ctx) {
    VersionSnapshot v;
    v.post_id = require_int(obj, "post_id", ctx);
    const auto index = require_int(obj, "version", ctx);
    if (index < 1) ctx.fail("field 'version' must be >= 1");
    v.version_index = static_cast<int>(index);
    v.editor_id = require_int(obj, "editor_id", ctx);
    v.created = require_time(obj, "created_at", ctx);
    const json& blocks = require(obj, "code_blocks", ctx);
    if (!blocks.is_array()) ctx.fail("field 'code_blocks' must be an array");
    for (const auto& b : blocks) {
      if (!b.is_string()) ctx.fail("code_blocks entries must be strings");
      v.code_blocks.push_back(b.get<std::string>());
    }
    out.push_back({std::move(v), ctx.line});
  });
  return out;
}

struct CommentLine {
  CommentRecord record;
  std::size_t line = 0;
};

std::vector<CommentLine> parse_comments(const std::filesystem::path& path) {
  std::vector<CommentLine> out;
  for_each_json_line(path, [&](const json& obj, const LineContext& ctx) {
    CommentRecord c;
    c.comment_id = require_int(obj, "id", ctx);
    c.post_id = require_int(obj, "post_id", ctx);
    c.author_id = require_int(obj, "author_id", ctx);
    c.created = require_time(obj, "created_at", ctx);
    c.text = require_string(obj, "text", ctx);
    if (c.text.empty()) ctx.fail(fmt::format("comment {} has empty text", c.comment_id));
    out.push_back({std::move(c), ctx.line});
  });
  return out;
}

bool has_code(const AnswerTimeline& t) {
  return std::any_of(t.versions.begin(), t.versions.end(),
                     [](const VersionSnapshot& v) {
                       return std::any_of(v.code_blocks.begin(), v.code_blocks.end(),
                                          [](const std::string& b) { return !b.empty(); });
                     });
}

}  // namespace

const VersionSnapshot* AnswerTimeline::find_version(int version_index) const {
  for (const auto& v : versions) {
    if (v.version_index == version_index) return &v;
  }
  return nullptr;
}

const CommentRecord* AnswerTimeline::find_comment(CommentId id) const {
  for (const auto& c : comments) {
    if (c.comment_id == id) return &c;
  }
  return nullptr;
}

LoadedDump load_dump(const DumpPaths& paths, const LoadOptions& options) {
  for (const auto* p : {&paths.posts, &paths.versions, &paths.comments}) {
    if (!std::filesystem::is_regular_file(*p)) {
      throw InputError(fmt::format("cannot read input file '{}'", p->string()));
    }
  }

  std::vector<PostRecord> posts;
  std::vector<VersionLine> versions;
  std::vector<CommentLine> comments;
  if (options.parallel) {
    auto fp = std::async(std::launch::async, parse_posts, paths.posts);
    auto fv = std::async(std::launch::async, parse_versions, paths.versions);
    auto fc = std::async(std::launch::async, parse_comments, paths.comments);
    posts = fp.get();
    versions = fv.get();
    comments = fc.get();
  } else {
    posts = parse_posts(paths.posts);
    versions = parse_versions(paths.versions);
    comments = parse_comments(paths.comments);
  }

  std::unordered_map<PostId, const PostRecord*> by_id;
  for (const auto& p : posts) {
    if (!by_id.emplace(p.post_id, &p).second) {
      throw Error(fmt::format("{}: duplicate post id {}", paths.posts.string(), p.post_id));
    }
  }

  std::map<PostId, AnswerTimeline> answers;
  for (const auto& p : posts) {
    if (p.kind != PostKind::answer) continue;
    AnswerTimeline t;
    t.answer = p;
    if (const auto q = by_id.find(*p.parent_question_id); q != by_id.end()) {
      t.questioner_id = q->second->author_id;
    }
    answers.emplace(p.post_id, std::move(t));
  }

  for (auto& v : versions) {
    const auto post = by_id.find(v.snapshot.post_id);
    if (post == by_id.end()) {
      throw ParseError(paths.versions.string(), v.line,
                       fmt::format("version {} references unknown post {}",
                                   v.snapshot.version_index, v.snapshot.post_id));
    }
    if (post->second->kind != PostKind::answer) continue;
    answers.at(v.snapshot.post_id).versions.push_back(std::move(v.snapshot));
  }

  LoadedDump out;
  out.comment_lines = comments.size();
  for (auto& c : comments) {
    const auto post = by_id.find(c.record.post_id);
    if (post == by_id.end()) {
      throw ParseError(paths.comments.string(), c.line,
                       fmt::format("comment {} references unknown post {}",
                                   c.record.comment_id, c.record.post_id));
    }
    if (post->second->kind != PostKind::answer) {
      ++out.rejected_comments;
      continue;
    }
    answers.at(c.record.post_id).comments.push_back(std::move(c.record));
  }

  for (auto& [id, t] : answers) {
    std::stable_sort(t.versions.begin(), t.versions.end(),
                     [](const VersionSnapshot& a, const VersionSnapshot& b) {
                       return a.version_index < b.version_index;
                     });
    std::stable_sort(t.comments.begin(), t.comments.end(),
                     [](const CommentRecord& a, const CommentRecord& b) {
                       if (a.created != b.created) return a.created < b.created;
                       return a.comment_id < b.comment_id;
                     });
    if (!has_code(t)) {
      ++out.dropped_answers;
      out.rejected_comments += t.comments.size();
      continue;
    }
    if (auto problems = validate_timeline(t); !problems.empty()) {
      std::ostringstream msg;
      msg << "answer " << id << " violates timeline invariants:";
      for (const auto& p : problems) msg << "\n  " << p;
      throw Error(msg.str());
    }
    out.timelines.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> validate_timeline(const AnswerTimeline& t) {
  std::vector<std::string> problems;
  const PostId id = t.answer.post_id;
  if (t.answer.kind != PostKind::answer) {
    problems.push_back(fmt::format("answer.post_kind: post {} is not an answer", id));
  } else if (!t.answer.parent_question_id) {
    problems.push_back(fmt::format("answer.parent_question_id: answer {} has no parent", id));
  }
  if (t.versions.empty()) {
    problems.push_back(fmt::format("versions: answer {} has no initial body (version 1)", id));
  }
  for (std::size_t i = 0; i < t.versions.size(); ++i) {
    const auto& v = t.versions[i];
    if (v.post_id != id) {
      problems.push_back(fmt::format("versions.post_id: version {} references post {}, expected {}",
                                     v.version_index, v.post_id, id));
    }
    const int expected = static_cast<int>(i) + 1;
    if (v.version_index != expected) {
      problems.push_back(fmt::format(
          "versions.version_index: answer {} has version {} at position {}, expected {} "
          "(indices must be contiguous from 1)",
          id, v.version_index, i + 1, expected));
    }
    if (i > 0 && v.created < t.versions[i - 1].created) {
      problems.push_back(fmt::format(
          "versions.created_ts: answer {} version {} ({}) is earlier than version {} ({})", id,
          v.version_index, format_timestamp(v.created), t.versions[i - 1].version_index,
          format_timestamp(t.versions[i - 1].created)));
    }
  }
  for (std::size_t i = 0; i < t.comments.size(); ++i) {
    const auto& c = t.comments[i];
    if (c.post_id != id) {
      problems.push_back(fmt::format("comments.post_id: comment {} references post {}, expected {}",
                                     c.comment_id, c.post_id, id));
    }
    if (c.text.empty()) {
      problems.push_back(fmt::format("comments.text: comment {} is empty", c.comment_id));
    }
    if (i > 0 && c.created < t.comments[i - 1].created) {
      problems.push_back(fmt::format("comments.created_ts: comment {} is out of chronological order",
                                     c.comment_id));
    }
  }
  return problems;
}

nlohmann::json timeline_to_json(const AnswerTimeline& t) {
  json answer = {
      {"id", t.answer.post_id},
      {"parent_id", t.answer.parent_question_id ? json(*t.answer.parent_question_id) : json()},
      {"author_id", t.answer.author_id},
      {"created_at", format_timestamp(t.answer.created)},
      {"score", t.answer.score},
      {"tag", t.answer.tag},
  };
  json versions = json::array();
  for (const auto& v : t.versions) {
    versions.push_back({{"version", v.version_index},
                        {"editor_id", v.editor_id},
                        {"created_at", format_timestamp(v.created)},
                        {"code_blocks", v.code_blocks}});
  }
  json comments = json::array();
  for (const auto& c : t.comments) {
    comments.push_back({{"id", c.comment_id},
                        {"author_id", c.author_id},
                        {"created_at", format_timestamp(c.created)},
                        {"text", c.text}});
  }
  return {{"answer", std::move(answer)},
          {"questioner_id", t.questioner_id ? json(*t.questioner_id) : json()},
          {"versions", std::move(versions)},
          {"comments", std::move(comments)}};
}

AnswerTimeline timeline_from_json(const nlohmann::json& j) {
  AnswerTimeline t;
  const json& a = j.at("answer");
  t.answer.post_id = a.at("id").get<PostId>();
  t.answer.kind = PostKind::answer;
  if (!a.at("parent_id").is_null()) t.answer.parent_question_id = a.at("parent_id").get<PostId>();
  t.answer.author_id = a.at("author_id").get<UserId>();
  t.answer.created = parse_timestamp(a.at("created_at").get<std::string>());
  t.answer.score = a.at("score").get<std::int64_t>();
  t.answer.tag = a.at("tag").get<std::string>();
  if (!j.at("questioner_id").is_null()) t.questioner_id = j.at("questioner_id").get<UserId>();
  for (const auto& v : j.at("versions")) {
    VersionSnapshot s;
    s.post_id = t.answer.post_id;
    s.version_index = v.at("version").get<int>();
    s.editor_id = v.at("editor_id").get<UserId>();
    s.created = parse_timestamp(v.at("created_at").get<std::string>());
    s.code_blocks = v.at("code_blocks").get<std::vector<std::string>>();
    t.versions.push_back(std::move(s));
  }
  for (const auto& c : j.at("comments")) {
    CommentRecord r;
    r.post_id = t.answer.post_id;
    r.comment_id = c.at("id").get<CommentId>();
    r.author_id = c.at("author_id").get<UserId>();
    r.created = parse_timestamp(c.at("created_at").get<std::string>());
    r.text = c.at("text").get<std::string>();
    t.comments.push_back(std::move(r));
  }
  return t;
}

void write_timeline_cache(const std::filesystem::path& path,
                          const std::vector<AnswerTimeline>& timelines) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write timeline cache '{}'", path.string()));
  out << "{\"format_version\":" << kTimelineCacheVersion << ",\"timelines\":[\n";
  for (std::size_t i = 0; i < timelines.size(); ++i) {
    out << timeline_to_json(timelines[i]).dump() << (i + 1 < timelines.size() ? ",\n" : "\n");
  }
  out << "]}\n";
}

std::vector<AnswerTimeline> read_timeline_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("timeline cache '{}' not found", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: corrupt timeline cache: {}", path.string(), e.what()));
  }
  if (!doc.contains("format_version") || doc["format_version"] != kTimelineCacheVersion) {
    throw Error(fmt::format("{}: unsupported timeline cache format", path.string()));
  }
  std::vector<AnswerTimeline> out;
  try {
    for (const auto& t : doc.at("timelines")) out.push_back(timeline_from_json(t));
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: corrupt timeline cache: {}", path.string(), e.what()));
  }
  return out;
}

}  // namespace pairminer
